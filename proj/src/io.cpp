// Copyright 2026 The covneu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "covneu/io.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>

#include "covneu/error.hpp"

namespace covneu::io {

namespace {

[[noreturn]] void bad(const std::string &msg) { fail(ErrorCode::ParseError, msg); }

void only_keys(const json &j, std::initializer_list<std::string_view> allowed, std::string_view what) {
    if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
    for (const auto &item : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || item.key() == a;
        if (!ok) bad("unknown key '" + item.key() + "' in " + std::string(what));
    }
}

const json &need(const json &j, const char *key, std::string_view what) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string(what) + " is missing '" + key + "'");
    return *it;
}

std::size_t count_of(const json &j, const char *key, std::string_view what) {
    const json &v = need(j, key, what);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        bad(std::string(what) + ": '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

// Runs f, converting nlohmann exceptions into ParseError.
template <class F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception &e) {
        bad(e.what());
    }
}

json blocks_to_json(const std::vector<Block> &blocks) {
    json out = json::array();
    for (const auto &b : blocks) out.push_back({{"offset", b.offset}, {"degree", b.degree}, {"label", b.label}});
    return out;
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json &j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix &m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json &j) {
    return guarded([&] {
        only_keys(j, {"rows", "cols", "data"}, "matrix");
        const std::size_t rows = count_of(j, "rows", "matrix");
        const std::size_t cols = count_of(j, "cols", "matrix");
        const json &data = need(j, "data", "matrix");
        if (!data.is_array() || data.size() != rows * cols) bad("matrix data must hold rows * cols entries");
        Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[r * cols + c]);
        return m;
    });
}

json vector_to_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Vector vector_from_json(const json &j) {
    return guarded([&] {
        if (!j.is_array() || j.empty()) bad("vector must be a non-empty array of [re, im]");
        Vector v(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
        return v;
    });
}

Representation representation_from_json(const json &j, std::size_t dim) {
    return guarded([&]() -> Representation {
        if (j.is_object() && j.contains("family")) {
            only_keys(j, {"family", "param"}, "group");
            const std::string family = need(j, "family", "group").get<std::string>();
            const std::size_t param = count_of(j, "param", "group");
            if (family == "cyclic") {
                if (param == 0 || dim == 0) bad("cyclic group needs a positive order and dimension");
                return cyclic_diagonal_representation(param, dim);
            }
            if (family == "dihedral") return natural_representation(std::make_shared<MatrixGroup>(dihedral_group(param)));
            if (family == "weyl-heisenberg")
                return natural_representation(std::make_shared<MatrixGroup>(weyl_heisenberg_group(param)));
            bad("unknown group family '" + family + "'");
        }
        only_keys(j, {"dim", "generators", "phase_quotient", "max_order"}, "group");
        const std::size_t d = count_of(j, "dim", "group");
        if (dim != 0 && d != dim)
            fail(ErrorCode::DimensionMismatch,
                 "group acts on C^" + std::to_string(d) + " but the POVM lives in C^" + std::to_string(dim));
        const json &gens = need(j, "generators", "group");
        if (!gens.is_array() || gens.empty()) bad("group needs at least one generator");
        std::vector<Matrix> generators;
        for (const auto &g : gens) {
            generators.push_back(matrix_from_json(g));
            if (static_cast<std::size_t>(generators.back().rows()) != d ||
                static_cast<std::size_t>(generators.back().cols()) != d)
                bad("generator is not dim x dim");
        }
        const bool pq = j.value("phase_quotient", false);
        const std::size_t max_order = j.contains("max_order") ? count_of(j, "max_order", "group") : 1U << 16;
        return natural_representation(
            std::make_shared<MatrixGroup>(MatrixGroup::generate(generators, max_order, pq)));
    });
}

LoadedPOVM povm_from_json(const json &j) {
    return guarded([&] {
        LoadedPOVM out;
        if (j.is_object() && j.contains("orbit")) {
            only_keys(j, {"orbit"}, "POVM");
            const json &o = j["orbit"];
            only_keys(o, {"group", "initial", "dedupe"}, "orbit");
            const Vector psi0 = vector_from_json(need(o, "initial", "orbit"));
            Representation phi = representation_from_json(need(o, "group", "orbit"), static_cast<std::size_t>(psi0.size()));
            if (phi.degree() != static_cast<std::size_t>(psi0.size())) bad("initial vector does not match the group");
            out.povm = orbit_povm(phi, psi0, o.value("dedupe", true)).povm;
            out.phi = std::move(phi);
            return out;
        }
        only_keys(j, {"dim", "vectors"}, "POVM");
        out.povm.dim = count_of(j, "dim", "POVM");
        const json &vecs = need(j, "vectors", "POVM");
        if (!vecs.is_array() || vecs.empty()) bad("POVM needs at least one vector");
        for (const auto &v : vecs) {
            out.povm.vectors.push_back(vector_from_json(v));
            if (static_cast<std::size_t>(out.povm.vectors.back().size()) != out.povm.dim)
                bad("POVM vector length differs from dim");
        }
        return out;
    });
}

json povm_to_json(const RankOnePOVM &p) {
    json vecs = json::array();
    for (const auto &v : p.vectors) vecs.push_back(vector_to_json(v));
    return {{"dim", p.dim}, {"vectors", vecs}};
}

json decomposition_to_json(const Decomposition &dec) {
    return {{"base_change", matrix_to_json(dec.base_change)}, {"blocks", blocks_to_json(dec.blocks)}};
}

Decomposition decomposition_from_json(const json &j) {
    return guarded([&] {
        only_keys(j, {"base_change", "blocks"}, "decomposition");
        Decomposition dec;
        dec.base_change = matrix_from_json(need(j, "base_change", "decomposition"));
        for (const auto &b : need(j, "blocks", "decomposition")) {
            only_keys(b, {"offset", "degree", "label"}, "block");
            dec.blocks.push_back({count_of(b, "offset", "block"), count_of(b, "degree", "block"),
                                  count_of(b, "label", "block")});
        }
        return dec;
    });
}

json verification_to_json(const VerificationReport &r) {
    return {{"trials", r.trials},
            {"seed", r.seed},
            {"max_deviation", r.max_deviation},
            {"max_sum_error", r.max_sum_error}};
}

VerificationReport verification_from_json(const json &j) {
    return guarded([&] {
        only_keys(j, {"trials", "seed", "max_deviation", "max_sum_error"}, "verification");
        VerificationReport r;
        r.trials = count_of(j, "trials", "verification");
        r.seed = need(j, "seed", "verification").get<std::uint64_t>();
        r.max_deviation = need(j, "max_deviation", "verification").get<double>();
        r.max_sum_error = need(j, "max_sum_error", "verification").get<double>();
        return r;
    });
}

json synthesis_to_json(const SynthesisResult &r) {
    json coeffs = json::array();
    for (std::size_t c = 0; c < r.coefficients.coefficients.size(); ++c)
        coeffs.push_back({{"label", r.coefficients.labels[c]},
                          {"left_blocks", r.coefficients.left[c]},
                          {"right_blocks", r.coefficients.right[c]},
                          {"matrix", matrix_to_json(r.coefficients.coefficients[c])}});
    json choices = {{"basis_source", r.basis_source},
                    {"central_extension", r.central_extension},
                    {"group_order", r.phi.group->order()},
                    {"tau", r.tau},
                    {"u", matrix_to_json(r.u)},
                    {"w", matrix_to_json(r.w)},
                    {"v", matrix_to_json(r.v)},
                    {"phi_blocks", blocks_to_json(r.dec_phi.blocks)},
                    {"mon_blocks", blocks_to_json(r.dec_mon.blocks)},
                    {"coefficients", coeffs}};
    json checks = {{"top_rows_deviation", r.top_rows_deviation},
                   {"symmetry_defect", r.symmetry_defect},
                   {"unitary_deviation", unitary_deviation(r.tilde_m)}};
    return {{"m", matrix_to_json(r.m)},
            {"tilde_m", matrix_to_json(r.tilde_m)},
            {"choices", choices},
            {"checks", checks},
            {"verification", verification_to_json(r.verification)}};
}

StoredResult stored_result_from_json(const json &j) {
    return guarded([&] {
        only_keys(j, {"m", "tilde_m", "choices", "checks", "verification"}, "synthesis result");
        StoredResult s;
        s.m = matrix_from_json(need(j, "m", "synthesis result"));
        s.tilde_m = matrix_from_json(need(j, "tilde_m", "synthesis result"));
        s.verification = verification_from_json(need(j, "verification", "synthesis result"));
        if (s.tilde_m.rows() != s.tilde_m.cols() || s.tilde_m.cols() != s.m.cols())
            bad("tilde_m must be square with as many columns as m");
        return s;
    });
}

cplx parse_complex(std::string_view text) {
    auto real_of = [&](std::string_view s) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        double v = 0.0;
        if (s.empty()) bad("empty number in '" + std::string(text) + "'");
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) bad("bad complex literal '" + std::string(text) + "'");
        return v;
    };
    if (text.empty()) bad("empty complex literal");
    if (text.back() != 'i') return {real_of(text), 0.0};
    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        if (body.empty() || body == "+" || body == "-") return {0.0, body == "-" ? -1.0 : 1.0};
        return {0.0, real_of(body)};
    }
    std::string_view im = body.substr(split);
    const double im_value = (im == "+" || im == "-") ? (im == "-" ? -1.0 : 1.0) : real_of(im);
    return {real_of(body.substr(0, split)), im_value};
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) bad("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string &path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        bad("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

}  // namespace covneu::io
