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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "covneu/io.hpp"
#include "test_util.hpp"

namespace covneu {
namespace {

namespace fs = std::filesystem;
using io::json;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(COVNEU_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("covneu_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        const auto path = (dir_ / name).string();
        io::write_text_file(path, text);
        return path;
    }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    std::string trine() { return write("trine.json", io::povm_to_json(testing::p2_povm()).dump()); }
    std::string trine_group() {
        std::vector<Matrix> gens;
        gens.push_back(testing::p2_symmetry().images[1]);
        json g = {{"dim", 2}, {"generators", json::array()}};
        for (const auto &m : gens) g["generators"].push_back(io::matrix_to_json(m));
        return write("z3.json", g.dump());
    }

    fs::path dir_;
};

TEST_F(Cli, FamiliesListsAll) {
    const auto r = run("families");
    EXPECT_EQ(r.code, 0);
    for (const char *name : {"cyclic", "dihedral", "weyl-heisenberg"}) EXPECT_NE(r.out.find(name), std::string::npos);
}

TEST_F(Cli, ValidateGoodAndBad) {
    const auto good = run("validate " + trine());
    EXPECT_EQ(good.code, 0);
    EXPECT_NE(good.out.find("valid"), std::string::npos);
    auto p = testing::p2_povm();
    p.vectors[0] *= 2.0;
    const auto bad = run("validate " + write("bad.json", io::povm_to_json(p).dump()));
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("invalid"), std::string::npos);
}

TEST_F(Cli, MalformedInputsAreInputErrors) {
    EXPECT_EQ(run("validate " + write("broken.json", "{")).code, 3);
    EXPECT_EQ(run("validate " + path("missing.json")).code, 3);
    EXPECT_EQ(run("no-such-command").code, 3);
}

TEST_F(Cli, SynthesizeThenVerify) {
    const auto povm = trine();
    const auto result = path("result.json");
    const auto r = run("synthesize " + povm + " --group " + trine_group() + " -o " + result);
    ASSERT_EQ(r.code, 0);
    const auto stored = io::stored_result_from_json(io::read_json_file(result));
    EXPECT_LT(max_abs(stored.tilde_m - fourier(3).adjoint()), 1e-12);
    const auto v = run("verify " + result + " " + povm);
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("verified"), std::string::npos);

    json tampered = io::read_json_file(result);
    tampered["tilde_m"] = io::matrix_to_json(identity(3));
    const auto t = run("verify " + write("tampered.json", tampered.dump()) + " " + povm);
    EXPECT_EQ(t.code, 2);
    EXPECT_NE(t.out.find("failed"), std::string::npos);
}

TEST_F(Cli, SynthesizeWrongGroupIsCovarianceError) {
    const json g = {{"family", "dihedral"}, {"param", 4}};
    EXPECT_EQ(run("synthesize " + trine() + " --group " + write("d8.json", g.dump())).code, 4);
}

TEST_F(Cli, SynthesizeFamilyOption) {
    const auto fam = cyclic_povm(8, 3);
    const auto povm = write("cyclic.json", io::povm_to_json(fam.povm).dump());
    const auto r = run("synthesize " + povm + " --family cyclic");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["choices"]["basis_source"], "cyclic");
    EXPECT_LT(max_abs(io::matrix_from_json(j["tilde_m"]) - fourier(8)), 1e-12);
}

TEST_F(Cli, CircuitAndSimulate) {
    const auto circ = path("cyc.txt");
    ASSERT_EQ(run("circuit --family cyclic --n 8 --d 3 -o " + circ).code, 0);
    const auto exact = run("simulate " + circ + " --basis 0");
    EXPECT_EQ(exact.code, 0);
    std::istringstream in(exact.out);
    std::string header1, header2;
    in >> header1 >> header2;
    EXPECT_EQ(header1 + " " + header2, "outcome probability");
    std::size_t k;
    double p, total = 0.0;
    while (in >> k >> p) {
        EXPECT_NEAR(p, 0.125, 1e-9);
        total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    const auto shots = run("simulate " + circ + " --basis 0 --shots 1000 --seed 7");
    EXPECT_EQ(shots.code, 0);
    EXPECT_NE(shots.out.find("outcome count frequency"), std::string::npos);
    EXPECT_EQ(shots.out, run("simulate " + circ + " --basis 0 --shots 1000 --seed 7").out);
}

TEST_F(Cli, CircuitFamiliesAndQasm) {
    const auto dih = run("circuit --family dihedral --m 4 --alpha 0.3 --beta 0.4");
    EXPECT_EQ(dih.code, 0);
    EXPECT_EQ(dih.out.rfind("qubits 3", 0), 0u);
    EXPECT_EQ(run("circuit --family dihedral --m 4 --alpha 0.5 --beta 0.5").code, 3);
    const auto wh = run("circuit --family wh --m 4 --alpha 0.7 --qasm");
    EXPECT_EQ(wh.code, 0);
    EXPECT_EQ(wh.out.rfind("OPENQASM 2.0;", 0), 0u);
    EXPECT_EQ(run("circuit --family cyclic --n 6 --d 2").code, 3);
}

TEST_F(Cli, CircuitFromResultSamplesTrine) {
    const auto result = path("result.json");
    ASSERT_EQ(run("synthesize " + trine() + " --group " + trine_group() + " -o " + result).code, 0);
    const auto circ = path("trine.txt");
    ASSERT_EQ(run("circuit --from-result " + result + " -o " + circ).code, 0);
    const auto r = run("simulate " + circ + " --basis 0");
    std::istringstream in(r.out);
    std::string h1, h2;
    in >> h1 >> h2;
    std::size_t k;
    double p;
    while (in >> k >> p) EXPECT_NEAR(p, k < 3 ? 1.0 / 3.0 : 0.0, 1e-12);
}

TEST_F(Cli, ToleranceOverrideAndBadCircuit) {
    EXPECT_EQ(run("--tol povm=abc validate " + trine()).code, 3);
    EXPECT_EQ(run("simulate " + write("bad.txt", "qubits 2\nH 9\n")).code, 3);
}

}  // namespace
}  // namespace covneu
