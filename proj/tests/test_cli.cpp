#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include <minuslat/matrix_io.hpp>

#include "test_helpers.hpp"

using namespace minuslat;
using namespace minuslat::testing;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    json report;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MINUSLAT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
    const int status = pclose(pipe);
    RunResult res;
    res.exit_code = WEXITSTATUS(status);
    if (!out.empty()) res.report = json::parse(out, nullptr, false);
    return res;
}

std::string tmp_matrix(const std::string& name, const ComplexMatrix& m) {
    const std::string path = "/tmp/minuslat_cli_" + name + ".json";
    write_matrix_file(path, m);
    return path;
}

}  // namespace

TEST_CASE("check") {
    const std::string good = tmp_matrix("proj", mat({{1, 0}, {0, 0}}));
    RunResult ok = run_cli("check " + good);
    CHECK(ok.exit_code == 0);
    CHECK(ok.report["verdict"] == "idempotent");
    CHECK(ok.report["is_orthogonal"] == true);
    CHECK(ok.report["inputs"]["matrix"].contains("digest"));

    const std::string bad = tmp_matrix("notidem", mat({{1, 1}, {0, 0.1}}));
    RunResult neg = run_cli("check " + bad);
    CHECK(neg.exit_code == 1);
    CHECK(neg.report["verdict"] == "not_idempotent");

    std::ofstream("/tmp/minuslat_cli_garbage.json") << "{not json";
    CHECK(run_cli("check /tmp/minuslat_cli_garbage.json").exit_code == 2);
    CHECK(run_cli("check /tmp/minuslat_cli_missing.json").exit_code == 2);
}

TEST_CASE("order") {
    const std::string p = tmp_matrix("p", mat({{1, 0}, {0, 0}}));
    const std::string id = tmp_matrix("id", ComplexMatrix::Identity(2, 2));

    RunResult yes = run_cli("order " + p + " " + id);
    CHECK(yes.exit_code == 0);
    CHECK(yes.report["leq"] == true);
    CHECK(yes.report["equivalent"] == true);

    RunResult no = run_cli("order " + id + " " + p);
    CHECK(no.exit_code == 1);
    CHECK(no.report["leq"] == false);

    const std::string wrong = tmp_matrix("bigger", ComplexMatrix::Identity(3, 3));
    CHECK(run_cli("order " + p + " " + wrong).exit_code == 2);
}

TEST_CASE("sup writes the constructed operator") {
    const std::string p = tmp_matrix("sup_p", mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    const std::string q = tmp_matrix("sup_q", mat({{0, 0, 0}, {0, 1, 1}, {0, 0, 0}}));
    RunResult res = run_cli("sup " + p + " " + q + " --out /tmp/minuslat_cli_supout.json");
    CHECK(res.exit_code == 0);
    CHECK(res.report["verdict"] == "ExistsNontrivial");

    ComplexMatrix built = load_matrix_file("/tmp/minuslat_cli_supout.json").matrix;
    CHECK(dist(built, mat({{1, 0, 0}, {0, 1, 1}, {0, 0, 0}})) < 1e-10);

    // A pair without a supremum exits 1 with the NotExists verdict.
    const std::string a = tmp_matrix("sup_a", mat({{1, 0, 0, 0},
                                                   {0, 0, 0, 0},
                                                   {0, 0, 0, 0},
                                                   {0, 0, 0, 0}}));
    const std::string b = tmp_matrix("sup_b", mat({{1, 0, 0, 0},
                                                   {1, 0, 0, 0},
                                                   {0, 0, 0, 0},
                                                   {0, 0, 0, 0}}));
    RunResult missing = run_cli("sup " + a + " " + b);
    CHECK(missing.exit_code == 1);
    CHECK(missing.report["verdict"] == "NotExists");
}

TEST_CASE("inf agrees with the complement route") {
    const std::string p = tmp_matrix("inf_p", mat({{1, 1}, {0, 0}}));
    const std::string id = tmp_matrix("inf_id", ComplexMatrix::Identity(2, 2));
    RunResult res = run_cli("inf " + p + " " + id);
    CHECK(res.exit_code == 0);
    CHECK(res.report["verdict"] == "ExistsNontrivial");
    ComplexMatrix op = matrix_from_json(res.report["operator"]);
    CHECK(dist(op, mat({{1, 1}, {0, 0}})) < 1e-8);
}

TEST_CASE("qor and qunder") {
    const std::string shear = tmp_matrix("shear", mat({{1, 1}, {0, 0}}));
    RunResult over = run_cli("qor " + shear);
    CHECK(over.exit_code == 0);
    CHECK(dist(matrix_from_json(over.report["operator"]), ComplexMatrix::Identity(2, 2)) < 1e-10);

    RunResult under = run_cli("qunder " + shear);
    CHECK(under.exit_code == 0);
    CHECK(matrix_from_json(under.report["operator"]).norm() < 1e-10);
    CHECK(under.report["rank"] == 0);
}

TEST_CASE("canonical") {
    const std::string shear = tmp_matrix("canon", mat({{1, 1}, {0, 0}}));
    RunResult res = run_cli("canonical " + shear);
    CHECK(res.exit_code == 0);
    CHECK(res.report["core_dim"] == 0);
    CHECK(res.report["range_rest_dim"] == 1);
    CHECK(res.report["range_perp_dim"] == 1);
    CHECK(res.report["residuals"]["reassembly"].get<double>() < 1e-10);
}

TEST_CASE("jcheck") {
    const std::string j = tmp_matrix("j", mat({{1, 0}, {0, -1}}));
    const double r3 = std::sqrt(3.0) / 2.0;
    const std::string cell =
        tmp_matrix("cell", mat({{cx(1.5), cx(0, r3)}, {cx(0, r3), cx(-0.5)}}));
    RunResult yes = run_cli("jcheck " + cell + " " + j);
    CHECK(yes.exit_code == 0);
    CHECK(yes.report["is_j_projection"] == true);

    const std::string shear = tmp_matrix("jshear", mat({{1, 1}, {0, 0}}));
    const std::string id = tmp_matrix("jid", ComplexMatrix::Identity(2, 2));
    RunResult no = run_cli("jcheck " + shear + " " + id);
    CHECK(no.exit_code == 1);
    CHECK(no.report["is_j_projection"] == false);
}

TEST_CASE("construct38") {
    const std::string p = tmp_matrix("c38_p", ComplexMatrix::Identity(2, 2));
    const std::string j = tmp_matrix("c38_j", mat({{1, 0}, {0, -1}}));
    RunResult res = run_cli("construct38 " + p + " " + j + " --out /tmp/minuslat_cli_c38.json");
    CHECK(res.exit_code == 0);

    ComplexMatrix q = load_matrix_file("/tmp/minuslat_cli_c38.json").matrix;
    const double r3 = std::sqrt(3.0) / 2.0;
    CHECK(dist(q, mat({{cx(1.5), cx(0, r3)}, {cx(0, r3), cx(-0.5)}})) < 1e-12);
    CHECK(res.report["residuals"]["envelope_matches_P"].get<double>() < 1e-10);

    // Infeasible: J = I removes the minus eigenspace.
    const std::string jid = tmp_matrix("c38_jid", ComplexMatrix::Identity(2, 2));
    RunResult bad = run_cli("construct38 " + p + " " + jid);
    CHECK(bad.exit_code == 2);
    CHECK(bad.report["error"]["kind"] == "Infeasible");

    // Dual form on P = 0.
    const std::string zero = tmp_matrix("c38_zero", ComplexMatrix::Zero(2, 2));
    RunResult dual = run_cli("construct38 " + zero + " " + j + " --dual");
    CHECK(dual.exit_code == 0);
    ComplexMatrix qd = matrix_from_json(dual.report["operator"]);
    CHECK(dist(qd, ComplexMatrix::Identity(2, 2) -
                       mat({{cx(1.5), cx(0, r3)}, {cx(0, r3), cx(-0.5)}})) < 1e-12);
}

TEST_CASE("counterexample37") {
    const std::string p = tmp_matrix("c37_p", mat({{1, 0, 1, 0},
                                                   {0, 1, 0, 1},
                                                   {0, 0, 0, 0},
                                                   {0, 0, 0, 0}}));
    RunResult res = run_cli("counterexample37 " + p);
    CHECK(res.exit_code == 0);
    CHECK(res.report["envelope_order_violated"] == true);

    const std::string orth = tmp_matrix("c37_orth", mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    RunResult bad = run_cli("counterexample37 " + orth);
    CHECK(bad.exit_code == 2);
    CHECK(bad.report["error"]["kind"] == "Infeasible");
}

TEST_CASE("fuzz") {
    RunResult vacuous = run_cli("fuzz --suite duality --trials 0");
    CHECK(vacuous.exit_code == 0);
    CHECK(vacuous.report["trials"] == 0);

    RunResult sqrt_run = run_cli("fuzz --suite sqrt32 --trials 25 --seed 1");
    CHECK(sqrt_run.exit_code == 0);
    CHECK(sqrt_run.report["passed"] == 25);
    CHECK(sqrt_run.report["seed"] == 1);

    RunResult fixed_dim = run_cli("fuzz --suite lemma21 --trials 10 --dim 3 --seed 4 --jobs 0");
    CHECK(fixed_dim.exit_code == 0);
    CHECK(fixed_dim.report["dims"][0] == 3);
    CHECK(fixed_dim.report["dims"][1] == 3);

    CHECK(run_cli("fuzz --suite nonsense --trials 5").exit_code == 2);
}

TEST_CASE("tolerance overrides are echoed") {
    const std::string p = tmp_matrix("tol_p", mat({{1, 0}, {0, 0}}));
    RunResult flag = run_cli("--tol 1e-6 check " + p);
    CHECK(flag.exit_code == 0);
    CHECK(flag.report["tolerance"]["idem_tol"].get<double>() == 1e-6);
    CHECK(flag.report["tolerance"]["source"] == "flag:--tol");

    const std::string cmd = "MINUSLAT_TOL=1e-7 " + std::string(MINUSLAT_CLI_PATH) + " check " + p;
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
    pclose(pipe);
    json rep = json::parse(out);
    CHECK(rep["tolerance"]["idem_tol"].get<double>() == 1e-7);
    CHECK(rep["tolerance"]["source"] == "env:MINUSLAT_TOL");
}
