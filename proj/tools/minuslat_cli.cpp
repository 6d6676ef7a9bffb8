// Command-line front end: one subcommand per lattice/Krein query plus the
// randomized suite runner. Reports are JSON on stdout; exit codes follow a
// strict contract: 0 = success/affirmative verdict, 1 = negative
// mathematical verdict, 2 = error (parse, dimension, infeasible, ...).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <minuslat/krein.hpp>
#include <minuslat/lattice.hpp>
#include <minuslat/matrix_io.hpp>
#include <minuslat/suites.hpp>

using namespace minuslat;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Session {
    ToleranceConfig tol;
    std::string tol_source = "default";
    json report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json& inputs() {
        if (!report.contains("inputs")) report["inputs"] = json::object();
        return report["inputs"];
    }

    ComplexMatrix load(const std::string& label, const std::string& path) {
        LoadedMatrix lm = load_matrix_file(path);
        inputs()[label] = {{"path", path}, {"digest", lm.digest}};
        return lm.matrix;
    }

    Idempotent load_idempotent(const std::string& label, const std::string& path) {
        return Idempotent::validate(load(label, path), tol);
    }

    Symmetry load_symmetry(const std::string& label, const std::string& path) {
        return Symmetry::validate(load(label, path), tol);
    }

    void finish(int code) {
        report["tolerance"] = {{"idem_tol", tol.idem_tol},
                               {"subspace_eq_tol", tol.subspace_eq_tol},
                               {"rank_rel_tol", tol.rank_rel_tol},
                               {"source", tol_source}};
        report["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        report["exit_code"] = code;
        std::cout << report.dump(2) << "\n";
    }
};

json verdict_json(const LatticeResult& res, bool is_sup) {
    json out;
    if (res.verdict == LatticeVerdict::Trivial)
        out["verdict"] = is_sup ? "IsIdentity" : "IsZero";
    else if (res.verdict == LatticeVerdict::Nontrivial)
        out["verdict"] = "ExistsNontrivial";
    else
        out["verdict"] = "NotExists";
    if (res.op.has_value()) {
        out["operator"] = matrix_to_json(res.op->matrix());
        out["operator_orthogonal"] = res.op->is_orthogonal();
        out["witness_range_dim"] = res.witness_range->dim();
        out["witness_kernel_dim"] = res.witness_kernel->dim();
    }
    return out;
}

void maybe_write(const std::string& out_path, const ComplexMatrix& m, Session& session) {
    if (out_path.empty()) return;
    write_matrix_file(out_path, m);
    session.report["out"] = out_path;
}

int run(int argc, char** argv) {
    CLI::App app{"minus-order computations for idempotent operators"};
    app.require_subcommand(1);

    double tol_flag = -1.0;
    double rank_tol_flag = -1.0;
    app.add_option("--tol", tol_flag,
                   "override the operator/subspace comparison tolerance (default 1e-8)");
    app.add_option("--rank-tol", rank_tol_flag,
                   "override the relative rank cutoff (default 1e-10)");

    std::string p_path, q_path, j_path, out_path;
    std::string suite;
    int trials = 100;
    std::optional<int> dim;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool dual = false;

    CLI::App* check = app.add_subcommand("check", "validate an idempotent matrix file");
    check->add_option("matrix", p_path)->required();

    CLI::App* order = app.add_subcommand("order", "evaluate the minus-order characterizations");
    order->add_option("P", p_path)->required();
    order->add_option("Q", q_path)->required();

    CLI::App* sup = app.add_subcommand("sup", "supremum of two idempotents");
    sup->add_option("P", p_path)->required();
    sup->add_option("Q", q_path)->required();
    sup->add_option("--out", out_path, "write the constructed operator to FILE");

    CLI::App* inf = app.add_subcommand("inf", "infimum of two idempotents");
    inf->add_option("P", p_path)->required();
    inf->add_option("Q", q_path)->required();
    inf->add_option("--out", out_path);

    CLI::App* qor = app.add_subcommand("qor", "minimum orthogonal projection above Q");
    qor->add_option("Q", q_path)->required();
    qor->add_option("--out", out_path);

    CLI::App* qunder = app.add_subcommand("qunder", "maximum orthogonal projection below Q");
    qunder->add_option("Q", q_path)->required();
    qunder->add_option("--out", out_path);

    CLI::App* canonical = app.add_subcommand("canonical", "three-block canonical splitting");
    canonical->add_option("Q", q_path)->required();

    CLI::App* jcheck = app.add_subcommand("jcheck", "test the indefinite self-adjointness JQ = Q*J");
    jcheck->add_option("Q", q_path)->required();
    jcheck->add_option("J", j_path)->required();

    CLI::App* c38 = app.add_subcommand(
        "construct38", "non-self-adjoint J-projection whose envelope (or floor) is P");
    c38->add_option("P", p_path)->required();
    c38->add_option("J", j_path)->required();
    c38->add_flag("--dual", dual, "target the floor q_under instead of the envelope");
    c38->add_option("--out", out_path);

    CLI::App* c37 = app.add_subcommand(
        "counterexample37", "strict majorant of P whose floor drops below P's envelope");
    c37->add_option("P", p_path)->required();
    c37->add_option("--out", out_path);

    CLI::App* fuzz = app.add_subcommand("fuzz", "run a randomized property suite");
    fuzz->add_option("--suite", suite, "suite name")->required();
    fuzz->add_option("--trials", trials, "number of trials");
    fuzz->add_option("--dim", dim, "fix the ambient dimension (default: cycle 2..8)");
    fuzz->add_option("--seed", seed, "master seed");
    fuzz->add_option("--jobs", jobs, "worker threads; 1 = serial reference, 0 = all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    Session session;
    if (const char* env = std::getenv("MINUSLAT_TOL"); env != nullptr) {
        session.tol.idem_tol = std::atof(env);
        session.tol.subspace_eq_tol = session.tol.idem_tol;
        session.tol_source = "env:MINUSLAT_TOL";
    }
    if (tol_flag > 0) {
        session.tol.idem_tol = tol_flag;
        session.tol.subspace_eq_tol = tol_flag;
        session.tol_source = "flag:--tol";
    }
    if (rank_tol_flag > 0) session.tol.rank_rel_tol = rank_tol_flag;

    int code = kExitOk;
    try {
        if (check->parsed()) {
            session.report["command"] = "check";
            try {
                Idempotent q = session.load_idempotent("matrix", p_path);
                session.report["verdict"] = "idempotent";
                session.report["is_orthogonal"] = q.is_orthogonal();
                session.report["rank"] = q.range().dim();
                session.report["residuals"] = {
                    {"idempotency", (q.matrix() * q.matrix() - q.matrix()).norm()},
                    {"self_adjointness", (q.matrix() - q.matrix().adjoint()).norm()}};
            } catch (const Error& e) {
                if (e.code() != Errc::NotIdempotent) throw;
                session.report["verdict"] = "not_idempotent";
                session.report["reason"] = e.what();
                code = kExitNegative;
            }
        } else if (order->parsed()) {
            session.report["command"] = "order";
            Idempotent p = session.load_idempotent("P", p_path);
            Idempotent q = session.load_idempotent("Q", q_path);
            OrderReport rep = order_report(p, q, session.tol);
            session.report["leq"] = rep.leq;
            session.report["range_incl"] = rep.range_incl;
            session.report["kernel_incl"] = rep.kernel_incl;
            session.report["adjoint_leq"] = rep.adjoint_leq;
            session.report["complement_leq"] = rep.complement_leq;
            session.report["equivalent"] = rep.equivalent();
            session.report["residuals"] = rep.residuals;
            if (!rep.leq) code = kExitNegative;
        } else if (sup->parsed() || inf->parsed()) {
            const bool is_sup = sup->parsed();
            session.report["command"] = is_sup ? "sup" : "inf";
            Idempotent p = session.load_idempotent("P", p_path);
            Idempotent q = session.load_idempotent("Q", q_path);
            LatticeResult res =
                is_sup ? sup_minus(p, q, session.tol) : inf_minus(p, q, session.tol);
            session.report.update(verdict_json(res, is_sup));
            session.report["residuals"] = json::object();
            if (res.op.has_value()) {
                session.report["residuals"]["P_below"] =
                    (p.matrix() * res.op->matrix() - p.matrix()).norm();
                session.report["residuals"]["Q_below"] =
                    (q.matrix() * res.op->matrix() - q.matrix()).norm();
                maybe_write(out_path, res.op->matrix(), session);
            } else {
                code = kExitNegative;
            }
        } else if (qor->parsed() || qunder->parsed()) {
            const bool upper = qor->parsed();
            session.report["command"] = upper ? "qor" : "qunder";
            Idempotent q = session.load_idempotent("Q", q_path);
            Idempotent env = upper ? q_over(q, session.tol) : q_under_via_abs(q, session.tol);
            session.report["operator"] = matrix_to_json(env.matrix());
            session.report["rank"] = env.range().dim();
            session.report["residuals"] = {
                {"order", upper ? (q.matrix() * env.matrix() - q.matrix()).norm()
                                : (env.matrix() * q.matrix() - env.matrix()).norm()}};
            maybe_write(out_path, env.matrix(), session);
        } else if (canonical->parsed()) {
            session.report["command"] = "canonical";
            Idempotent q = session.load_idempotent("Q", q_path);
            CanonicalForm form = canonical_form(q, session.tol);
            session.report["core_dim"] = form.core.dim();
            session.report["range_rest_dim"] = form.range_rest.dim();
            session.report["range_perp_dim"] = form.range_perp.dim();
            if (form.coupling.size() > 0)
                session.report["coupling"] = matrix_to_json(form.coupling);
            session.report["residuals"] = {
                {"reassembly", (form.reassemble() - q.matrix()).norm()}};
        } else if (jcheck->parsed()) {
            session.report["command"] = "jcheck";
            Idempotent q = session.load_idempotent("Q", q_path);
            Symmetry j = session.load_symmetry("J", j_path);
            JProjectionCertificate cert = is_j_projection(q, j, session.tol);
            session.report["is_j_projection"] = cert.holds;
            session.report["residuals"] = {{"JQ-Q*J", cert.residual}};
            if (!cert.holds) code = kExitNegative;
        } else if (c38->parsed()) {
            session.report["command"] = "construct38";
            session.report["dual"] = dual;
            Idempotent p = session.load_idempotent("P", p_path);
            Symmetry j = session.load_symmetry("J", j_path);
            Idempotent q = dual ? construct_q_under_preimage(p, j, session.tol)
                                : construct_q_over_preimage(p, j, session.tol);
            session.report["operator"] = matrix_to_json(q.matrix());
            Idempotent round_trip =
                dual ? q_under(q, session.tol) : q_over(q, session.tol);
            session.report["residuals"] = {
                {"envelope_matches_P", (round_trip.matrix() - p.matrix()).norm()},
                {"JQ-Q*J", (j.matrix() * q.matrix() - q.matrix().adjoint() * j.matrix()).norm()},
                {"non_self_adjointness", (q.matrix() - q.matrix().adjoint()).norm()}};
            maybe_write(out_path, q.matrix(), session);
        } else if (c37->parsed()) {
            session.report["command"] = "counterexample37";
            Idempotent p = session.load_idempotent("P", p_path);
            Idempotent q = envelope_order_counterexample(p, session.tol);
            session.report["operator"] = matrix_to_json(q.matrix());
            session.report["residuals"] = {
                {"P_below_Q", (p.matrix() * q.matrix() - p.matrix()).norm()},
                {"strictness", (p.matrix() - q.matrix()).norm()}};
            session.report["envelope_order_violated"] =
                !leq_minus(q_over(p, session.tol), q_under(q, session.tol), session.tol);
            maybe_write(out_path, q.matrix(), session);
        } else if (fuzz->parsed()) {
            session.report["command"] = "fuzz";
            DimRange dims = dim.has_value() ? DimRange{*dim, *dim} : DimRange{2, 8};
            SuiteReport rep = run_suite(suite, trials, dims, seed, session.tol, jobs);
            session.report["suite"] = rep.suite;
            session.report["trials"] = rep.trials;
            session.report["passed"] = rep.passed;
            session.report["failed"] = rep.failed;
            session.report["seed"] = rep.master_seed;
            session.report["dims"] = {rep.dims.lo, rep.dims.hi};
            session.report["threads"] = rep.threads;
            json failures = json::array();
            for (const SuiteFailure& f : rep.failures) {
                json entry = {{"trial", f.trial}, {"seed", f.seed}, {"message", f.message}};
                if (!f.inputs.empty()) entry["inputs"] = json::parse(f.inputs);
                failures.push_back(std::move(entry));
            }
            session.report["failures"] = std::move(failures);
            if (rep.failed > 0) code = kExitNegative;
        }
    } catch (const Error& e) {
        session.report["error"] = {{"kind", errc_name(e.code())}, {"message", e.what()}};
        session.finish(kExitError);
        std::cerr << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        session.report["error"] = {{"kind", "Internal"}, {"message", e.what()}};
        session.finish(kExitError);
        std::cerr << e.what() << "\n";
        return kExitError;
    }

    session.finish(code);
    return code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
