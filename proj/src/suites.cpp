#include <minuslat/suites.hpp>

#include <chrono>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <minuslat/krein.hpp>
#include <minuslat/lattice.hpp>
#include <minuslat/matrix_io.hpp>

namespace minuslat {

namespace {

struct TrialCtx {
    int trial = 0;
    Index dim = 4;
    std::uint64_t master_seed = 0;
    ToleranceConfig tol;

    GenConfig gen(std::optional<Index> rank = std::nullopt) const {
        GenConfig g;
        g.dim = dim;
        g.rank = rank;
        g.master_seed = master_seed;
        return g;
    }
    // Distinct sub-draws of one trial get distinct stream keys.
    std::uint64_t key(int slot) const {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial)) << 8) |
               static_cast<std::uint64_t>(slot);
    }
};

struct TrialData {
    std::vector<std::pair<std::string, ComplexMatrix>> inputs;
    void put(const std::string& name, const ComplexMatrix& m) { inputs.emplace_back(name, m); }
};

using Verdict = std::optional<std::string>;  // failure message; nullopt passes
using TrialFn = Verdict (*)(const TrialCtx&, TrialData&);

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << x;
    return out.str();
}

Verdict fail(const std::string& msg) { return msg; }

Verdict check_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                    const std::string& what) {
    const double diff = (a - b).norm();
    if (diff <= tol) return std::nullopt;
    return fail(what + " differs by " + fmt(diff) + " (tol " + fmt(tol) + ")");
}

// Product-level minus-order check on raw matrices.
bool products_leq(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& tol) {
    const double scale = tol.idem_tol * (1.0 + p.norm() * q.norm());
    return (p * q - p).norm() <= scale && (q * p - p).norm() <= scale;
}

Idempotent random_orthogonal_projection(const TrialCtx& ctx, int slot, Index rank_bound = -1) {
    RandomStream rng(ctx.master_seed, ctx.key(slot), "ortho-projection");
    const Index bound = rank_bound < 0 ? ctx.dim : rank_bound;
    const Index k = static_cast<Index>(rng.below(static_cast<std::uint64_t>(bound) + 1));
    return Idempotent::validate(ortho_projection(random_subspace(rng, ctx.dim, k)), ctx.tol);
}

// ---------------------------------------------------------------------------
// Suite trial bodies
// ---------------------------------------------------------------------------

Verdict trial_order_axioms(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    data.put("P", p.matrix());
    if (!leq_minus(p, p, ctx.tol)) return fail("reflexivity: P is not below itself");

    auto [a, b] = random_comparable_pair(ctx.gen(), ctx.key(1), ctx.tol);
    data.put("A", a.matrix());
    data.put("B", b.matrix());
    if (!leq_minus(a, b, ctx.tol)) return fail("constructed comparable pair fails A <= B");
    if (leq_minus(b, a, ctx.tol)) {
        if (auto v = check_close(a.matrix(), b.matrix(),
                                 1e-8 * (1.0 + a.matrix().norm()), "antisymmetry: A and B"))
            return v;
    }

    const int len = static_cast<int>(std::min<Index>(3, ctx.dim + 1));
    std::vector<Idempotent> chain = random_chain(ctx.gen(), len, ctx.key(2), ctx.tol);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!leq_minus(chain[i], chain[i + 1], ctx.tol))
            return fail("chain link " + std::to_string(i) + " is not increasing");
    if (chain.size() >= 3 && !leq_minus(chain.front(), chain.back(), ctx.tol))
        return fail("transitivity: chain endpoints are not comparable");
    return std::nullopt;
}

Verdict trial_lemma21(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    Idempotent q = random_idempotent(ctx.gen(), ctx.key(1), ctx.tol);
    data.put("P", p.matrix());
    data.put("Q", q.matrix());
    OrderReport rep = order_report(p, q, ctx.tol);
    if (!rep.equivalent()) {
        std::ostringstream msg;
        msg << "characterizations disagree: leq=" << rep.leq << " range_incl=" << rep.range_incl
            << " kernel_incl=" << rep.kernel_incl << " adjoint=" << rep.adjoint_leq
            << " complement=" << rep.complement_leq;
        return fail(msg.str());
    }
    return std::nullopt;
}

constexpr int kUpperBoundProbes = 100;

Verdict trial_sup_lub(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    Idempotent q = random_idempotent(ctx.gen(), ctx.key(1), ctx.tol);
    data.put("P", p.matrix());
    data.put("Q", q.matrix());
    const Index n = ctx.dim;

    LatticeResult res = sup_minus(p, q, ctx.tol);
    Subspace joint_kernel = intersect(p.kernel(), q.kernel());
    Subspace joint_range = sum(p.range(), q.range());

    if (res.verdict == LatticeVerdict::Trivial) {
        if (!contains(joint_range, joint_kernel, ctx.tol))
            return fail("trivial supremum but N(P) cap N(Q) escapes R(P) + R(Q)");
        return std::nullopt;
    }
    if (res.verdict == LatticeVerdict::NotExists) {
        if (joint_kernel.dim() == 0)
            return fail("NotExists with trivial joint kernel (should be supremum = I)");
        if (is_direct_sum(joint_range, joint_kernel, ctx.tol))
            return fail("NotExists although the complementarity condition holds");
        return std::nullopt;
    }

    const Idempotent& s = *res.op;
    if (!leq_minus(p, s, ctx.tol)) return fail("P not below the constructed supremum");
    if (!leq_minus(q, s, ctx.tol)) return fail("Q not below the constructed supremum");
    if (!subspace_eq(s.range(), *res.witness_range, ctx.tol))
        return fail("range witness mismatch");
    if (!subspace_eq(s.kernel(), *res.witness_kernel, ctx.tol))
        return fail("kernel witness mismatch");

    // Constructed upper bounds: extend the range, shrink the kernel.
    const Subspace& r_space = *res.witness_range;
    const Subspace& n_space = *res.witness_kernel;
    const Index m = n_space.dim();
    RandomStream rng(ctx.master_seed, ctx.key(2), "upper-bounds");
    for (int probe = 0; probe < kUpperBoundProbes; ++probe) {
        const Index d = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m) + 1));
        ComplexMatrix mixed = n_space.basis() * random_unitary(rng, m);
        Subspace shrunk_kernel =
            d == 0 ? Subspace::zero(n, ctx.tol.rank_rel_tol)
                   : Subspace(mixed.leftCols(d), n, ctx.tol.rank_rel_tol);
        ComplexMatrix extended(n, r_space.dim() + (m - d));
        extended << r_space.basis(), mixed.rightCols(m - d);
        Subspace grown_range = column_space(extended, ctx.tol);

        ComplexMatrix upper;
        try {
            upper = idempotent_from_range_kernel(grown_range, shrunk_kernel, ctx.tol);
        } catch (const Error& e) {
            if (e.code() == Errc::IllConditioned) continue;  // probe redrawn next round
            throw;
        }
        if (!products_leq(p.matrix(), upper, ctx.tol) ||
            !products_leq(q.matrix(), upper, ctx.tol))
            return fail("constructed comparator is not an upper bound (probe " +
                        std::to_string(probe) + ")");
        if (!products_leq(s.matrix(), upper, ctx.tol))
            return fail("supremum not below a valid upper bound (probe " +
                        std::to_string(probe) + ")");
    }
    return std::nullopt;
}

Verdict trial_duality(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    Idempotent q = random_idempotent(ctx.gen(), ctx.key(1), ctx.tol);
    data.put("P", p.matrix());
    data.put("Q", q.matrix());
    const Index n = ctx.dim;

    LatticeResult inf = inf_minus(p, q, ctx.tol);  // throws FormulaMismatch on its own
    LatticeResult dual = sup_minus(p.one_minus(ctx.tol), q.one_minus(ctx.tol), ctx.tol);
    if (inf.verdict != dual.verdict)
        return fail(std::string("verdicts differ: inf ") + verdict_name(inf.verdict) +
                    " vs complement-sup " + verdict_name(dual.verdict));
    if (inf.op.has_value()) {
        ComplexMatrix expected = ComplexMatrix::Identity(n, n) - dual.op->matrix();
        if (auto v = check_close(inf.op->matrix(), expected,
                                 1e-8 * (1.0 + expected.norm()), "infimum operators"))
            return v;
    }
    return std::nullopt;
}

Verdict trial_cor27(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    data.put("P", p.matrix());
    Idempotent complement_p = p.one_minus(ctx.tol);

    LatticeResult join = sup_minus(p, complement_p, ctx.tol);
    if (join.verdict != LatticeVerdict::Trivial)
        return fail(std::string("sup(P, I-P) is ") + verdict_name(join.verdict) + ", not I");
    LatticeResult meet = inf_minus(p, complement_p, ctx.tol);
    if (meet.verdict != LatticeVerdict::Trivial)
        return fail(std::string("inf(P, I-P) is ") + verdict_name(meet.verdict) + ", not 0");

    LatticeResult star_join = sup_minus(p, p.adjoint(ctx.tol), ctx.tol);
    if (star_join.verdict == LatticeVerdict::NotExists)
        return fail("sup(P, P^*) does not exist");
    ComplexMatrix envelope = q_over(p, ctx.tol).matrix();
    return check_close(star_join.op->matrix(), envelope, 1e-8 * (1.0 + envelope.norm()),
                       "sup(P, P^*) vs the orthogonal envelope");
}

Verdict trial_cor28(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    data.put("P", p.matrix());
    const Index n = ctx.dim;
    const ComplexMatrix sym = p.matrix() + p.matrix().adjoint();
    const ComplexMatrix sym_c = 2.0 * ComplexMatrix::Identity(n, n) - sym;

    Idempotent a = Idempotent::validate(ortho_projection(column_space(sym, ctx.tol)), ctx.tol);
    Idempotent b = Idempotent::validate(ortho_projection(column_space(sym_c, ctx.tol)), ctx.tol);
    LatticeResult res = sup_minus(a, b, ctx.tol);
    if (res.verdict != LatticeVerdict::Trivial)
        return fail(std::string("supremum of the symmetrized projections is ") +
                    verdict_name(res.verdict) + ", not I");
    return std::nullopt;
}

Verdict trial_cor210(const TrialCtx& ctx, TrialData& data) {
    std::optional<Idempotent> p, q;
    if (ctx.trial % 2 == 0) {
        p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
        q = random_idempotent(ctx.gen(), ctx.key(1), ctx.tol);
    } else {
        p = random_orthogonal_projection(ctx, 0);
        q = random_orthogonal_projection(ctx, 1);
    }
    data.put("P", p->matrix());
    data.put("Q", q->matrix());
    SupOrthogonality out = sup_orthogonality_test(*p, *q, ctx.tol);
    if (!out.all_agree()) {
        std::ostringstream msg;
        msg << "conditions disagree: via_sup=" << out.via_sup << " via_ranges=" << out.via_ranges
            << " via_kernels=" << out.via_kernels;
        return fail(msg.str());
    }
    return std::nullopt;
}

Verdict trial_prop26(const TrialCtx& ctx, TrialData& data) {
    Idempotent p = random_idempotent(ctx.gen(), ctx.key(0), ctx.tol);
    Idempotent q = random_idempotent(ctx.gen(), ctx.key(1), ctx.tol);
    data.put("P", p.matrix());
    data.put("Q", q.matrix());

    Idempotent join = sup_orth(p, q, ctx.tol);
    LatticeResult res = sup_minus(q_over(p, ctx.tol), q_over(q, ctx.tol), ctx.tol);
    if (res.verdict == LatticeVerdict::NotExists)
        return fail("supremum of orthogonal envelopes missing");
    if (auto v = check_close(res.op->matrix(), join.matrix(), 1e-8 * (1.0 + join.matrix().norm()),
                             "envelope supremum vs projection join"))
        return v;

    Idempotent po = random_orthogonal_projection(ctx, 2);
    Idempotent qo = random_orthogonal_projection(ctx, 3);
    data.put("P_orth", po.matrix());
    data.put("Q_orth", qo.matrix());
    LatticeResult ores = sup_minus(po, qo, ctx.tol);
    if (ores.verdict == LatticeVerdict::NotExists)
        return fail("supremum of orthogonal projections missing");
    if (!ores.op->is_orthogonal())
        return fail("supremum of orthogonal projections is not orthogonal");
    ComplexMatrix ojoin = sup_orth(po, qo, ctx.tol).matrix();
    return check_close(ores.op->matrix(), ojoin, 1e-8 * (1.0 + ojoin.norm()),
                       "orthogonal supremum vs projection join");
}

Verdict trial_prop39(const TrialCtx& ctx, TrialData& data) {
    auto [p, q] = random_comparable_pair(ctx.gen(), ctx.key(0), ctx.tol);
    data.put("P", p.matrix());
    data.put("Q", q.matrix());
    DiffReport rep = diff_report(p, q, ctx.tol);
    if (!rep.all_agree()) {
        std::ostringstream msg;
        msg << "difference conditions disagree: psd=" << rep.psd
            << " selfadjoint=" << rep.selfadjoint << " ortho_proj=" << rep.ortho_proj
            << " sum_order=" << rep.sum_order;
        return fail(msg.str());
    }
    return std::nullopt;
}

Verdict trial_lemma36(const TrialCtx& ctx, TrialData& data) {
    const Index n = ctx.dim;
    RandomStream rng(ctx.master_seed, ctx.key(0), "reducing-split");
    const Index core_dim = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    Subspace core = random_subspace(rng, n, core_dim, ctx.tol.rank_rel_tol);
    Subspace rest = complement(core);

    GenConfig inner_q = ctx.gen();
    inner_q.dim = n - core_dim;
    Idempotent q_rest = random_idempotent(inner_q, ctx.key(1), ctx.tol);
    ComplexMatrix q_full = ortho_projection(core) +
                           rest.basis() * q_rest.matrix() * rest.basis().adjoint();

    GenConfig inner_p = ctx.gen();
    inner_p.dim = core_dim;
    Idempotent p_core = random_idempotent(inner_p, ctx.key(2), ctx.tol);
    ComplexMatrix p_full = core.basis() * p_core.matrix() * core.basis().adjoint();

    Idempotent q = Idempotent::validate(q_full, ctx.tol);
    Idempotent p = Idempotent::validate(p_full, ctx.tol);
    data.put("P", p.matrix());
    data.put("Q", q.matrix());

    Idempotent p_env = q_over(p, ctx.tol);
    Idempotent q_floor = q_under(q, ctx.tol);
    if (!leq_minus(p_env, q_floor, ctx.tol))
        return fail("construction broke the envelope inequality");

    const ComplexMatrix rem = q.matrix() - p_env.matrix();
    const double scale = 1.0 + rem.norm();
    if ((rem * rem - rem).norm() > ctx.tol.idem_tol * (1.0 + rem.norm() * rem.norm()))
        return fail("Q minus the envelope is not idempotent");
    if ((p_env.matrix() * rem).norm() > ctx.tol.idem_tol * scale)
        return fail("the envelope does not annihilate the remainder on the left");
    if ((rem * p_env.matrix()).norm() > ctx.tol.idem_tol * scale)
        return fail("the envelope does not annihilate the remainder on the right");
    return std::nullopt;
}

Verdict trial_cor34(const TrialCtx& ctx, TrialData& data) {
    RandomStream rng(ctx.master_seed, ctx.key(0), "signature");
    const Index n = ctx.dim;
    const Index plus = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    Symmetry j = random_symmetry(ctx.gen(), plus, n - plus, ctx.key(1), ctx.tol);
    Idempotent q = random_j_projection(ctx.gen(), j, ctx.key(2), ctx.tol);
    data.put("J", j.matrix());
    data.put("Q", q.matrix());

    JProjectionCertificate cert = is_j_projection(q, j, ctx.tol);
    if (!cert.holds) return fail("generated operator is not a J-projection");

    for (const auto& [name, env] :
         {std::pair<const char*, Idempotent>{"floor", q_under(q, ctx.tol)},
          std::pair<const char*, Idempotent>{"envelope", q_over(q, ctx.tol)}}) {
        const ComplexMatrix& e = env.matrix();
        const double res = (e * j.matrix() - j.matrix() * e).norm();
        if (res > 1e-8 * (1.0 + e.norm() * j.matrix().norm()))
            return fail(std::string(name) + " fails to commute with J, residual " + fmt(res));
        if (!is_j_projection(env, j, ctx.tol).holds)
            return fail(std::string(name) + " is not a J-projection");
    }
    return std::nullopt;
}

Verdict trial_cor211(const TrialCtx& ctx, TrialData& data) {
    RandomStream rng(ctx.master_seed, ctx.key(0), "signature");
    const Index n = ctx.dim;
    const Index plus = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    Symmetry j = random_symmetry(ctx.gen(), plus, n - plus, ctx.key(1), ctx.tol);

    auto block_idempotent = [&](const Subspace& eigenspace, int slot) -> ComplexMatrix {
        GenConfig inner = ctx.gen();
        inner.dim = eigenspace.dim();
        Idempotent blk = random_idempotent(inner, ctx.key(slot), ctx.tol);
        return eigenspace.basis() * blk.matrix() * eigenspace.basis().adjoint();
    };
    ComplexMatrix p_m = block_idempotent(j.plus_space(), 2) + block_idempotent(j.minus_space(), 3);
    Idempotent p = Idempotent::validate(p_m, ctx.tol);

    Idempotent q = ctx.trial % 2 == 0
                       ? p.one_minus(ctx.tol)
                       : Idempotent::validate(block_idempotent(j.plus_space(), 4) +
                                                  block_idempotent(j.minus_space(), 5),
                                              ctx.tol);
    data.put("J", j.matrix());
    data.put("P", p.matrix());
    data.put("Q", q.matrix());

    LatticeResult res = sup_with_symmetry(p, q, j, ctx.tol);  // throws on violations
    if (ctx.trial % 2 == 0 && res.verdict != LatticeVerdict::Trivial)
        return fail("sup(P, I-P) under a symmetry should be the identity");
    if (res.op.has_value()) {
        const ComplexMatrix& s = res.op->matrix();
        const double comm = (s * j.matrix() - j.matrix() * s).norm();
        if (comm > 1e-8 * (1.0 + s.norm() * j.matrix().norm()))
            return fail("supremum fails to commute with J, residual " + fmt(comm));
    }
    return std::nullopt;
}

Verdict trial_thm37(const TrialCtx& ctx, TrialData& data) {
    const Index n = std::max<Index>(ctx.dim, 3);  // codim >= 2 needs rank >= 1 and n >= 3
    GenConfig gen = ctx.gen();
    gen.dim = n;
    RandomStream rng(ctx.master_seed, ctx.key(0), "rank");
    gen.rank = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 2)));

    Idempotent p = random_idempotent(gen, ctx.key(1), ctx.tol);
    data.put("P", p.matrix());
    if (p.is_orthogonal()) return fail("drew an orthogonal idempotent (measure-zero event)");

    Idempotent q = envelope_order_counterexample(p, ctx.tol);
    data.put("Q", q.matrix());

    if (!leq_minus(p, q, ctx.tol)) return fail("counterexample is not above P");
    if ((p.matrix() - q.matrix()).norm() <= 1e-6)
        return fail("counterexample is not strictly above P");
    if (leq_minus(q_over(p, ctx.tol), q_under(q, ctx.tol), ctx.tol))
        return fail("envelopes stayed ordered; not a counterexample");
    return std::nullopt;
}

Verdict trial_thm38(const TrialCtx& ctx, TrialData& data) {
    const Index n = ctx.dim;
    RandomStream rng(ctx.master_seed, ctx.key(0), "joint-symmetry");
    const Index plus = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const Index minus = n - plus;

    ComplexMatrix u = random_unitary(rng, n);
    Eigen::VectorXcd signs(n);
    for (Index i = 0; i < n; ++i) signs(i) = i < plus ? 1.0 : -1.0;
    ComplexMatrix jm = u * signs.asDiagonal() * u.adjoint();
    Symmetry j = Symmetry::validate((jm + jm.adjoint()) / 2.0, ctx.tol);

    // Feasible P: rank >= 2, at least one column from each eigenspace.
    const Index rank = 2 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const Index lo_a = std::max<Index>(1, rank - minus);
    const Index hi_a = std::min<Index>(plus, rank - 1);
    const Index a = lo_a + static_cast<Index>(rng.below(static_cast<std::uint64_t>(hi_a - lo_a) + 1));
    const Index b = rank - a;
    ComplexMatrix basis(n, rank);
    basis.leftCols(a) = u.leftCols(a);
    basis.rightCols(b) = u.middleCols(plus, b);
    Idempotent p = Idempotent::validate(basis * basis.adjoint(), ctx.tol);
    data.put("J", j.matrix());
    data.put("P", p.matrix());

    Idempotent q = construct_q_over_preimage(p, j, ctx.tol);
    data.put("Q", q.matrix());

    const ComplexMatrix& qm = q.matrix();
    const double idem_res = (qm * qm - qm).norm();
    if (idem_res > 1e-12 * (1.0 + qm.norm() * qm.norm()))
        return fail("preimage idempotency residual " + fmt(idem_res));
    const double jres = (j.matrix() * qm - qm.adjoint() * j.matrix()).norm();
    if (jres > 1e-12 * (1.0 + qm.norm()))
        return fail("preimage indefinite-adjoint residual " + fmt(jres));
    if ((qm - qm.adjoint()).norm() <= 0.5)
        return fail("preimage is too close to self-adjoint");
    if (auto v = check_close(q_over(q, ctx.tol).matrix(), p.matrix(), 1e-8,
                             "envelope of the preimage vs P"))
        return v;

    if (ctx.trial % 2 == 0) {
        Idempotent target = p.one_minus(ctx.tol);
        Idempotent dual = construct_q_under_preimage(target, j, ctx.tol);
        if (auto v = check_close(q_under(dual, ctx.tol).matrix(), target.matrix(), 1e-8,
                                 "floor of the dual preimage vs I-P"))
            return v;
    }
    return std::nullopt;
}

Verdict trial_sqrt32(const TrialCtx& ctx, TrialData& data) {
    RandomStream rng(ctx.master_seed, ctx.key(0), "block");
    const Index h = 1 + static_cast<Index>(rng.below(6));
    const Index k = 1 + static_cast<Index>(rng.below(6));
    ComplexMatrix a = rng.gaussian_matrix(h, k);
    const double target = 5.0 * (static_cast<double>(rng.below(1000)) + 1.0) / 1000.0;
    if (a.norm() > 0) a *= target / a.norm();  // ||A||_F in (0, 5]
    data.put("A", a);

    const ComplexMatrix gram = bordered_gram(a);
    const ComplexMatrix s = block_sqrt(a);
    const double scale = 1.0 + gram.norm();

    if (auto v = check_close(s * s, gram, 1e-8 * scale, "square of the block square root"))
        return v;
    if ((s - s.adjoint()).norm() > 1e-10 * scale)
        return fail("block square root is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(s, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues()(0) < -1e-10 * scale)
        return fail("block square root has a negative eigenvalue " + fmt(eig.eigenvalues()(0)));
    return check_close(s, psd_sqrt(gram), 1e-8 * scale,
                       "closed form vs eigendecomposition square root");
}

Verdict trial_chains(const TrialCtx& ctx, TrialData& data) {
    RandomStream rng(ctx.master_seed, ctx.key(0), "length");
    const int len = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(ctx.dim)));
    std::vector<Idempotent> chain = random_chain(ctx.gen(), len, ctx.key(1), ctx.tol);
    for (std::size_t i = 0; i < chain.size(); ++i)
        data.put("Q" + std::to_string(i), chain[i].matrix());

    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!leq_minus(chain[i], chain[i + 1], ctx.tol))
            return fail("link " + std::to_string(i) + " is not increasing");
        if (chain[i].range().dim() >= chain[i + 1].range().dim())
            return fail("rank fails to increase at link " + std::to_string(i));
        if (!leq_minus(q_over(chain[i], ctx.tol), q_over(chain[i + 1], ctx.tol), ctx.tol))
            return fail("upper envelope not monotone at link " + std::to_string(i));
        if (!leq_minus(q_under(chain[i], ctx.tol), q_under(chain[i + 1], ctx.tol), ctx.tol))
            return fail("lower envelope not monotone at link " + std::to_string(i));
    }
    return std::nullopt;
}

struct SuiteEntry {
    const char* name;
    TrialFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"order-axioms", trial_order_axioms},
    {"lemma21", trial_lemma21},
    {"sup-lub", trial_sup_lub},
    {"duality", trial_duality},
    {"cor27", trial_cor27},
    {"cor28", trial_cor28},
    {"cor210", trial_cor210},
    {"prop26", trial_prop26},
    {"prop39", trial_prop39},
    {"lemma36", trial_lemma36},
    {"cor34", trial_cor34},
    {"cor211", trial_cor211},
    {"thm37", trial_thm37},
    {"thm38", trial_thm38},
    {"sqrt32", trial_sqrt32},
    {"chains", trial_chains},
};

TrialFn find_suite(const std::string& name) {
    for (const auto& entry : kSuites)
        if (name == entry.name) return entry.fn;
    throw Error(Errc::UnknownSuite, "no suite named '" + name + "'");
}

std::string serialize_inputs(const TrialData& data) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, m] : data.inputs) j[name] = matrix_to_json(m);
    return j.dump();
}

SuiteFailure run_one(TrialFn fn, const TrialCtx& ctx, bool* passed) {
    TrialData data;
    SuiteFailure failure;
    failure.trial = ctx.trial;
    failure.seed = derive_seed(ctx.master_seed, static_cast<std::uint64_t>(ctx.trial));
    try {
        Verdict verdict = fn(ctx, data);
        if (!verdict.has_value()) {
            *passed = true;
            return failure;
        }
        failure.message = *verdict;
    } catch (const std::exception& e) {
        failure.message = std::string("exception: ") + e.what();
    }
    *passed = false;
    failure.inputs = serialize_inputs(data);
    return failure;
}

SuiteReport finalize(const std::string& name, int trials, DimRange dims,
                     std::uint64_t master_seed, int threads,
                     std::vector<SuiteFailure>&& failures, int passed, double elapsed_ms) {
    SuiteReport report;
    report.suite = name;
    report.trials = trials;
    report.master_seed = master_seed;
    report.dims = dims;
    report.passed = passed;
    report.failed = trials - passed;
    report.threads = threads;
    report.elapsed_ms = elapsed_ms;
    // Only the first failure keeps its serialized inputs; later ones carry
    // trial index, seed and message, which already reproduce the run.
    for (std::size_t i = 1; i < failures.size(); ++i) failures[i].inputs.clear();
    report.failures = std::move(failures);
    return report;
}

Index dim_for_trial(DimRange dims, int trial) {
    const Index span = dims.hi - dims.lo + 1;
    return dims.lo + static_cast<Index>(trial % span);
}

void check_args(int trials, DimRange dims) {
    if (trials < 0) throw Error(Errc::ParseError, "trial count must be nonnegative");
    if (dims.lo < 2 || dims.hi < dims.lo)
        throw Error(Errc::ParseError, "dimension range must satisfy 2 <= lo <= hi");
}

}  // namespace

bool SuiteReport::same_outcome(const SuiteReport& other) const {
    if (suite != other.suite || trials != other.trials || master_seed != other.master_seed ||
        passed != other.passed || failed != other.failed ||
        failures.size() != other.failures.size())
        return false;
    for (std::size_t i = 0; i < failures.size(); ++i) {
        const SuiteFailure& a = failures[i];
        const SuiteFailure& b = other.failures[i];
        if (a.trial != b.trial || a.seed != b.seed || a.message != b.message ||
            a.inputs != b.inputs)
            return false;
    }
    return true;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : kSuites) out.emplace_back(entry.name);
        return out;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    for (const auto& entry : kSuites)
        if (name == entry.name) return true;
    return false;
}

SuiteReport run_suite_serial(const std::string& name, int trials, DimRange dims,
                             std::uint64_t master_seed, const ToleranceConfig& cfg) {
    TrialFn fn = find_suite(name);
    check_args(trials, dims);
    const auto start = std::chrono::steady_clock::now();

    std::vector<SuiteFailure> failures;
    int passed = 0;
    for (int t = 0; t < trials; ++t) {
        TrialCtx ctx{t, dim_for_trial(dims, t), master_seed, cfg};
        bool ok = false;
        SuiteFailure failure = run_one(fn, ctx, &ok);
        if (ok)
            ++passed;
        else
            failures.push_back(std::move(failure));
    }

    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return finalize(name, trials, dims, master_seed, 1, std::move(failures), passed, elapsed);
}

SuiteReport run_suite_parallel(const std::string& name, int trials, DimRange dims,
                               std::uint64_t master_seed, const ToleranceConfig& cfg,
                               int threads) {
    TrialFn fn = find_suite(name);
    check_args(trials, dims);
    const auto start = std::chrono::steady_clock::now();

    std::vector<unsigned char> ok(static_cast<std::size_t>(trials), 0);
    std::vector<SuiteFailure> slots(static_cast<std::size_t>(trials));

#ifdef _OPENMP
    const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(requested)
    for (int t = 0; t < trials; ++t) {
        TrialCtx ctx{t, dim_for_trial(dims, t), master_seed, cfg};
        bool pass = false;
        slots[static_cast<std::size_t>(t)] = run_one(fn, ctx, &pass);
        ok[static_cast<std::size_t>(t)] = pass ? 1 : 0;
    }
    const int used = requested;
#else
    for (int t = 0; t < trials; ++t) {
        TrialCtx ctx{t, dim_for_trial(dims, t), master_seed, cfg};
        bool pass = false;
        slots[static_cast<std::size_t>(t)] = run_one(fn, ctx, &pass);
        ok[static_cast<std::size_t>(t)] = pass ? 1 : 0;
    }
    const int used = 1;
#endif

    // Deterministic aggregation in trial order, independent of scheduling.
    std::vector<SuiteFailure> failures;
    int passed = 0;
    for (int t = 0; t < trials; ++t) {
        if (ok[static_cast<std::size_t>(t)])
            ++passed;
        else
            failures.push_back(std::move(slots[static_cast<std::size_t>(t)]));
    }

    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return finalize(name, trials, dims, master_seed, used, std::move(failures), passed, elapsed);
}

SuiteReport run_suite(const std::string& name, int trials, DimRange dims,
                      std::uint64_t master_seed, const ToleranceConfig& cfg, int threads) {
    if (threads == 1) return run_suite_serial(name, trials, dims, master_seed, cfg);
    return run_suite_parallel(name, trials, dims, master_seed, cfg, threads);
}

}  // namespace minuslat
