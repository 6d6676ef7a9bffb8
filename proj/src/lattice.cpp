#include <minuslat/lattice.hpp>

namespace minuslat {

namespace {

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig((a + a.adjoint()) / 2.0,
                                                     Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

double order_scale(const Idempotent& p, const Idempotent& q) {
    return 1.0 + p.matrix().norm() * q.matrix().norm();
}

LatticeResult trivial_sup(Index n, const ToleranceConfig& cfg) {
    LatticeResult res;
    res.verdict = LatticeVerdict::Trivial;
    res.op = Idempotent::validate(ComplexMatrix::Identity(n, n), cfg);
    res.witness_range = Subspace::full(n, cfg.rank_rel_tol);
    res.witness_kernel = Subspace::zero(n, cfg.rank_rel_tol);
    return res;
}

LatticeResult trivial_inf(Index n, const ToleranceConfig& cfg) {
    LatticeResult res;
    res.verdict = LatticeVerdict::Trivial;
    res.op = Idempotent::validate(ComplexMatrix::Zero(n, n), cfg);
    res.witness_range = Subspace::zero(n, cfg.rank_rel_tol);
    res.witness_kernel = Subspace::full(n, cfg.rank_rel_tol);
    return res;
}

}  // namespace

const char* verdict_name(LatticeVerdict v) noexcept {
    switch (v) {
        case LatticeVerdict::Trivial: return "Trivial";
        case LatticeVerdict::Nontrivial: return "ExistsNontrivial";
        case LatticeVerdict::NotExists: return "NotExists";
    }
    return "?";
}

bool leq_minus(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    const double tol = cfg.idem_tol * order_scale(p, q);
    return (p.matrix() * q.matrix() - p.matrix()).norm() <= tol &&
           (q.matrix() * p.matrix() - p.matrix()).norm() <= tol;
}

OrderReport order_report(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    OrderReport rep;
    const double tol = cfg.idem_tol * order_scale(p, q);

    const double pq_res = (p.matrix() * q.matrix() - p.matrix()).norm();
    const double qp_res = (q.matrix() * p.matrix() - p.matrix()).norm();
    rep.leq = pq_res <= tol && qp_res <= tol;
    rep.residuals["PQ-P"] = pq_res;
    rep.residuals["QP-P"] = qp_res;

    // Subspace inclusions, evaluated geometrically rather than through products.
    const ComplexMatrix proj_rq = ortho_projection(q.range());
    const ComplexMatrix proj_np = ortho_projection(p.kernel());
    double range_res = 0.0, kernel_res = 0.0;
    if (p.range().dim() > 0)
        range_res = (p.range().basis() - proj_rq * p.range().basis()).norm();
    if (q.kernel().dim() > 0)
        kernel_res = (q.kernel().basis() - proj_np * q.kernel().basis()).norm();
    rep.range_incl = range_res <= cfg.subspace_eq_tol;
    rep.kernel_incl = kernel_res <= cfg.subspace_eq_tol;
    rep.residuals["range_incl"] = range_res;
    rep.residuals["kernel_incl"] = kernel_res;

    const ComplexMatrix ps = p.matrix().adjoint();
    const ComplexMatrix qs = q.matrix().adjoint();
    const double adj1 = (ps * qs - ps).norm();
    const double adj2 = (qs * ps - ps).norm();
    rep.adjoint_leq = adj1 <= tol && adj2 <= tol;
    rep.residuals["adjoint"] = std::max(adj1, adj2);

    const Index n = p.dim();
    const ComplexMatrix cp = ComplexMatrix::Identity(n, n) - p.matrix();
    const ComplexMatrix cq = ComplexMatrix::Identity(n, n) - q.matrix();
    const double comp_tol = cfg.idem_tol * (1.0 + cp.norm() * cq.norm());
    const double comp1 = (cq * cp - cq).norm();
    const double comp2 = (cp * cq - cq).norm();
    rep.complement_leq = comp1 <= comp_tol && comp2 <= comp_tol;
    rep.residuals["complement"] = std::max(comp1, comp2);
    return rep;
}

LatticeResult sup_minus(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    const Index n = p.dim();

    Subspace joint_kernel = intersect(p.kernel(), q.kernel());
    Subspace joint_range = sum(p.range(), q.range());

    // The containment test subsumes joint_kernel = {0}.
    if (contains(joint_range, joint_kernel, cfg)) return trivial_sup(n, cfg);

    if (joint_kernel.dim() > 0 && is_direct_sum(joint_range, joint_kernel, cfg)) {
        LatticeResult res;
        res.verdict = LatticeVerdict::Nontrivial;
        res.op = Idempotent::validate(
            idempotent_from_range_kernel(joint_range, joint_kernel, cfg), cfg);
        res.witness_range = std::move(joint_range);
        res.witness_kernel = std::move(joint_kernel);
        return res;
    }
    return LatticeResult{};
}

LatticeResult inf_minus(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    const Index n = p.dim();

    // Direct construction: onto R(P) cap R(Q) along N(P) + N(Q).
    Subspace joint_range = intersect(p.range(), q.range());
    Subspace joint_kernel = sum(p.kernel(), q.kernel());

    LatticeResult direct;
    if (contains(joint_kernel, joint_range, cfg)) {
        direct = trivial_inf(n, cfg);
    } else if (joint_range.dim() > 0 && is_direct_sum(joint_range, joint_kernel, cfg)) {
        direct.verdict = LatticeVerdict::Nontrivial;
        direct.op = Idempotent::validate(
            idempotent_from_range_kernel(joint_range, joint_kernel, cfg), cfg);
        direct.witness_range = std::move(joint_range);
        direct.witness_kernel = std::move(joint_kernel);
    }

    // Dual route through the supremum of the complements.
    LatticeResult dual_sup = sup_minus(p.one_minus(cfg), q.one_minus(cfg), cfg);
    if (dual_sup.verdict != direct.verdict)
        throw Error(Errc::FormulaMismatch,
                    std::string("infimum verdicts disagree: direct ") +
                        verdict_name(direct.verdict) + " vs dual " +
                        verdict_name(dual_sup.verdict));
    if (direct.op.has_value()) {
        const ComplexMatrix dual_op =
            ComplexMatrix::Identity(n, n) - dual_sup.op->matrix();
        const double diff = (direct.op->matrix() - dual_op).norm();
        if (diff > cfg.idem_tol * (1.0 + direct.op->matrix().norm()))
            throw Error(Errc::FormulaMismatch,
                        "infimum operators disagree by " + std::to_string(diff));
    }
    return direct;
}

Idempotent sup_orth(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    Subspace joined = sum(q_over(p, cfg).range(), q_over(q, cfg).range());
    return Idempotent::validate(ortho_projection(joined), cfg);
}

SupOrthogonality sup_orthogonality_test(const Idempotent& p, const Idempotent& q,
                                        const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    const Index n = p.dim();
    SupOrthogonality out;

    LatticeResult res = sup_minus(p, q, cfg);
    out.via_sup = res.verdict == LatticeVerdict::Nontrivial && res.op->is_orthogonal();

    const ComplexMatrix pm = p.matrix(), qm = q.matrix();
    Subspace left = column_space(pm * pm.adjoint() + qm * qm.adjoint(), cfg, 1.0);
    Subspace right = column_space(pm.adjoint() * pm + qm.adjoint() * qm, cfg, 1.0);
    out.via_ranges = subspace_eq(left, right, cfg) && left.dim() < n;

    Subspace joint_kernel = intersect(p.kernel(), q.kernel());
    Subspace joint_kernel_adj =
        intersect(null_space(pm.adjoint(), cfg, 1.0), null_space(qm.adjoint(), cfg, 1.0));
    Subspace sym_kernel =
        intersect(null_space(pm + pm.adjoint(), cfg, 1.0), null_space(qm + qm.adjoint(), cfg, 1.0));
    out.via_kernels = joint_kernel.dim() > 0 && contains(sym_kernel, joint_kernel, cfg) &&
                      contains(sym_kernel, joint_kernel_adj, cfg);
    return out;
}

DiffReport diff_report(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    if (!leq_minus(p, q, cfg))
        throw Error(Errc::NotComparable, "P is not below Q in the minus order");

    DiffReport rep;
    const ComplexMatrix diff = q.matrix() - p.matrix();
    const double scale = 1.0 + diff.norm();

    const double adj_res = (diff - diff.adjoint()).norm();
    rep.selfadjoint = adj_res <= cfg.idem_tol * scale;
    rep.residuals["selfadjoint"] = adj_res;

    const double min_eig = min_hermitian_eigenvalue(diff);
    rep.psd = rep.selfadjoint && min_eig >= -cfg.idem_tol * scale;
    rep.residuals["min_eigenvalue"] = min_eig;

    const double idem_res = (diff * diff - diff).norm();
    rep.ortho_proj = rep.selfadjoint && idem_res <= cfg.idem_tol * (1.0 + diff.norm() * diff.norm());
    rep.residuals["idempotency"] = idem_res;

    const ComplexMatrix sym_gap =
        (q.matrix() + q.matrix().adjoint()) - (p.matrix() + p.matrix().adjoint());
    const double sym_min_eig = min_hermitian_eigenvalue(sym_gap);
    rep.sum_order = sym_min_eig >= -cfg.idem_tol * (1.0 + sym_gap.norm());
    rep.residuals["sum_order_min_eigenvalue"] = sym_min_eig;
    return rep;
}

LatticeResult sup_with_symmetry(const Idempotent& p, const Idempotent& q, const Symmetry& j,
                                const ToleranceConfig& cfg) {
    require_same_square(p.matrix(), q.matrix());
    if (p.dim() != j.dim())
        throw Error(Errc::DimensionMismatch, "sup_with_symmetry: symmetry dimension differs");

    const ComplexMatrix& jm = j.matrix();
    const double p_comm = (p.matrix() * jm - jm * p.matrix()).norm();
    const double q_comm = (q.matrix() * jm - jm * q.matrix()).norm();
    if (p_comm > cfg.idem_tol * (1.0 + p.matrix().norm() * jm.norm()))
        throw Error(Errc::NotCommuting, "P does not commute with J (residual " +
                                            std::to_string(p_comm) + ")");
    if (q_comm > cfg.idem_tol * (1.0 + q.matrix().norm() * jm.norm()))
        throw Error(Errc::NotCommuting, "Q does not commute with J (residual " +
                                            std::to_string(q_comm) + ")");

    LatticeResult res = sup_minus(p, q, cfg);
    if (!res.op.has_value()) return res;

    const ComplexMatrix& s = res.op->matrix();
    const double s_comm = (s * jm - jm * s).norm();
    if (s_comm > cfg.idem_tol * (1.0 + s.norm() * jm.norm()))
        throw Error(Errc::FormulaMismatch,
                    "supremum fails to commute with J, residual " + std::to_string(s_comm));

    // Blockwise agreement on the two J-eigenspaces.
    ComplexMatrix rebuilt = ComplexMatrix::Zero(p.dim(), p.dim());
    for (const Subspace* eigenspace : {&j.plus_space(), &j.minus_space()}) {
        const Index d = eigenspace->dim();
        if (d == 0) continue;
        const ComplexMatrix& u = eigenspace->basis();
        Idempotent p_block = Idempotent::validate(u.adjoint() * p.matrix() * u, cfg);
        Idempotent q_block = Idempotent::validate(u.adjoint() * q.matrix() * u, cfg);
        LatticeResult block = sup_minus(p_block, q_block, cfg);
        if (!block.op.has_value())
            throw Error(Errc::FormulaMismatch, "blockwise supremum missing on a J-eigenspace");
        rebuilt += u * block.op->matrix() * u.adjoint();
    }
    const double block_diff = (rebuilt - s).norm();
    if (block_diff > cfg.idem_tol * (1.0 + s.norm()))
        throw Error(Errc::FormulaMismatch,
                    "blockwise suprema disagree with the global supremum by " +
                        std::to_string(block_diff));
    return res;
}

}  // namespace minuslat
