#include <minuslat/krein.hpp>

#include <cmath>

namespace minuslat {

namespace {

constexpr double kSymmetryTol = 1e-10;

// Multiplies v by a unit phase so its largest-magnitude component becomes
// real positive. Keeps vector choices reproducible across equivalent bases.
Eigen::VectorXcd canonical_phase(Eigen::VectorXcd v) {
    Index imax = 0;
    double best = 0.0;
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    if (best > 0.0) v *= std::conj(v(imax)) / best;
    return v;
}

}  // namespace

Symmetry Symmetry::validate(const ComplexMatrix& m, const ToleranceConfig& cfg) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(Errc::NotSymmetry, "matrix is not square");
    require_finite(m, "matrix");
    const Index n = m.rows();
    const double adj_residual = (m - m.adjoint()).norm();
    const double invol_residual = (m * m - ComplexMatrix::Identity(n, n)).norm();
    if (adj_residual > kSymmetryTol || invol_residual > kSymmetryTol)
        throw Error(Errc::NotSymmetry, "||J - J^*|| = " + std::to_string(adj_residual) +
                                           ", ||J^2 - I|| = " + std::to_string(invol_residual));

    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    Subspace plus = column_space((id + m) / 2.0, cfg, 1.0);
    Subspace minus = column_space((id - m) / 2.0, cfg, 1.0);
    if (plus.dim() + minus.dim() != n)
        throw Error(Errc::NotSymmetry, "eigenspace dimensions do not fill the space");
    return Symmetry(m, std::move(plus), std::move(minus));
}

JProjectionCertificate is_j_projection(const Idempotent& q, const Symmetry& j,
                                       const ToleranceConfig& cfg) {
    if (q.dim() != j.dim())
        throw Error(Errc::DimensionMismatch, "is_j_projection: dimensions differ");
    JProjectionCertificate cert;
    cert.residual = (j.matrix() * q.matrix() - q.matrix().adjoint() * j.matrix()).norm();
    cert.holds = cert.residual <= cfg.idem_tol * (1.0 + q.matrix().norm());
    return cert;
}

Idempotent j_projection_onto(const Subspace& m, const Symmetry& j, const ToleranceConfig& cfg) {
    if (m.ambient_dim() != j.dim())
        throw Error(Errc::DimensionMismatch, "j_projection_onto: dimensions differ");
    Subspace jm = m.dim() == 0
                      ? Subspace::zero(m.ambient_dim(), m.rank_tol())
                      : Subspace(j.matrix() * m.basis(), m.ambient_dim(), m.rank_tol());
    Subspace kernel = complement(jm);
    if (!is_direct_sum(m, kernel, cfg))
        throw Error(Errc::Degenerate, "M is J-degenerate: M and (J M)^perp are not complementary");

    Idempotent q = Idempotent::validate(idempotent_from_range_kernel(m, kernel, cfg), cfg);
    JProjectionCertificate cert = is_j_projection(q, j, cfg);
    if (!cert.holds)
        throw Error(Errc::FormulaMismatch,
                    "constructed operator misses JQ = Q^*J, residual " +
                        std::to_string(cert.residual));
    return q;
}

Idempotent construct_q_over_preimage(const Idempotent& p, const Symmetry& j,
                                     const ToleranceConfig& cfg) {
    if (p.dim() != j.dim())
        throw Error(Errc::DimensionMismatch, "construct_q_over_preimage: dimensions differ");
    if (!p.is_orthogonal())
        throw Error(Errc::Infeasible, "P is not an orthogonal projection");
    const double commute_residual =
        (p.matrix() * j.matrix() - j.matrix() * p.matrix()).norm();
    if (commute_residual > cfg.idem_tol * (1.0 + p.matrix().norm() * j.matrix().norm()))
        throw Error(Errc::Infeasible,
                    "P does not commute with J (residual " + std::to_string(commute_residual) + ")");
    if (p.range().dim() < 2)
        throw Error(Errc::Infeasible, "dim R(P) < 2");

    Subspace plus_part = intersect(p.range(), j.plus_space());
    if (plus_part.dim() == 0)
        throw Error(Errc::Infeasible, "(I+J)P = 0: R(P) carries no +1 eigenvector of J");
    Subspace minus_part = intersect(p.range(), j.minus_space());
    if (minus_part.dim() == 0)
        throw Error(Errc::Infeasible, "(I-J)P = 0: R(P) carries no -1 eigenvector of J");

    const Index n = p.dim();
    Eigen::VectorXcd x1 = canonical_phase(plus_part.basis().col(0));
    Eigen::VectorXcd x2 = canonical_phase(minus_part.basis().col(0));

    ComplexMatrix pair(n, 2);
    pair << x1, x2;
    const Complex half_root3(0.0, std::sqrt(3.0) / 2.0);
    ComplexMatrix cell(2, 2);
    cell << Complex(1.5, 0.0), half_root3, half_root3, Complex(-0.5, 0.0);

    // Identity on the rest of R(P), zero on R(P)^perp.
    Subspace rest = intersect(p.range(), complement(Subspace(pair, n, p.range().rank_tol())));
    ComplexMatrix q = pair * cell * pair.adjoint() + ortho_projection(rest);

    Idempotent result = Idempotent::validate(q, cfg);
    JProjectionCertificate cert = is_j_projection(result, j, cfg);
    if (!cert.holds)
        throw Error(Errc::FormulaMismatch,
                    "constructed operator misses JQ = Q^*J, residual " +
                        std::to_string(cert.residual));
    return result;
}

Idempotent construct_q_under_preimage(const Idempotent& p, const Symmetry& j,
                                      const ToleranceConfig& cfg) {
    if (p.dim() != j.dim())
        throw Error(Errc::DimensionMismatch, "construct_q_under_preimage: dimensions differ");
    if (!p.is_orthogonal())
        throw Error(Errc::Infeasible, "P is not an orthogonal projection");
    Idempotent complement_p = p.one_minus(cfg);
    try {
        return construct_q_over_preimage(complement_p, j, cfg).one_minus(cfg);
    } catch (const Error& e) {
        if (e.code() == Errc::Infeasible)
            throw Error(Errc::Infeasible, std::string("on I - P: ") + e.what());
        throw;
    }
}

Idempotent envelope_order_counterexample(const Idempotent& p, const ToleranceConfig& cfg) {
    if (p.is_orthogonal())
        throw Error(Errc::Infeasible, "P is an orthogonal projection; no counterexample exists");
    const Index n = p.dim();
    const Index codim = n - p.range().dim();
    if (codim < 2)
        throw Error(Errc::Infeasible, "dim R(P)^perp < 2; no counterexample exists");

    CanonicalForm form = canonical_form(p, cfg);
    const Index d1 = form.core.dim();
    const Index d2 = form.range_rest.dim();
    const Index d3 = form.range_perp.dim();

    Subspace coupling_kernel = null_space(form.coupling, cfg);

    if (coupling_kernel.dim() == 0) {
        // Coupling injective: perturb inside R(P)^perp with a rank-one
        // projection S, compensating on the coupling block.
        ComplexMatrix s = ComplexMatrix::Zero(d3, d3);
        s(0, 0) = 1.0;
        ComplexMatrix u(n, n);
        u << form.core.basis(), form.range_rest.basis(), form.range_perp.basis();

        ComplexMatrix blocks = ComplexMatrix::Zero(n, n);
        blocks.topLeftCorner(d1, d1).setIdentity();
        blocks.block(d1, d1, d2, d2).setIdentity();
        blocks.block(d1, d1 + d2, d2, d3) = form.coupling - form.coupling * s;
        blocks.block(d1 + d2, d1 + d2, d3, d3) = s;
        return Idempotent::validate(u * blocks * u.adjoint(), cfg);
    }

    // Coupling has a kernel: split R(P)^perp into it and its complement,
    // couple the kernel part back through a nonzero block.
    const Index k = coupling_kernel.dim();
    Subspace coupling_cokernel = complement(coupling_kernel);
    const Index d3a = d3 - k;
    if (coupling_cokernel.dim() != d3a || d3a != d2)
        throw Error(Errc::FormulaMismatch, "coupling rank split inconsistent");

    ComplexMatrix b_cok = form.range_perp.basis() * coupling_cokernel.basis();  // n x d3a
    ComplexMatrix b_ker = form.range_perp.basis() * coupling_kernel.basis();    // n x k
    ComplexMatrix coupling_inj = form.coupling * coupling_cokernel.basis();     // d2 x d3a

    ComplexMatrix bridge = ComplexMatrix::Zero(d3a, k);
    bridge(0, 0) = 1.0;

    ComplexMatrix u(n, n);
    u << form.core.basis(), form.range_rest.basis(), b_cok, b_ker;

    ComplexMatrix blocks = ComplexMatrix::Zero(n, n);
    blocks.topLeftCorner(d1, d1).setIdentity();
    blocks.block(d1, d1, d2, d2).setIdentity();
    blocks.block(d1, d1 + d2 + d3a, d2, k) = -coupling_inj * bridge;
    blocks.block(d1 + d2, d1 + d2, d3a, d3a).setIdentity();
    blocks.block(d1 + d2, d1 + d2 + d3a, d3a, k) = bridge;
    return Idempotent::validate(u * blocks * u.adjoint(), cfg);
}

}  // namespace minuslat
