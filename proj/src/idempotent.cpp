#include <minuslat/idempotent.hpp>

namespace minuslat {

Idempotent Idempotent::validate(const ComplexMatrix& m, const ToleranceConfig& cfg) {
    if (m.rows() != m.cols())
        throw Error(Errc::NotIdempotent, "matrix is not square");
    if (m.rows() == 0)
        throw Error(Errc::InvalidMatrix, "matrix must have positive dimension");
    require_finite(m, "matrix");

    const double norm = m.norm();
    const double residual = (m * m - m).norm();
    const double scale = 1.0 + norm * norm;
    if (residual > cfg.idem_tol * scale)
        throw Error(Errc::NotIdempotent,
                    "||M^2 - M||_F = " + std::to_string(residual) + " exceeds " +
                        std::to_string(cfg.idem_tol * scale));

    Subspace range = column_space(m, cfg, 1.0);
    Subspace kernel = null_space(m, cfg, 1.0);
    if (!is_direct_sum(range, kernel, cfg))
        throw Error(Errc::NotIdempotent, "range and kernel are not complementary");

    const bool orthogonal = (m - m.adjoint()).norm() <= cfg.idem_tol;
    return Idempotent(m, std::move(range), std::move(kernel), orthogonal);
}

Idempotent Idempotent::adjoint(const ToleranceConfig& cfg) const {
    return validate(matrix_.adjoint(), cfg);
}

Idempotent Idempotent::one_minus(const ToleranceConfig& cfg) const {
    return validate(ComplexMatrix::Identity(dim(), dim()) - matrix_, cfg);
}

ComplexMatrix CanonicalForm::reassemble() const {
    const Index n = core.ambient_dim();
    const Index d1 = core.dim(), d2 = range_rest.dim(), d3 = range_perp.dim();
    ComplexMatrix u(n, d1 + d2 + d3);
    if (d1 > 0) u.middleCols(0, d1) = core.basis();
    if (d2 > 0) u.middleCols(d1, d2) = range_rest.basis();
    if (d3 > 0) u.middleCols(d1 + d2, d3) = range_perp.basis();

    ComplexMatrix blocks = ComplexMatrix::Zero(d1 + d2 + d3, d1 + d2 + d3);
    blocks.topLeftCorner(d1, d1).setIdentity();
    blocks.block(d1, d1, d2, d2).setIdentity();
    blocks.block(d1, d1 + d2, d2, d3) = coupling;
    return u * blocks * u.adjoint();
}

CanonicalForm canonical_form(const Idempotent& q, const ToleranceConfig& cfg) {
    Subspace range_adj = column_space(q.matrix().adjoint(), cfg, 1.0);
    Subspace core = intersect(q.range(), range_adj);
    Subspace range_rest = intersect(q.range(), complement(core));
    Subspace range_perp = complement(q.range());

    ComplexMatrix coupling(range_rest.dim(), range_perp.dim());
    if (range_rest.dim() > 0 && range_perp.dim() > 0)
        coupling = range_rest.basis().adjoint() * q.matrix() * range_perp.basis();

    CanonicalForm form{std::move(core), std::move(range_rest), std::move(range_perp),
                       std::move(coupling)};

    const double residual = (form.reassemble() - q.matrix()).norm();
    const double scale = 1.0 + q.matrix().norm();
    if (residual > 1e-8 * scale)
        throw Error(Errc::FormulaMismatch,
                    "canonical form reassembly residual " + std::to_string(residual));
    return form;
}

namespace {

ComplexMatrix hermitian_func(const ComplexMatrix& a, double (*f)(double)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig((a + a.adjoint()) / 2.0);
    Eigen::VectorXd vals = eig.eigenvalues();
    for (Index i = 0; i < vals.size(); ++i) vals(i) = f(vals(i));
    return eig.eigenvectors() * vals.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }
double inv_sqrt(double x) { return 1.0 / std::sqrt(x); }

}  // namespace

ComplexMatrix psd_sqrt(const ComplexMatrix& a) { return hermitian_func(a, sqrt_clamped); }

ComplexMatrix inv_sqrt_ge_identity(const ComplexMatrix& a) { return hermitian_func(a, inv_sqrt); }

ComplexMatrix abs_value(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "abs_value: matrix not square");
    require_finite(a, "matrix");
    return psd_sqrt(a.adjoint() * a);
}

ComplexMatrix bordered_gram(const ComplexMatrix& a) {
    const Index h = a.rows(), k = a.cols();
    ComplexMatrix g(h + k, h + k);
    g.topLeftCorner(h, h) = ComplexMatrix::Identity(h, h);
    g.topRightCorner(h, k) = a;
    g.bottomLeftCorner(k, h) = a.adjoint();
    g.bottomRightCorner(k, k) = a.adjoint() * a;
    return g;
}

ComplexMatrix block_sqrt(const ComplexMatrix& a) {
    require_finite(a, "matrix");
    const Index h = a.rows(), k = a.cols();
    const ComplexMatrix ih = ComplexMatrix::Identity(h, h);
    const ComplexMatrix ik = ComplexMatrix::Identity(k, k);
    // Both I + AA^* and I + A^*A are >= I, so no eigenvalue clamping is needed.
    const ComplexMatrix left = inv_sqrt_ge_identity(ih + a * a.adjoint());
    const ComplexMatrix right = inv_sqrt_ge_identity(ik + a.adjoint() * a);

    ComplexMatrix s(h + k, h + k);
    s.topLeftCorner(h, h) = left;
    s.topRightCorner(h, k) = left * a;
    s.bottomLeftCorner(k, h) = a.adjoint() * left;
    s.bottomRightCorner(k, k) = right * (a.adjoint() * a);
    return s;
}

Idempotent q_under(const Idempotent& q, const ToleranceConfig& cfg) {
    Subspace range_adj = column_space(q.matrix().adjoint(), cfg, 1.0);
    Subspace core = intersect(q.range(), range_adj);
    return Idempotent::validate(ortho_projection(core), cfg);
}

Idempotent q_under_via_abs(const Idempotent& q, const ToleranceConfig& cfg) {
    const Index n = q.dim();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    Subspace fixed_abs = null_space(id - abs_value(q.matrix()), cfg, 1.0);
    ComplexMatrix via_abs = ortho_projection(fixed_abs);

    Subspace fixed_sym = null_space(2.0 * id - q.matrix() - q.matrix().adjoint(), cfg, 1.0);
    ComplexMatrix via_sym = ortho_projection(fixed_sym);

    ComplexMatrix direct = q_under(q, cfg).matrix();
    const double scale = 1.0 + q.matrix().norm();
    const double d1 = (via_abs - direct).norm();
    const double d2 = (via_sym - direct).norm();
    if (d1 > cfg.idem_tol * scale || d2 > cfg.idem_tol * scale)
        throw Error(Errc::FormulaMismatch,
                    "q_under routes disagree: |abs-route - direct| = " + std::to_string(d1) +
                        ", |sym-route - direct| = " + std::to_string(d2));
    return Idempotent::validate(via_abs, cfg);
}

Idempotent q_over(const Idempotent& q, const ToleranceConfig& cfg) {
    Subspace null_sym = null_space(q.matrix() + q.matrix().adjoint(), cfg, 1.0);
    ComplexMatrix direct = ortho_projection(complement(null_sym));

    ComplexMatrix dual = ComplexMatrix::Identity(q.dim(), q.dim()) -
                         q_under(q.one_minus(cfg), cfg).matrix();

    const double diff = (direct - dual).norm();
    if (diff > cfg.idem_tol * (1.0 + q.matrix().norm()))
        throw Error(Errc::FormulaMismatch,
                    "q_over routes disagree: |direct - dual| = " + std::to_string(diff));
    return Idempotent::validate(direct, cfg);
}

}  // namespace minuslat
