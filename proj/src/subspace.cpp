#include <minuslat/subspace.hpp>

#include <algorithm>
#include <limits>

namespace minuslat {

namespace {

constexpr double kBasisOrthoTol = 1e-10;
constexpr double kMaxCond = 1e8;

double rank_cutoff(double sigma_max, Index rows, Index cols, double rank_rel_tol,
                   double scale_floor = 0.0) {
    return rank_rel_tol *
           std::max(sigma_max * static_cast<double>(std::max(rows, cols)), scale_floor);
}

}  // namespace

Subspace::Subspace(ComplexMatrix basis, Index ambient_dim, double rank_tol)
    : basis_(std::move(basis)), ambient_(ambient_dim), rank_tol_(rank_tol) {
    if (ambient_ <= 0)
        throw Error(Errc::InvalidMatrix, "ambient dimension must be positive");
    if (basis_.rows() != ambient_ || basis_.cols() > ambient_)
        throw Error(Errc::InvalidMatrix, "basis shape inconsistent with ambient dimension");
    require_finite(basis_, "subspace basis");
    if (basis_.cols() > 0) {
        const Index k = basis_.cols();
        double ortho_residual =
            (basis_.adjoint() * basis_ - ComplexMatrix::Identity(k, k)).norm();
        if (ortho_residual > kBasisOrthoTol)
            throw Error(Errc::InvalidMatrix, "basis columns are not orthonormal (residual " +
                                                 std::to_string(ortho_residual) + ")");
    }
}

Subspace Subspace::zero(Index ambient_dim, double rank_tol) {
    return Subspace(ComplexMatrix(ambient_dim, 0), ambient_dim, rank_tol);
}

Subspace Subspace::full(Index ambient_dim, double rank_tol) {
    return Subspace(ComplexMatrix::Identity(ambient_dim, ambient_dim), ambient_dim, rank_tol);
}

Subspace column_space(const ComplexMatrix& m, const ToleranceConfig& cfg, double scale_floor) {
    require_finite(m, "matrix");
    if (m.rows() <= 0) throw Error(Errc::InvalidMatrix, "matrix must have at least one row");
    if (m.cols() == 0) return Subspace::zero(m.rows(), cfg.rank_rel_tol);

    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    if (sigma_max == 0.0) return Subspace::zero(m.rows(), cfg.rank_rel_tol);

    const double cutoff =
        rank_cutoff(sigma_max, m.rows(), m.cols(), cfg.rank_rel_tol, scale_floor);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return Subspace(svd.matrixU().leftCols(rank), m.rows(), cfg.rank_rel_tol);
}

Subspace null_space(const ComplexMatrix& m, const ToleranceConfig& cfg, double scale_floor) {
    require_finite(m, "matrix");
    if (m.cols() <= 0) throw Error(Errc::InvalidMatrix, "matrix must have at least one column");
    if (m.rows() == 0) return Subspace::full(m.cols(), cfg.rank_rel_tol);

    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    if (sigma_max == 0.0) return Subspace::full(m.cols(), cfg.rank_rel_tol);

    const double cutoff =
        rank_cutoff(sigma_max, m.rows(), m.cols(), cfg.rank_rel_tol, scale_floor);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return Subspace(svd.matrixV().rightCols(m.cols() - rank), m.cols(), cfg.rank_rel_tol);
}

Subspace sum(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw Error(Errc::DimensionMismatch, "subspace sum: ambient dimensions differ");
    const Index n = s1.ambient_dim();
    if (s1.dim() == 0 && s2.dim() == 0)
        return Subspace::zero(n, std::max(s1.rank_tol(), s2.rank_tol()));

    ComplexMatrix stacked(n, s1.dim() + s2.dim());
    stacked << s1.basis(), s2.basis();
    ToleranceConfig cfg;
    cfg.rank_rel_tol = std::max(s1.rank_tol(), s2.rank_tol());
    return column_space(stacked, cfg);
}

Subspace complement(const Subspace& s) {
    const Index n = s.ambient_dim();
    if (s.dim() == 0) return Subspace::full(n, s.rank_tol());
    if (s.dim() == n) return Subspace::zero(n, s.rank_tol());
    // I - P_S is Hermitian with eigenvalues in {0,1}; its column space is S^perp.
    ToleranceConfig cfg;
    cfg.rank_rel_tol = s.rank_tol();
    return column_space(ComplexMatrix::Identity(n, n) - ortho_projection(s), cfg);
}

Subspace intersect(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw Error(Errc::DimensionMismatch, "subspace intersect: ambient dimensions differ");
    return complement(sum(complement(s1), complement(s2)));
}

bool contains(const Subspace& outer, const Subspace& inner, const ToleranceConfig& cfg) {
    if (outer.ambient_dim() != inner.ambient_dim())
        throw Error(Errc::DimensionMismatch, "subspace contains: ambient dimensions differ");
    if (inner.dim() == 0) return true;
    ComplexMatrix residual = inner.basis() - ortho_projection(outer) * inner.basis();
    return residual.norm() <= cfg.subspace_eq_tol;
}

bool subspace_eq(const Subspace& s1, const Subspace& s2, const ToleranceConfig& cfg) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw Error(Errc::DimensionMismatch, "subspace_eq: ambient dimensions differ");
    return (ortho_projection(s1) - ortho_projection(s2)).norm() <= cfg.subspace_eq_tol;
}

bool is_direct_sum(const Subspace& s1, const Subspace& s2, const ToleranceConfig& cfg) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw Error(Errc::DimensionMismatch, "is_direct_sum: ambient dimensions differ");
    const Index n = s1.ambient_dim();
    if (s1.dim() + s2.dim() != n) return false;
    if (s1.dim() == 0 || s2.dim() == 0) return true;  // the other one is all of C^n

    ComplexMatrix stacked(n, n);
    stacked << s1.basis(), s2.basis();
    Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
    const auto& sv = svd.singularValues();
    return sv(n - 1) > rank_cutoff(sv(0), n, n, cfg.rank_rel_tol);
}

ComplexMatrix ortho_projection(const Subspace& s) {
    if (s.dim() == 0)
        return ComplexMatrix::Zero(s.ambient_dim(), s.ambient_dim());
    return s.basis() * s.basis().adjoint();
}

double cond_number(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) == 0.0)
        return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

ComplexMatrix idempotent_from_range_kernel(const Subspace& range, const Subspace& kernel,
                                           const ToleranceConfig& cfg) {
    if (range.ambient_dim() != kernel.ambient_dim())
        throw Error(Errc::DimensionMismatch,
                    "idempotent_from_range_kernel: ambient dimensions differ");
    const Index n = range.ambient_dim();
    const Index r = range.dim();
    if (!is_direct_sum(range, kernel, cfg))
        throw Error(Errc::NotComplementary,
                    "range and kernel do not form a direct-sum decomposition of C^n");
    if (r == 0) return ComplexMatrix::Zero(n, n);
    if (r == n) return ComplexMatrix::Identity(n, n);

    ComplexMatrix t(n, n);
    t << range.basis(), kernel.basis();
    const double cond = cond_number(t);
    if (!(cond <= kMaxCond))
        throw Error(Errc::IllConditioned,
                    "stacked basis condition number " + std::to_string(cond) + " exceeds 1e8");

    // E = [U V] diag(I_r, 0) [U V]^{-1} = [U 0] [U V]^{-1}.
    ComplexMatrix lifted = ComplexMatrix::Zero(n, n);
    lifted.leftCols(r) = range.basis();
    return lifted * t.inverse();
}

}  // namespace minuslat
