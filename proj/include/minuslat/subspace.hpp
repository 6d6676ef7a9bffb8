#pragma once

#include <minuslat/types.hpp>

namespace minuslat {

/// A subspace of C^n, stored as an orthonormal column basis together with
/// the ambient dimension. dim()==0 encodes the zero subspace {0}; it is a
/// first-class value, never an error. Instances are immutable.
class Subspace {
public:
    /// Wraps an already-orthonormal basis (ambient x k). Checks
    /// ||basis^* basis - I_k||_F <= 1e-10 and finiteness.
    Subspace(ComplexMatrix basis, Index ambient_dim, double rank_tol);

    static Subspace zero(Index ambient_dim, double rank_tol = 1e-10);
    static Subspace full(Index ambient_dim, double rank_tol = 1e-10);

    Index ambient_dim() const noexcept { return ambient_; }
    Index dim() const noexcept { return basis_.cols(); }
    const ComplexMatrix& basis() const noexcept { return basis_; }
    double rank_tol() const noexcept { return rank_tol_; }

private:
    ComplexMatrix basis_;  // ambient_ x dim, orthonormal columns
    Index ambient_;
    double rank_tol_;
};

/// Orthonormal basis of the numerical column space of M. Rank is decided by
/// singular values sigma_i > rank_rel_tol * max(sigma_max * max(rows, cols),
/// scale_floor); sigma_max == 0 yields the zero subspace.
///
/// scale_floor = 0 is the pure relative rule. Matrices formed by subtracting
/// O(s)-sized operators (I - P, Q + Q^*, ...) can be numerically zero, where
/// the relative rule sees full rank inside the round-off; passing
/// scale_floor = s anchors the cutoff to the source scale instead.
Subspace column_space(const ComplexMatrix& m, const ToleranceConfig& cfg = {},
                      double scale_floor = 0.0);

/// Orthonormal basis of the numerical null space (right singular vectors of
/// the below-threshold singular values); dual of column_space.
Subspace null_space(const ComplexMatrix& m, const ToleranceConfig& cfg = {},
                    double scale_floor = 0.0);

/// Span of the union: column space of the concatenated bases.
Subspace sum(const Subspace& s1, const Subspace& s2);

/// Intersection, computed as (S1^perp + S2^perp)^perp (De Morgan on
/// orthogonal complements), so rank decisions reuse the column_space cutoff.
Subspace intersect(const Subspace& s1, const Subspace& s2);

/// Orthogonal complement; dim(S) + dim(complement(S)) == ambient_dim.
Subspace complement(const Subspace& s);

/// True iff inner is contained in outer:
/// ||(I - P_outer) * basis(inner)||_F <= subspace_eq_tol.
bool contains(const Subspace& outer, const Subspace& inner, const ToleranceConfig& cfg = {});

/// Basis-independent equality: ||P_{S1} - P_{S2}||_F <= subspace_eq_tol.
bool subspace_eq(const Subspace& s1, const Subspace& s2, const ToleranceConfig& cfg = {});

/// True iff dim(S1) + dim(S2) == ambient and the stacked basis matrix
/// [B1 B2] has smallest singular value above the rank cutoff, i.e.
/// S1 (+) S2 = C^n as a (possibly oblique) direct sum.
bool is_direct_sum(const Subspace& s1, const Subspace& s2, const ToleranceConfig& cfg = {});

/// basis * basis^*: the orthogonal projection onto S (Hermitian idempotent).
ComplexMatrix ortho_projection(const Subspace& s);

/// The unique idempotent E with column space `range` and null space `kernel`,
/// computed as [U V] diag(I_r, 0) [U V]^{-1}. Requires is_direct_sum(range,
/// kernel); refuses cond([U V]) > 1e8 (IllConditioned) instead of returning
/// an inaccurate operator.
ComplexMatrix idempotent_from_range_kernel(const Subspace& range, const Subspace& kernel,
                                           const ToleranceConfig& cfg = {});

/// sigma_max / sigma_min of a square matrix (infinity when singular).
double cond_number(const ComplexMatrix& m);

}  // namespace minuslat
