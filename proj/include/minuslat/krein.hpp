#pragma once

#include <minuslat/krein_symmetry.hpp>

namespace minuslat {

/// The idempotent onto M along (J M)^perp. It satisfies Q = J Q^* J, which
/// makes it the canonical generator of random J-projections. Throws
/// Degenerate when M and (J M)^perp fail the direct-sum test (M touches its
/// own J-orthogonal companion).
Idempotent j_projection_onto(const Subspace& m, const Symmetry& j,
                             const ToleranceConfig& cfg = {});

/// Given an orthogonal projection P commuting with J, with dim R(P) >= 2 and
/// (I+J)P != 0 and (I-J)P != 0, builds a non-self-adjoint idempotent Q with
/// JQ = Q^*J and q_over(Q) = P: a fixed 2x2 block
///   [ 3/2       i sqrt(3)/2 ]
///   [ i sqrt(3)/2    -1/2   ]
/// on span{x1, x2} (unit vectors in R(P) with Jx1 = x1, Jx2 = -x2, chosen
/// deterministically with canonical phases), identity on the rest of R(P),
/// zero on R(P)^perp. Violated preconditions throw Infeasible naming the
/// failed condition.
Idempotent construct_q_over_preimage(const Idempotent& p, const Symmetry& j,
                                     const ToleranceConfig& cfg = {});

/// Dual construction: Q' = I - construct_q_over_preimage(I - P, J), giving a
/// non-self-adjoint J-projection with q_under(Q') = P. Preconditions mirror
/// onto I - P.
Idempotent construct_q_under_preimage(const Idempotent& p, const Symmetry& j,
                                      const ToleranceConfig& cfg = {});

/// For a non-orthogonal idempotent P with dim R(P)^perp >= 2, constructs Q
/// with P strictly below Q in the minus order but q_over(P) NOT below
/// q_under(Q) — witnessing that the orthogonal envelopes are not monotone
/// beyond orthogonal P or codimension <= 1. Chooses between two block
/// constructions depending on whether the canonical coupling block has
/// trivial kernel. Throws Infeasible when no such Q exists (P orthogonal or
/// codimension < 2).
Idempotent envelope_order_counterexample(const Idempotent& p, const ToleranceConfig& cfg = {});

}  // namespace minuslat
