#pragma once

#include <minuslat/subspace.hpp>

namespace minuslat {

/// A validated idempotent Q (Q^2 = Q) with cached range and kernel.
/// is_orthogonal() reports whether Q is additionally self-adjoint, i.e. an
/// orthogonal projection. Immutable after validation.
class Idempotent {
public:
    /// Checks ||M^2 - M||_F <= idem_tol * (1 + ||M||_F^2), caches
    /// column/null space and verifies they are complementary.
    /// Throws NotIdempotent (with the residual) otherwise.
    static Idempotent validate(const ComplexMatrix& m, const ToleranceConfig& cfg = {});

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Subspace& range() const noexcept { return range_; }
    const Subspace& kernel() const noexcept { return kernel_; }
    bool is_orthogonal() const noexcept { return orthogonal_; }
    Index dim() const noexcept { return matrix_.rows(); }

    Idempotent adjoint(const ToleranceConfig& cfg = {}) const;
    Idempotent one_minus(const ToleranceConfig& cfg = {}) const;  // I - Q

private:
    Idempotent(ComplexMatrix m, Subspace range, Subspace kernel, bool orthogonal)
        : matrix_(std::move(m)), range_(std::move(range)), kernel_(std::move(kernel)),
          orthogonal_(orthogonal) {}

    ComplexMatrix matrix_;
    Subspace range_;
    Subspace kernel_;
    bool orthogonal_;
};

/// Three-block splitting of an idempotent Q along
///   core = R(Q) cap R(Q^*),  range_rest = R(Q) (-) core,  range_perp = R(Q)^perp.
/// In an orthonormal basis adapted to these blocks Q reads
///   [ I 0 0 ; 0 I C ; 0 0 0 ]
/// where C = coupling maps range_perp into range_rest and has full row rank
/// (its adjoint has trivial kernel). Orthogonal projections have
/// range_rest empty and a vacuous coupling block.
struct CanonicalForm {
    Subspace core;
    Subspace range_rest;
    Subspace range_perp;
    ComplexMatrix coupling;  // dim(range_rest) x dim(range_perp)

    /// Rebuilds the operator from the blocks (used by validation and tests).
    ComplexMatrix reassemble() const;
};

CanonicalForm canonical_form(const Idempotent& q, const ToleranceConfig& cfg = {});

/// (A^* A)^{1/2} via Hermitian eigendecomposition; negative round-off
/// eigenvalues are clamped to zero so the result is exactly PSD.
ComplexMatrix abs_value(const ComplexMatrix& a);

/// Hermitian PSD square root of a PSD Hermitian matrix (round-off clamped).
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// Inverse square root of a Hermitian matrix bounded below by I.
ComplexMatrix inv_sqrt_ge_identity(const ComplexMatrix& a);

/// The bordered Gram matrix [ I A ; A^* A^*A ] of an h x k block A.
ComplexMatrix bordered_gram(const ComplexMatrix& a);

/// Closed-form PSD square root of bordered_gram(A):
///   [ (I+AA^*)^{-1/2}         (I+AA^*)^{-1/2} A        ]
///   [ A^* (I+AA^*)^{-1/2}     (I+A^*A)^{-1/2} A^* A    ]
/// Result is Hermitian PSD and squares to bordered_gram(A).
ComplexMatrix block_sqrt(const ComplexMatrix& a);

/// Q_or: the maximum orthogonal projection below Q in the minus order,
/// the orthogonal projection onto R(Q) cap R(Q^*).
Idempotent q_under(const Idempotent& q, const ToleranceConfig& cfg = {});

/// Q_or through the two spectral routes P_{N(I - |Q|)} and
/// P_{N(2I - Q - Q^*)}. Both must agree with q_under within idem_tol;
/// disagreement throws FormulaMismatch (a numerics bug, not an input error).
Idempotent q_under_via_abs(const Idempotent& q, const ToleranceConfig& cfg = {});

/// Q^or: the minimum orthogonal projection above Q, the orthogonal
/// projection onto N(Q + Q^*)^perp. Cross-checked against I - q_under(I - Q);
/// disagreement throws FormulaMismatch.
Idempotent q_over(const Idempotent& q, const ToleranceConfig& cfg = {});

}  // namespace minuslat
