#pragma once

#include <minuslat/idempotent.hpp>

namespace minuslat {

/// A symmetry J = J^* = J^{-1}, with the eigenspace decomposition
/// C^n = N(I-J) (+) N(I+J) cached. (I+J)/2 and (I-J)/2 are the orthogonal
/// projections onto plus_space and minus_space.
class Symmetry {
public:
    /// Requires ||J - J^*||_F <= 1e-10 and ||J^2 - I||_F <= 1e-10;
    /// throws NotSymmetry with both residuals otherwise.
    static Symmetry validate(const ComplexMatrix& m, const ToleranceConfig& cfg = {});

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Subspace& plus_space() const noexcept { return plus_; }
    const Subspace& minus_space() const noexcept { return minus_; }
    Index dim() const noexcept { return matrix_.rows(); }

private:
    Symmetry(ComplexMatrix m, Subspace plus, Subspace minus)
        : matrix_(std::move(m)), plus_(std::move(plus)), minus_(std::move(minus)) {}

    ComplexMatrix matrix_;
    Subspace plus_;
    Subspace minus_;
};

/// Result of testing Q = J Q^* J (evaluated as JQ = Q^*J, identical since
/// J^2 = I): the residual ||JQ - Q^*J||_F and the verdict at
/// idem_tol * (1 + ||Q||_F).
struct JProjectionCertificate {
    double residual = 0.0;
    bool holds = false;
};

JProjectionCertificate is_j_projection(const Idempotent& q, const Symmetry& j,
                                       const ToleranceConfig& cfg = {});

}  // namespace minuslat
