#pragma once

#include <initializer_list>
#include <vector>

#include <minuslat/idempotent.hpp>

namespace minuslat::testing {

inline Complex cx(double re, double im = 0.0) { return Complex(re, im); }

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    const Index r = static_cast<Index>(rows.size());
    const Index c = static_cast<Index>(rows.begin()->size());
    ComplexMatrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (const Complex& z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

inline Eigen::VectorXcd vec(std::initializer_list<Complex> entries) {
    Eigen::VectorXcd v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (const Complex& z : entries) v(i++) = z;
    return v;
}

/// Subspace spanned by the given (not necessarily orthonormal) columns.
inline Subspace span(std::initializer_list<std::initializer_list<Complex>> cols, Index n) {
    ComplexMatrix m(n, static_cast<Index>(cols.size()));
    Index j = 0;
    for (const auto& col : cols) {
        Index i = 0;
        for (const Complex& z : col) m(i++, j) = z;
        ++j;
    }
    return column_space(m);
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

/// Independent oblique-projector oracle: E = U (W^* U)^{-1} W^* where W is
/// an orthonormal basis of kernel^perp. Algebraically distinct from the
/// library's [U V] diag(I, 0) [U V]^{-1} route.
inline ComplexMatrix oblique_projector_oracle(const Subspace& range, const Subspace& kernel) {
    const Index n = range.ambient_dim();
    if (range.dim() == 0) return ComplexMatrix::Zero(n, n);
    if (kernel.dim() == 0) return ComplexMatrix::Identity(n, n);
    ComplexMatrix w = complement(kernel).basis();
    ComplexMatrix gram = w.adjoint() * range.basis();  // r x r
    return range.basis() * gram.inverse() * w.adjoint();
}

}  // namespace minuslat::testing
