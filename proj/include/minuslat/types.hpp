#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace minuslat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Failure categories surfaced by the library. Every throw site attaches
/// one of these so callers (and the CLI exit-code mapping) can branch
/// without string matching.
enum class Errc {
    InvalidMatrix,
    DimensionMismatch,
    NotComplementary,
    IllConditioned,
    NotIdempotent,
    FormulaMismatch,
    NotSymmetry,
    NotCommuting,
    Infeasible,
    Degenerate,
    NotComparable,
    BadSignature,
    RetriesExhausted,
    ChainTooLong,
    ParseError,
    UnknownSuite,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Numerical knobs. The three tolerances are independent:
///  - rank_rel_tol: relative singular-value cutoff for rank decisions,
///    sigma_i > rank_rel_tol * sigma_max * max(rows, cols);
///  - idem_tol: operator-residual tolerance (idempotency, order products,
///    self-adjointness, cross-formula agreement), always scaled by the
///    operand norms;
///  - subspace_eq_tol: subspace comparisons through projections,
///    ||P_A - P_B||_F and inclusion residuals.
struct ToleranceConfig {
    double rank_rel_tol = 1e-10;
    double idem_tol = 1e-8;
    double subspace_eq_tol = 1e-8;
};

inline double fnorm(const ComplexMatrix& m) { return m.norm(); }

bool all_finite(const ComplexMatrix& m) noexcept;

/// Throws InvalidMatrix unless every entry of m is finite.
void require_finite(const ComplexMatrix& m, const std::string& what);

/// Throws DimensionMismatch unless a and b are both n x n for the same n.
void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace minuslat
