#include <minuslat/types.hpp>

#include <cmath>

namespace minuslat {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidMatrix: return "InvalidMatrix";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotComplementary: return "NotComplementary";
        case Errc::IllConditioned: return "IllConditioned";
        case Errc::NotIdempotent: return "NotIdempotent";
        case Errc::FormulaMismatch: return "FormulaMismatch";
        case Errc::NotSymmetry: return "NotSymmetry";
        case Errc::NotCommuting: return "NotCommuting";
        case Errc::Infeasible: return "Infeasible";
        case Errc::Degenerate: return "Degenerate";
        case Errc::NotComparable: return "NotComparable";
        case Errc::BadSignature: return "BadSignature";
        case Errc::RetriesExhausted: return "RetriesExhausted";
        case Errc::ChainTooLong: return "ChainTooLong";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownSuite: return "UnknownSuite";
    }
    return "UnknownError";
}

bool all_finite(const ComplexMatrix& m) noexcept {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) {
            const Complex& z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
    if (!all_finite(m)) throw Error(Errc::InvalidMatrix, what + " has non-finite entries");
}

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw Error(Errc::DimensionMismatch,
                    "expected equal square matrices, got " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
}

}  // namespace minuslat
