#pragma once

#include <cstdint>
#include <vector>

namespace minuslat::testing {

/// Gaussian integer for exact elimination. __int128 components keep the
/// Bareiss minors exact for the small test matrices used here.
struct GaussInt {
    __int128 re = 0;
    __int128 im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
};

/// Exact division, valid only when the quotient is a Gaussian integer
/// (guaranteed inside Bareiss elimination).
inline GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
    const __int128 denom = b.re * b.re + b.im * b.im;
    const __int128 re = a.re * b.re + a.im * b.im;
    const __int128 im = a.im * b.re - a.re * b.im;
    return {re / denom, im / denom};
}

/// Exact rank over Q(i) by fraction-free (Bareiss) elimination with full
/// pivoting. Entries must be Gaussian integers.
inline int exact_rank(std::vector<std::vector<GaussInt>> a) {
    if (a.empty() || a[0].empty()) return 0;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    GaussInt prev_pivot{1, 0};
    int rank = 0;

    for (int step = 0; step < rows && step < cols; ++step) {
        int pr = -1, pc = -1;
        for (int i = step; i < rows && pr < 0; ++i)
            for (int j = step; j < cols; ++j)
                if (!a[i][j].is_zero()) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        std::swap(a[step], a[pr]);
        for (int i = 0; i < rows; ++i) std::swap(a[i][step], a[i][pc]);

        for (int i = step + 1; i < rows; ++i) {
            for (int j = step + 1; j < cols; ++j)
                a[i][j] = exact_div(a[step][step] * a[i][j] - a[i][step] * a[step][j],
                                    prev_pivot);
            a[i][step] = GaussInt{};
        }
        prev_pivot = a[step][step];
        ++rank;
    }
    return rank;
}

}  // namespace minuslat::testing
