#pragma once

#include "miop/casoratian.hpp"

#include <vector>

namespace miop {

// Tridiagonal operator on the grid lo..hi. Row x holds lower (coefficient of
// x-1), diag and upper (coefficient of x+1). The couplings that leave the grid
// (lower at lo, upper at hi) are kept so boundary conditions can be checked.
struct Tridiagonal {
    long lo = 0, hi = -1;
    std::vector<Scalar> lower, diag, upper;

    std::size_t size() const { return diag.size(); }
    Scalar outer_lower() const { return lower.empty() ? Scalar(0) : lower.front(); }
    Scalar outer_upper() const { return upper.empty() ? Scalar(0) : upper.back(); }

    // Matrix-vector product on the grid, ignoring the outer couplings.
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        std::vector<Scalar> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            Scalar s = diag[i] * v[i];
            if (i > 0) s += lower[i] * v[i - 1];
            if (i + 1 < v.size()) s += upper[i] * v[i + 1];
            out[i] = s;
        }
        return out;
    }

    Matrix dense() const {
        std::size_t n = size();
        Matrix m(n, std::vector<Scalar>(n));
        for (std::size_t i = 0; i < n; ++i) {
            m[i][i] = diag[i];
            if (i > 0) m[i][i - 1] = lower[i];
            if (i + 1 < n) m[i][i + 1] = upper[i];
        }
        return m;
    }
};

}  // namespace miop
