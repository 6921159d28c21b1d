#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. Everything here is evaluated in 50 significant digits.

#include "chebls/diff_matrix.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

// Monomial coefficients (ascending powers) of T_k from T_{k+1} = 2x T_k - T_{k-1}.
inline std::vector<big> recurrence_monomials(int k) {
    std::vector<big> prev{big(1)};
    if (k == 0) {
        return prev;
    }
    std::vector<big> cur{big(0), big(1)};
    for (int i = 1; i < k; ++i) {
        std::vector<big> next(cur.size() + 1, big(0));
        for (std::size_t p = 0; p < cur.size(); ++p) {
            next[p + 1] += 2 * cur[p];
        }
        for (std::size_t p = 0; p < prev.size(); ++p) {
            next[p] -= prev[p];
        }
        prev = cur;
        cur = next;
    }
    return cur;
}

inline big poly_derivative_at(std::vector<big> c, int m, const big& x) {
    for (int r = 0; r < m; ++r) {
        if (c.size() <= 1) {
            return big(0);
        }
        std::vector<big> d(c.size() - 1);
        for (std::size_t p = 1; p < c.size(); ++p) {
            d[p - 1] = c[p] * static_cast<int>(p);
        }
        c = d;
    }
    big acc = 0;
    for (std::size_t p = c.size(); p-- > 0;) {
        acc = acc * x + c[p];
    }
    return acc;
}

// Classical first-derivative collocation matrix in 50 digits:
// D_ij = (c_i/c_j) (-1)^(i+j) / (x_i - x_j), corners +-(2n^2+1)/6,
// interior diagonal -x_i / (2(1 - x_i^2)).
inline std::vector<std::vector<double>> lagrange_first_derivative(int n) {
    const big pi = boost::math::constants::pi<big>();
    std::vector<big> x(n + 1);
    for (int k = 0; k <= n; ++k) {
        x[k] = cos(pi * k / n);
    }
    std::vector<std::vector<double>> d(n + 1, std::vector<double>(n + 1));
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const big ci = (i == 0 || i == n) ? 2 : 1;
            const big cj = (j == 0 || j == n) ? 2 : 1;
            big v;
            if (i != j) {
                v = ci / cj * (((i + j) % 2) ? -1 : 1) / (x[i] - x[j]);
            } else if (i == 0) {
                v = big(2 * n * n + 1) / 6;
            } else if (i == n) {
                v = -big(2 * n * n + 1) / 6;
            } else {
                v = -x[i] / (2 * (1 - x[i] * x[i]));
            }
            d[i][j] = static_cast<double>(v);
        }
    }
    return d;
}

inline double d01_error(int n, int m) {
    const auto op = chebls::full_diff_matrix(n, m);
    const big pi = boost::math::constants::pi<big>();
    const big x1 = cos(pi / n);
    big exact;
    if (m == 1) {
        exact = -2 / (1 - x1);
    } else {
        // Second derivative of the cardinal function of node 1 at x = 1.
        exact = big(-2) / 3 * ((2 * big(n) * n + 1) * (1 - x1) - 6) / ((1 - x1) * (1 - x1));
    }
    const double err = std::abs(static_cast<double>(big(op(0, 1)) - exact));
    // An exact hit has no logarithm; charge it half an ulp of the true value.
    const double floor = 0.5 * std::abs(static_cast<double>(exact)) * std::numeric_limits<double>::epsilon();
    return std::max(err, floor);
}

inline double loglog_slope(int m) {
    const int ns[] = {4, 8, 16, 32, 64};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n : ns) {
        const double lx = std::log(static_cast<double>(n));
        const double ly = std::log(d01_error(n, m));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = 5.0;
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace oracle
