#pragma once

/// \file chebyshev.hpp
/// Chebyshev polynomials of the first kind on [-1, 1]: Gauss-Lobatto grids,
/// evaluation, monomial coefficients, arbitrary-order derivatives and the
/// discrete Chebyshev transform.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace chebls {

/// Accumulator used wherever monomial sums of Chebyshev coefficients are
/// formed. The coefficients of T_k grow like 2^(k-1) with alternating signs,
/// so double accumulation loses everything for k beyond ~30.
using extended_real = boost::multiprecision::cpp_bin_float_50;

/// |x| below this is treated as the origin when choosing the closed-form
/// derivative branch.
inline constexpr double zero_branch_tol = 1e-14;

/// Largest polynomial degree whose monomial coefficients are cached.
inline constexpr int coeff_cache_cap = 64;

/// Chebyshev-Gauss-Lobatto nodes x_k = cos(k pi / n), stored descending.
struct ChebGrid {
    int order = 0;
    std::vector<double> nodes;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return nodes[k]; }

    /// T_k(x_j) through the periodic index map: cos(jk pi/n) equals
    /// (-1)^floor(jk/n) x_(jk mod n), so no cosine is re-evaluated.
    [[nodiscard]] double cheb_at_node(int k, int j) const {
        const long long jk = static_cast<long long>(j) * k;
        const long long q = jk / order;
        const auto r = static_cast<std::size_t>(jk - q * order);
        return (q % 2 == 0) ? nodes[r] : -nodes[r];
    }
};

[[nodiscard]] inline ChebGrid cgl_nodes(int n) {
    if (n < 1) {
        throw std::invalid_argument("cgl_nodes: order must be >= 1, got " + std::to_string(n));
    }
    ChebGrid grid;
    grid.order = n;
    grid.nodes.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; 2 * k <= n; ++k) {
        const double v = std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n));
        grid.nodes[k] = v;
        grid.nodes[n - k] = -v;
    }
    grid.nodes[0] = 1.0;
    grid.nodes[n] = -1.0;
    if (n % 2 == 0) {
        grid.nodes[n / 2] = 0.0;
    }
    return grid;
}

/// theta_j = 1/2 at the two endpoints of an order-n grid, 1 elsewhere.
struct ThetaWeights {
    int order = 0;
    std::vector<double> values;

    [[nodiscard]] double operator[](std::size_t j) const { return values[j]; }
};

[[nodiscard]] inline ThetaWeights theta_weights(int n) {
    if (n < 1) {
        throw std::invalid_argument("theta_weights: order must be >= 1");
    }
    ThetaWeights w{n, std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0)};
    w.values.front() = 0.5;
    w.values.back() = 0.5;
    return w;
}

namespace detail {

inline void check_unit_interval(double x, const char* who) {
    if (!(std::abs(x) <= 1.0)) {
        throw std::domain_error(std::string(who) + ": argument " + std::to_string(x) +
                                " outside [-1, 1]");
    }
}

/// c_l^(k), l = 0..floor(k/2): coefficient of x^(k-2l) in T_k, built by the
/// descending recursion starting from the leading 2^(k-1).
template <class Real>
std::vector<Real> cheb_monomial_coeffs(int k) {
    std::vector<Real> c(static_cast<std::size_t>(k / 2) + 1);
    c[0] = (k == 0) ? Real(1) : Real(std::ldexp(1.0, k - 1));
    for (int l = 1; l <= k / 2; ++l) {
        const Real num = Real((k - 2 * l + 1) * (k - 2 * l + 2));
        const Real den = Real(4 * l * (k - l));
        c[l] = -(num / den) * c[l - 1];
    }
    return c;
}

/// Read-only table of c_l^(k) for k <= coeff_cache_cap, built once.
inline const std::vector<std::vector<extended_real>>& coeff_table() {
    static const std::vector<std::vector<extended_real>> table = [] {
        std::vector<std::vector<extended_real>> t;
        t.reserve(coeff_cache_cap + 1);
        for (int k = 0; k <= coeff_cache_cap; ++k) {
            t.push_back(cheb_monomial_coeffs<extended_real>(k));
        }
        return t;
    }();
    return table;
}

template <class Real>
Real falling_factorial(int top, int count) {
    Real r = 1;
    for (int i = 0; i < count; ++i) {
        r *= Real(top - i);
    }
    return r;
}

/// Pochhammer symbol (x)_n = x (x+1) ... (x+n-1).
template <class Real>
Real pochhammer(Real x, int n) {
    Real r = 1;
    for (int i = 0; i < n; ++i) {
        r *= x + Real(i);
    }
    return r;
}

/// beta_k^(m) multiplying the cosine in the x = 0 branch.
template <class Real>
Real beta_coeff(int k, int m) {
    if (m == 0) {
        return Real(1);
    }
    const int odd = m % 2;          // delta_{(m+1)/2, floor((m+1)/2)}
    const int even = 1 - odd;       // delta_{m/2, floor(m/2)}
    const int h = (m - 1) / 2;
    const int sign_exp = odd + (m + 1) / 2;
    Real r = (sign_exp % 2 == 0) ? Real(1) : Real(-1);
    for (int i = 0; i < h; ++i) {
        r *= Real(-4);
    }
    for (int i = 0; i < even + 1; ++i) {
        r *= Real(k);
    }
    r *= pochhammer<Real>(Real(-k - odd + 2) / 2, h);
    r *= pochhammer<Real>(Real(k - odd + 2) / 2, h);
    return r;
}

/// The four-case derivative formula with all arithmetic in Real.
template <class Real>
Real cheb_derivative(int k, int m, Real x) {
    if (k < m) {
        return Real(0);
    }
    if (k == m) {
        if (k == 0) {
            return Real(1);
        }
        return Real(std::ldexp(1.0, k - 1)) * falling_factorial<Real>(m, m);
    }
    using std::abs;
    if (abs(x) < Real(zero_branch_tol)) {
        // cos(pi/2 (k - delta)) is 0 or +-1 depending on the parity of k - delta.
        const int shifted = k - (m % 2);
        if (shifted % 2 != 0) {
            return Real(0);
        }
        const Real c = ((shifted / 2) % 2 == 0) ? Real(1) : Real(-1);
        return beta_coeff<Real>(k, m) * c;
    }
    std::vector<Real> local;
    const std::vector<Real>* coeffs = nullptr;
    if constexpr (std::is_same_v<Real, extended_real>) {
        if (k <= coeff_cache_cap) {
            coeffs = &coeff_table()[k];
        }
    }
    if (coeffs == nullptr) {
        local = cheb_monomial_coeffs<Real>(k);
        coeffs = &local;
    }
    // Terms with exponent k-2l < m vanish (gamma = 0). Horner in x^2 over the
    // surviving l, then one trailing power for the lowest exponent.
    const int l_last = (k - m) / 2;
    const Real x2 = x * x;
    Real acc = 0;
    for (int l = 0; l <= l_last; ++l) {
        acc = acc * x2 + falling_factorial<Real>(k - 2 * l, m) * (*coeffs)[l];
    }
    // After the loop acc = sum_l g_l c_l x^(2(l_last - l)); the smallest
    // exponent k - 2 l_last - m is 0 or 1.
    const int lowest = k - 2 * l_last - m;
    Real lowest_pow = 1;
    for (int i = 0; i < lowest; ++i) {
        lowest_pow *= x;
    }
    return acc * lowest_pow;
}

}  // namespace detail

/// T_k(x) via the three-term recurrence.
[[nodiscard]] inline double cheb_eval(int k, double x) {
    detail::check_unit_interval(x, "cheb_eval");
    if (k < 0) {
        throw std::invalid_argument("cheb_eval: negative degree");
    }
    if (k == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = x;
    for (int i = 1; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Monomial coefficients c_0^(k) .. c_floor(k/2)^(k) of T_k (x^k, x^(k-2), ...).
[[nodiscard]] inline std::vector<double> cheb_coeff_c(int k) {
    if (k < 0) {
        throw std::invalid_argument("cheb_coeff_c: negative degree");
    }
    if (k <= coeff_cache_cap) {
        const auto& row = detail::coeff_table()[k];
        std::vector<double> out;
        out.reserve(row.size());
        for (const auto& v : row) {
            out.push_back(static_cast<double>(v));
        }
        return out;
    }
    return detail::cheb_monomial_coeffs<double>(k);
}

/// m-th derivative of T_k at x.
[[nodiscard]] inline double cheb_derivative_eval(int k, int m, double x) {
    detail::check_unit_interval(x, "cheb_derivative_eval");
    if (k < 0 || m < 0) {
        throw std::invalid_argument("cheb_derivative_eval: negative degree or order");
    }
    return static_cast<double>(detail::cheb_derivative<extended_real>(k, m, extended_real(x)));
}

/// Truncated Chebyshev series sum_k coeffs[k] T_k(x) on the reference
/// interval, remembering the physical interval [a, b] it was sampled on.
struct ChebSeries {
    std::vector<double> coeffs;
    double a = -1.0;
    double b = 1.0;

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// General-N transform: coefficients theta_k a_k with
/// a_k = (2/N) sum_j theta_j f_j T_k(x_j).
[[nodiscard]] inline ChebSeries discrete_transform_general(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("discrete_transform: need at least 2 samples, got " +
                                    std::to_string(samples.size()));
    }
    const int n = static_cast<int>(samples.size()) - 1;
    const ChebGrid grid = cgl_nodes(n);
    const ThetaWeights theta = theta_weights(n);
    ChebSeries out;
    out.coeffs.assign(samples.size(), 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) {
            s += theta[j] * samples[j] * grid.cheb_at_node(k, j);
        }
        out.coeffs[k] = theta[k] * 2.0 / n * s;
    }
    return out;
}

/// Five-point transform with the c_k weights (c_0 = c_4 = 2, else 1).
[[nodiscard]] inline ChebSeries discrete_transform_quartic(std::span<const double> samples) {
    if (samples.size() != 5) {
        throw std::invalid_argument("discrete_transform_quartic: expected 5 samples, got " +
                                    std::to_string(samples.size()));
    }
    static const ChebGrid grid = cgl_nodes(4);
    constexpr double c[5] = {2.0, 1.0, 1.0, 1.0, 2.0};
    ChebSeries out;
    out.coeffs.assign(5, 0.0);
    for (int k = 0; k <= 4; ++k) {
        double s = 0.5 * (samples[0] + ((k % 2 == 0) ? samples[4] : -samples[4]));
        for (int j = 1; j <= 3; ++j) {
            s += grid.cheb_at_node(k, j) * samples[j] / c[j];
        }
        out.coeffs[k] = s / (2.0 * c[k]);
    }
    return out;
}

/// Samples must be ordered by descending node (x_0 = 1 first).
[[nodiscard]] inline ChebSeries discrete_transform(std::span<const double> samples) {
    return samples.size() == 5 ? discrete_transform_quartic(samples)
                               : discrete_transform_general(samples);
}

/// Chebyshev coefficients of the derivative of a degree-4 series.
[[nodiscard]] inline ChebSeries derivative_coeffs(const ChebSeries& series) {
    if (series.coeffs.size() != 5) {
        throw std::invalid_argument("derivative_coeffs: expected 5 coefficients, got " +
                                    std::to_string(series.coeffs.size()));
    }
    const auto& f = series.coeffs;
    ChebSeries d{std::vector<double>(5, 0.0), series.a, series.b};
    auto& g = d.coeffs;
    g[4] = 0.0;
    g[3] = 8.0 * f[4];
    g[2] = 6.0 * f[3] + g[4];
    g[1] = 4.0 * f[2] + g[3];
    g[0] = f[1] + 0.5 * g[2];
    return d;
}

/// Clenshaw summation of the series at x in [-1, 1].
[[nodiscard]] inline double series_eval(const ChebSeries& series, double x) {
    detail::check_unit_interval(x, "series_eval");
    const auto& c = series.coeffs;
    if (c.empty()) {
        return 0.0;
    }
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        const double b0 = c[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

}  // namespace chebls
