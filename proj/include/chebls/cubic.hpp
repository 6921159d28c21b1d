#pragma once

/// \file cubic.hpp
/// Monomial form of the derivative of a quartic Chebyshev interpolant,
/// A1 x^3 + A2 x^2 + A3 x + A4, with Viete's trigonometric root formulas.

#include "chebls/chebyshev.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chebls {

struct CubicTolerances {
    double eps_c = 1e-15;        ///< |A1| below this is not a cubic
    double sep = 1e-10;          ///< minimal gap between distinct roots
    double unit_slack = 1e-12;   ///< roots with |x| <= 1 + slack count as inside
    double acos_clamp = 1e-12;   ///< Viete argument overshoot that is clamped
    /// |arg| this close to 1 is read as a repeated root; rounding alone
    /// splits a double root by about sqrt(eps), far above sep.
    double boundary_snap = 16 * std::numeric_limits<double>::epsilon();
};

enum class RootKind {
    unset,
    three_real,     ///< three real roots (possibly repeated)
    complex_pair,   ///< one real root, two complex conjugates
};

struct CubicDerivative {
    /// A[0..3] = A1..A4.
    std::array<double, 4> A{};
    bool scaled = false;
    RootKind kind = RootKind::unset;
    /// Descending by real part; for three_real, roots[0] >= roots[1] >= roots[2].
    std::array<std::complex<double>, 3> roots{};
    double p = 0.0;
    double q = 0.0;

    [[nodiscard]] double operator()(double x) const {
        return ((A[0] * x + A[1]) * x + A[2]) * x + A[3];
    }
    [[nodiscard]] double slope(double x) const {
        return (3.0 * A[0] * x + 2.0 * A[1]) * x + A[2];
    }
    [[nodiscard]] double real_root(std::size_t i) const { return roots[i].real(); }
};

enum class RootClass {
    all_real_distinct_in_unit,
    fallback,
};

[[nodiscard]] inline CubicDerivative assemble_cubic(const ChebSeries& deriv) {
    if (deriv.coeffs.size() != 5) {
        throw std::invalid_argument("assemble_cubic: expected 5 derivative coefficients, got " +
                                    std::to_string(deriv.coeffs.size()));
    }
    const auto& g = deriv.coeffs;
    CubicDerivative c;
    c.A = {4.0 * g[3], 2.0 * g[2], g[1] - 3.0 * g[3], g[0] - g[2]};
    return c;
}

/// Divides through by the largest |A_j| when it exceeds one.
[[nodiscard]] inline CubicDerivative scale_coeffs(CubicDerivative c) {
    double amax = 0.0;
    for (double a : c.A) {
        amax = std::max(amax, std::abs(a));
    }
    if (amax > 1.0) {
        for (double& a : c.A) {
            a /= amax;
        }
        c.scaled = true;
    }
    return c;
}

namespace detail {

inline double viete_branch(double p, double arg) {
    return 2.0 * std::sqrt(-p / 3.0) * std::cos(std::acos(arg) / 3.0);
}

}  // namespace detail

/// Roots of the cubic branch. Throws when |A1| < eps_c; callers take the
/// linear/quadratic path then.
[[nodiscard]] inline CubicDerivative viete_roots(CubicDerivative c, const CubicTolerances& tol = {}) {
    const double a1 = c.A[0];
    if (!(std::abs(a1) >= tol.eps_c)) {
        throw std::domain_error("viete_roots: leading coefficient below eps_c, not a cubic");
    }
    const double r2 = c.A[1] / a1;
    const double r3 = c.A[2] / a1;
    const double r4 = c.A[3] / a1;
    c.p = r3 - r2 * r2 / 3.0;
    c.q = 2.0 / 27.0 * r2 * r2 * r2 - c.A[1] * c.A[2] / (3.0 * a1 * a1) + r4;
    const double shift = -r2 / 3.0;
    const double p = c.p;
    const double q = c.q;

    bool trig = false;
    double arg = 0.0;
    if (p < 0.0) {
        arg = 3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p);
        if (std::abs(arg) <= 1.0 + tol.acos_clamp) {
            arg = std::clamp(arg, -1.0, 1.0);
            if (std::abs(arg) >= 1.0 - tol.boundary_snap) {
                arg = std::copysign(1.0, arg);
            }
            trig = true;
        }
    }
    if (trig) {
        const double t1 = detail::viete_branch(p, arg);
        const double t3 = -detail::viete_branch(p, -arg);
        const double t2 = -t1 - t3;
        std::array<double, 3> x{t1 + shift, t2 + shift, t3 + shift};
        std::sort(x.begin(), x.end(), std::greater<>());
        c.kind = RootKind::three_real;
        for (std::size_t i = 0; i < 3; ++i) {
            c.roots[i] = {x[i], 0.0};
        }
        return c;
    }
    if (p == 0.0 && q == 0.0) {
        c.kind = RootKind::three_real;
        c.roots.fill({shift, 0.0});
        return c;
    }
    // Cardano for the one-real-root configuration.
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    const double sd = std::sqrt(std::max(disc, 0.0));
    const double u = std::cbrt(-q / 2.0 + sd);
    const double v = std::cbrt(-q / 2.0 - sd);
    const double t = u + v;
    const std::complex<double> pair(-t / 2.0 + shift, std::sqrt(3.0) / 2.0 * (u - v));
    c.kind = RootKind::complex_pair;
    std::array<std::complex<double>, 3> r{std::complex<double>(t + shift, 0.0), pair, std::conj(pair)};
    std::sort(r.begin(), r.end(), [](const auto& lhs, const auto& rhs) {
        return lhs.real() > rhs.real() || (lhs.real() == rhs.real() && lhs.imag() > rhs.imag());
    });
    c.roots = r;
    return c;
}

[[nodiscard]] inline RootClass classify_roots(const CubicDerivative& c, const CubicTolerances& tol = {}) {
    if (c.kind != RootKind::three_real) {
        return RootClass::fallback;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(c.real_root(i)) > 1.0 + tol.unit_slack) {
            return RootClass::fallback;
        }
    }
    if (c.real_root(0) - c.real_root(1) <= tol.sep || c.real_root(1) - c.real_root(2) <= tol.sep) {
        return RootClass::fallback;
    }
    return RootClass::all_real_distinct_in_unit;
}

inline constexpr double near_multiple_root_tol = 1e-14;

/// Relative condition number of simple real root i with respect to the
/// coefficient A[j] (A[0] multiplies x^3): |A[j] x^(2-j) / p'(x)| where p' is
/// the derivative of the cubic.
[[nodiscard]] inline double condition_number(const CubicDerivative& c, std::size_t i, std::size_t j) {
    if (i > 2 || j > 3) {
        throw std::out_of_range("condition_number: root index must be < 3, coefficient index < 4");
    }
    if (c.kind != RootKind::three_real && c.roots[i].imag() != 0.0) {
        throw std::domain_error("condition_number: root is not real");
    }
    const double x = c.real_root(i);
    const double slope = c.slope(x);
    if (std::abs(slope) < near_multiple_root_tol) {
        throw std::domain_error("condition_number: near-multiple root, condition number unbounded");
    }
    if (c.A[j] == 0.0) {
        return 0.0;
    }
    const int power = 2 - static_cast<int>(j);
    return std::abs(c.A[j] * std::pow(x, power) / slope);
}

/// Upper bound kappa_(i,j) <= 1 / |p'(x_i)| for the x^3, x^2 and x
/// coefficients, valid once |A_j| <= 1 and |x_i| <= 1.
[[nodiscard]] inline double condition_bound(const CubicDerivative& c, std::size_t i) {
    const double slope = c.slope(c.real_root(i));
    if (std::abs(slope) < near_multiple_root_tol) {
        throw std::domain_error("condition_bound: near-multiple root");
    }
    return 1.0 / std::abs(slope);
}

}  // namespace chebls
