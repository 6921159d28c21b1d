#pragma once

/// \file line_search.hpp
/// Chebyshev pseudospectral exact line search.
///
/// Each outer iteration samples f at the five CGL points of the current
/// uncertainty interval [a, b], differentiates the quartic interpolant and
/// solves the resulting cubic for candidate minimisers. Refinement runs on
/// the reference variable x in [-1, 1] with derivatives taken from single
/// rows of the m-th order differentiation matrices, so every iterate stays
/// inside the domain of the Chebyshev basis. When the quartic gives no usable
/// candidate the interval is cut by one golden-section step instead.
///
/// Two refinements are provided: Newton (first and second derivatives) and
/// secant (first derivatives only). Flat regions, where both derivative
/// estimates fall below eps_d, are handed to Brent's method.

#include "chebls/chebyshev.hpp"
#include "chebls/cubic.hpp"
#include "chebls/diff_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chebls {

inline constexpr double golden_ratio = 1.618033988749895;
inline constexpr double golden_ratio_sq = 2.618033988749895;
inline constexpr double eps_mach = std::numeric_limits<double>::epsilon();

/// Counting wrapper around a scalar objective. Also remembers the best
/// point it has been evaluated at, which is what a run falls back to when
/// it runs out of iterations.
class Objective1D {
public:
    explicit Objective1D(std::function<double(double)> fn) : fn_(std::move(fn)) {}

    double operator()(double t) {
        const double v = fn_(t);
        ++evaluations_;
        if (!(v >= best_f_)) {
            if (!std::isnan(v)) {
                best_f_ = v;
                best_t_ = t;
            }
        }
        return v;
    }

    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }
    [[nodiscard]] double best_t() const noexcept { return best_t_; }
    [[nodiscard]] double best_f() const noexcept { return best_f_; }

private:
    std::function<double(double)> fn_;
    std::size_t evaluations_ = 0;
    double best_t_ = std::numeric_limits<double>::quiet_NaN();
    double best_f_ = std::numeric_limits<double>::infinity();
};

struct LineSearchConfig {
    int m_grid = 12;          ///< order of the grid behind the row operators
    double f_max = 100.0;     ///< sample vectors above this magnitude are normalised
    double eps_c = 1e-15;     ///< A1/A2 cutoff for the linear and quadratic cases
    double eps_d = 1e-1;      ///< both derivative estimates below this hand over to Brent
    double eps = 1e-10;       ///< tolerance on t
    int k_max = 100;
    int l_sub = 10;           ///< subintervals scanned by the bracket locator
    double brent_tol = 0.0;   ///< 0 means "use eps"
    int brent_cap = 200;
    bool locate_interval = true;
    /// Bracket expansion only towards +infinity; a scan minimum at the left
    /// end is taken as the bracket [t_0, t_1].
    bool rightward_only = false;

    void validate() const {
        if (m_grid < 2) {
            throw std::invalid_argument("LineSearchConfig: m_grid must be >= 2");
        }
        if (k_max < 1) {
            throw std::invalid_argument("LineSearchConfig: k_max must be >= 1");
        }
        if (l_sub < 2) {
            throw std::invalid_argument("LineSearchConfig: l_sub must be >= 2");
        }
        if (!(f_max > 0 && eps_c > 0 && eps_d > 0 && eps > 0 && brent_tol >= 0)) {
            throw std::invalid_argument("LineSearchConfig: tolerances must be positive");
        }
    }
    [[nodiscard]] double brent_tolerance() const noexcept { return brent_tol > 0 ? brent_tol : eps; }
};

enum class SearchStatus { converged, max_iterations, bracket_failed };

enum class StepKind {
    bracket,         ///< interval locator result
    linear_root,     ///< root of a linear interpolant derivative accepted
    golden,          ///< one-step golden-section reduction
    best_root,       ///< cubic root chosen as the starting point
    newton,
    secant,
    brent,
    interval_shrink, ///< interval cut at the second-best root
};

[[nodiscard]] inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::converged: return "converged";
        case SearchStatus::max_iterations: return "max_iterations";
        case SearchStatus::bracket_failed: return "bracket_failed";
    }
    return "unknown";
}

[[nodiscard]] inline const char* to_string(StepKind s) {
    switch (s) {
        case StepKind::bracket: return "bracket";
        case StepKind::linear_root: return "linear_root";
        case StepKind::golden: return "golden";
        case StepKind::best_root: return "best_root";
        case StepKind::newton: return "newton";
        case StepKind::secant: return "secant";
        case StepKind::brent: return "brent";
        case StepKind::interval_shrink: return "interval_shrink";
    }
    return "unknown";
}

struct TraceRecord {
    int iteration = 0;
    double a = 0.0;
    double b = 0.0;
    /// Translated iterate on [-1, 1]; NaN for records that carry none.
    double x_tilde = std::numeric_limits<double>::quiet_NaN();
    StepKind kind = StepKind::golden;
};

struct SearchState {
    double a = 0.0;
    double b = 1.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
    int iterations = 0;          ///< outer + refinement steps
    int bracket_iterations = 0;  ///< locator scans
    SearchStatus status = SearchStatus::max_iterations;
    double t_star = std::numeric_limits<double>::quiet_NaN();
    double f_star = std::numeric_limits<double>::quiet_NaN();
    std::size_t evaluations = 0;
    /// |t~_2 - t~_1| of the final refinement step when it met the stopping test.
    double final_step = std::numeric_limits<double>::quiet_NaN();
    std::size_t trace_cap = 100;
    std::vector<TraceRecord> trace;

    [[nodiscard]] double e_plus() const noexcept { return a + b; }
    [[nodiscard]] double e_minus() const noexcept { return b - a; }
    [[nodiscard]] int total_iterations() const noexcept { return iterations + bracket_iterations; }

    void record(StepKind kind, double x_tilde = std::numeric_limits<double>::quiet_NaN()) {
        if (trace.size() < trace_cap) {
            trace.push_back({iterations, a, b, x_tilde, kind});
        }
    }
};

/// Reference point x in [-1, 1] to physical t in [a, b].
[[nodiscard]] inline double to_physical(double x, double a, double b) noexcept {
    return ((b - a) * x + a + b) / 2.0;
}

[[nodiscard]] inline double to_reference(double t, double a, double b) noexcept {
    return (2.0 * t - a - b) / (b - a);
}

// ---------------------------------------------------------------------------
// Golden section

struct GoldenStep {
    double t_best = 0.0;    ///< candidate minimiser after the second comparison
    double t_second = 0.0;  ///< the point it was compared against
    double a = 0.0;
    double b = 0.0;
    bool converged = false; ///< reduced interval no longer than eps
};

/// Two comparison rounds of golden-section search on [a, b]. Ties go to the
/// else-branch (the left probe is discarded).
[[nodiscard]] inline GoldenStep golden_section_step(Objective1D& f, double a, double b, double eps) {
    if (!(a < b)) {
        throw std::invalid_argument("golden_section_step: need a < b");
    }
    double e = b - a;
    double t1 = a + e / golden_ratio_sq;
    double t2 = a + e / golden_ratio;
    if (f(t1) < f(t2)) {
        b = t2;
        t2 = t1;
        e = b - a;
        t1 = a + e / golden_ratio_sq;
    } else {
        a = t1;
        t1 = t2;
        e = b - a;
        t2 = a + e / golden_ratio;
    }
    GoldenStep out;
    if (f(t1) < f(t2)) {
        out.t_best = t1;
        out.t_second = t2;
        b = t2;
    } else {
        out.t_best = t2;
        out.t_second = t1;
        a = t1;
    }
    out.a = a;
    out.b = b;
    out.converged = (b - a) <= eps;
    return out;
}

// ---------------------------------------------------------------------------
// Brent

struct BrentResult {
    double t = 0.0;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's derivative-free minimiser (golden section with parabolic steps).
[[nodiscard]] inline BrentResult brent_minimize(Objective1D& f, double a, double b, double tol, int cap) {
    if (!(a < b)) {
        throw std::invalid_argument("brent_minimize: need a < b");
    }
    constexpr double cgold = 0.3819660112501051;  // 2 - golden ratio
    const double rel = 2.0 * eps_mach;
    double x = a + cgold * (b - a);
    double w = x;
    double v = x;
    double fx = f(x);
    double fw = fx;
    double fv = fx;
    double d = 0.0;
    double e = 0.0;
    BrentResult out;
    for (int it = 0; it < cap; ++it) {
        const double xm = 0.5 * (a + b);
        const double tol1 = rel * std::abs(x) + tol / 3.0;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
            out.converged = true;
            out.iterations = it;
            break;
        }
        bool golden = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                p = -p;
            }
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = (xm >= x) ? tol1 : -tol1;
                }
                golden = false;
            }
        }
        if (golden) {
            e = (x >= xm) ? a - x : b - x;
            d = cgold * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + ((d >= 0) ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
        out.iterations = it + 1;
    }
    out.t = x;
    out.f = fx;
    return out;
}

// ---------------------------------------------------------------------------
// Bracket locator

struct Bracket {
    double a = 0.0;
    double b = 0.0;
    int iterations = 0;
    bool found = false;
};

/// Scans l_sub + 1 equispaced points and either returns the two neighbours
/// of an interior minimum or pushes the offending end outwards by rho^k,
/// flipping across zero with the -1/t map so a bracket on the wrong side of
/// the origin can still reach the minimiser.
[[nodiscard]] inline Bracket locate_uncertainty_interval(Objective1D& f, double a, double b,
                                                         const LineSearchConfig& cfg) {
    if (!(a < b)) {
        throw std::invalid_argument("locate_uncertainty_interval: need a < b");
    }
    const int l = cfg.l_sub;
    std::vector<double> t(static_cast<std::size_t>(l) + 1);
    double rho_k = 1.0;
    Bracket out;
    for (int k = 1; k <= cfg.k_max; ++k) {
        rho_k *= golden_ratio;
        // Convex combination keeps symmetric intervals symmetric to the last bit.
        for (int i = 0; i <= l; ++i) {
            t[i] = (a * (l - i) + b * i) / l;
        }
        int j = 0;
        double fj = f(t[0]);
        for (int i = 1; i <= l; ++i) {
            const double fi = f(t[i]);
            if (fi < fj) {
                fj = fi;
                j = i;
            }
        }
        out.iterations = k;
        if (j > 0 && j < l) {
            out.a = t[j - 1];
            out.b = t[j + 1];
            out.found = true;
            return out;
        }
        if (j == 0) {
            if (cfg.rightward_only) {
                out.a = t[0];
                out.b = t[1];
                out.found = true;
                return out;
            }
            const double next_b = t[1];
            if (a > 0.0) {
                a /= rho_k;
                if (a < 1.0) {
                    a = -1.0 / a;
                }
            } else if (a < 0.0) {
                a *= rho_k;
            } else {
                // The scaling rules cannot move an endpoint sitting at zero.
                a = -rho_k;
            }
            b = next_b;
        } else {
            const double next_a = t[l - 1];
            if (b > 0.0) {
                b *= rho_k;
            } else if (b < 0.0) {
                b /= rho_k;
                if (b > -1.0) {
                    b = -1.0 / b;
                }
            } else {
                b = rho_k;
            }
            a = next_a;
        }
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
            break;
        }
    }
    out.a = a;
    out.b = b;
    out.found = false;
    return out;
}

// ---------------------------------------------------------------------------
// Refinement on the reference interval

namespace detail {

inline const ChebGrid& cached_grid(int n) {
    // Grids up to order 64 are built once; larger ones on demand.
    static const std::vector<ChebGrid> grids = [] {
        std::vector<ChebGrid> g;
        for (int k = 1; k <= 64; ++k) {
            g.push_back(cgl_nodes(k));
        }
        return g;
    }();
    if (n >= 1 && n <= 64) {
        return grids[n - 1];
    }
    thread_local ChebGrid scratch;
    scratch = cgl_nodes(n);
    return scratch;
}

/// f at the CGL nodes of [a, b], divided by the largest magnitude when that
/// exceeds f_max. `scale` is the divisor (1 when untouched).
struct Samples {
    std::vector<double> values;
    double scale = 1.0;
};

inline Samples sample_interval(Objective1D& f, int n, double a, double b, double f_max) {
    const ChebGrid& grid = cached_grid(n);
    Samples s;
    s.values.resize(grid.size());
    double vmax = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        s.values[j] = f(to_physical(grid[j], a, b));
        vmax = std::max(vmax, std::abs(s.values[j]));
    }
    if (vmax > f_max) {
        for (double& x : s.values) {
            x /= vmax;
        }
        s.scale = vmax;
    }
    return s;
}

inline double derivative_at(const Samples& samples, int order, double x) {
    const int n = static_cast<int>(samples.values.size()) - 1;
    return apply_row(row_diff_matrix(n, order, x), samples.values);
}

enum class RefineOutcome {
    converged,     ///< stopping test met or Brent finished; result in state
    left_domain,   ///< next iterate outside [-1, 1]
    not_descent,   ///< curvature estimate no longer positive
    exhausted,     ///< iteration budget spent
};

inline void finish(SearchState& st, Objective1D& f, double t) {
    st.t_star = t;
    st.f_star = f(t);
    st.status = SearchStatus::converged;
}

inline RefineOutcome run_brent(Objective1D& f, SearchState& st, const LineSearchConfig& cfg,
                               double lo, double hi) {
    if (!(lo < hi)) {
        // Degenerate half-interval: the pivot itself is the answer.
        finish(st, f, lo);
        st.record(StepKind::brent, to_reference(lo, st.a, st.b));
        return RefineOutcome::converged;
    }
    const BrentResult br = brent_minimize(f, lo, hi, cfg.brent_tolerance(), cfg.brent_cap);
    st.t_star = br.t;
    st.f_star = br.f;
    st.status = br.converged ? SearchStatus::converged : SearchStatus::max_iterations;
    st.record(StepKind::brent, to_reference(br.t, st.a, st.b));
    return RefineOutcome::converged;
}

/// Newton iteration x2 = x1 - F'/F'' on the interpolant of `samples`,
/// starting from st.x1 with derivative estimates d1, d2 already taken there.
inline RefineOutcome newton_refine(Objective1D& f, SearchState& st, const LineSearchConfig& cfg,
                                   const Samples& samples, double d1, double d2) {
    const double eps_x = 2.0 * cfg.eps / st.e_minus();
    while (st.iterations <= cfg.k_max) {
        st.x2 = st.x1 - d1 / d2;
        ++st.iterations;
        if (std::abs(st.x2 - st.x1) <= eps_x) {
            st.final_step = std::abs(to_physical(st.x2, st.a, st.b) - to_physical(st.x1, st.a, st.b));
            st.record(StepKind::newton, st.x2);
            finish(st, f, to_physical(st.x2, st.a, st.b));
            return RefineOutcome::converged;
        }
        if (!(std::abs(st.x2) <= 1.0)) {
            return RefineOutcome::left_domain;
        }
        // The flatness test sees the derivatives of f itself, not of the
        // normalised samples.
        if (std::abs(d1) * samples.scale < cfg.eps_d && std::abs(d2) * samples.scale < cfg.eps_d) {
            const double pivot = to_physical(st.x1, st.a, st.b);
            return st.x2 > st.x1 ? run_brent(f, st, cfg, pivot, st.b) : run_brent(f, st, cfg, st.a, pivot);
        }
        st.record(StepKind::newton, st.x2);
        d1 = derivative_at(samples, 1, st.x2);
        d2 = derivative_at(samples, 2, st.x2);
        st.x1 = st.x2;
        if (!(d2 > eps_mach)) {
            return RefineOutcome::not_descent;
        }
    }
    return RefineOutcome::exhausted;
}

/// Secant iteration on first-derivative estimates g1 at st.x1 and g2 at st.x2.
inline RefineOutcome secant_refine(Objective1D& f, SearchState& st, const LineSearchConfig& cfg,
                                   const Samples& samples, double g1, double g2) {
    const double eps_x = 2.0 * cfg.eps / st.e_minus();
    double s1 = (st.x2 - st.x1) / (g2 - g1);
    if (!(s1 > eps_mach)) {
        return RefineOutcome::not_descent;
    }
    while (st.iterations <= cfg.k_max) {
        const double s2 = -s1 * g2;
        st.x3 = st.x2 + s2;
        ++st.iterations;
        if (std::abs(st.x3 - st.x2) <= eps_x) {
            st.final_step = std::abs(to_physical(st.x3, st.a, st.b) - to_physical(st.x2, st.a, st.b));
            st.record(StepKind::secant, st.x3);
            finish(st, f, to_physical(st.x3, st.a, st.b));
            return RefineOutcome::converged;
        }
        if (!(std::abs(st.x3) <= 1.0)) {
            return RefineOutcome::left_domain;
        }
        if (std::abs(s2) < cfg.eps_d && std::abs(samples.scale / s1) < cfg.eps_d) {
            const double pivot = to_physical(st.x2, st.a, st.b);
            return st.x3 > st.x2 ? run_brent(f, st, cfg, pivot, st.b) : run_brent(f, st, cfg, st.a, pivot);
        }
        st.record(StepKind::secant, st.x3);
        const double g3 = derivative_at(samples, 1, st.x3);
        s1 = (st.x3 - st.x2) / (g3 - g2);
        g1 = g2;
        g2 = g3;
        st.x1 = st.x2;
        st.x2 = st.x3;
        if (!(s1 > eps_mach)) {
            return RefineOutcome::not_descent;
        }
    }
    return RefineOutcome::exhausted;
}

enum class Variant { newton, secant };

/// Cubic roots ranked by f at their images in [a, b]: {best, second best}.
inline std::pair<std::size_t, std::size_t> rank_roots(Objective1D& f, const CubicDerivative& c,
                                                      double a, double b) {
    std::array<double, 3> fv{};
    for (std::size_t i = 0; i < 3; ++i) {
        fv[i] = f(to_physical(std::clamp(c.real_root(i), -1.0, 1.0), a, b));
    }
    std::array<std::size_t, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return fv[l] < fv[r]; });
    return {idx[0], idx[1]};
}

/// Refinement after a golden step has produced [st.a, st.b]. Returns true
/// when the run is finished.
inline bool refine_after_golden(Objective1D& f, SearchState& st, const LineSearchConfig& cfg,
                                const GoldenStep& g, Variant variant) {
    const auto samples = sample_interval(f, cfg.m_grid, st.a, st.b, cfg.f_max);
    if (variant == Variant::newton) {
        st.x1 = to_reference(g.t_best, st.a, st.b);
        const double d1 = derivative_at(samples, 1, st.x1);
        const double d2 = derivative_at(samples, 2, st.x1);
        if (d2 > eps_mach) {
            return newton_refine(f, st, cfg, samples, d1, d2) == RefineOutcome::converged;
        }
        return false;
    }
    st.x1 = std::clamp(to_reference(g.t_second, st.a, st.b), -1.0, 1.0);
    st.x2 = std::clamp(to_reference(g.t_best, st.a, st.b), -1.0, 1.0);
    const double g1 = derivative_at(samples, 1, st.x1);
    const double g2 = derivative_at(samples, 1, st.x2);
    return secant_refine(f, st, cfg, samples, g1, g2) == RefineOutcome::converged;
}

inline bool golden_branch(Objective1D& f, SearchState& st, const LineSearchConfig& cfg, Variant variant) {
    ++st.iterations;
    const GoldenStep g = golden_section_step(f, st.a, st.b, cfg.eps);
    st.a = g.a;
    st.b = g.b;
    st.record(StepKind::golden, to_reference(g.t_best, st.a, st.b));
    if (g.converged) {
        finish(st, f, g.t_best);
        return true;
    }
    return refine_after_golden(f, st, cfg, g, variant);
}

inline SearchState run_cpslsm(Objective1D& f, double a, double b, const LineSearchConfig& cfg,
                              Variant variant) {
    cfg.validate();
    if (!(a < b)) {
        throw std::invalid_argument("cpslsm_minimize: need a < b");
    }
    SearchState st;
    st.trace_cap = static_cast<std::size_t>(cfg.k_max);
    if (cfg.locate_interval) {
        const Bracket br = locate_uncertainty_interval(f, a, b, cfg);
        st.bracket_iterations = br.iterations;
        if (!br.found) {
            st.a = std::min(br.a, br.b);
            st.b = std::max(br.a, br.b);
            st.status = SearchStatus::bracket_failed;
            st.t_star = f.best_t();
            st.f_star = f.best_f();
            st.evaluations = f.evaluations();
            return st;
        }
        a = br.a;
        b = br.b;
    }
    st.a = a;
    st.b = b;
    st.record(StepKind::bracket);

    const CubicTolerances ctol{.eps_c = cfg.eps_c};
    auto done = [&] {
        st.evaluations = f.evaluations();
        return st;
    };

    while (st.iterations <= cfg.k_max) {
        const auto quartic = sample_interval(f, 4, st.a, st.b, cfg.f_max);
        const ChebSeries series = discrete_transform_quartic(quartic.values);
        // Case tests run on the scaled coefficients so rounding noise in A1, A2
        // is judged against the largest coefficient rather than against one.
        CubicDerivative cubic = scale_coeffs(assemble_cubic(derivative_coeffs(series)));

        if (std::abs(cubic.A[0]) < cfg.eps_c) {
            if (std::abs(cubic.A[1]) < cfg.eps_c) {
                const double root = -cubic.A[3] / cubic.A[2];
                if (std::abs(root) <= 1.0) {
                    // Accept the linear root, but never return something worse
                    // than an endpoint of the interval.
                    const double t_root = to_physical(root, st.a, st.b);
                    st.record(StepKind::linear_root, root);
                    double t_best = t_root;
                    double f_best = f(t_root);
                    for (double t_end : {st.a, st.b}) {
                        const double fe = f(t_end);
                        if (fe < f_best) {
                            f_best = fe;
                            t_best = t_end;
                        }
                    }
                    st.t_star = t_best;
                    st.f_star = f_best;
                    st.status = SearchStatus::converged;
                    return done();
                }
            }
            if (golden_branch(f, st, cfg, variant)) {
                return done();
            }
            continue;
        }

        cubic = viete_roots(cubic, ctol);
        if (classify_roots(cubic, ctol) == RootClass::fallback) {
            if (golden_branch(f, st, cfg, variant)) {
                return done();
            }
            continue;
        }

        const auto [best, second] = rank_roots(f, cubic, st.a, st.b);
        const double x_best = std::clamp(cubic.real_root(best), -1.0, 1.0);
        const double x_second = std::clamp(cubic.real_root(second), -1.0, 1.0);
        const auto samples = sample_interval(f, cfg.m_grid, st.a, st.b, cfg.f_max);
        RefineOutcome outcome = RefineOutcome::not_descent;
        if (variant == Variant::newton) {
            st.x1 = x_best;
            st.record(StepKind::best_root, st.x1);
            const double d1 = derivative_at(samples, 1, st.x1);
            const double d2 = derivative_at(samples, 2, st.x1);
            if (d2 > eps_mach) {
                outcome = newton_refine(f, st, cfg, samples, d1, d2);
            }
        } else {
            // Companion point moved towards a neighbouring root by 1/rho^2.
            st.x2 = x_best;
            st.record(StepKind::best_root, st.x2);
            const double r2 = cubic.real_root(1);
            const double r3 = cubic.real_root(2);
            if (best == 0) {
                st.x1 = st.x2 - (st.x2 - r2) / golden_ratio_sq;
            } else if (best == 1) {
                st.x1 = st.x2 - (st.x2 - r3) / golden_ratio_sq;
            } else {
                st.x1 = st.x2 + (r2 - st.x2) / golden_ratio_sq;
            }
            const double g1 = derivative_at(samples, 1, st.x1);
            const double g2 = derivative_at(samples, 1, st.x2);
            outcome = secant_refine(f, st, cfg, samples, g1, g2);
        }
        if (outcome == RefineOutcome::converged) {
            return done();
        }
        const double cut = to_physical(x_second, st.a, st.b);
        if (x_best > x_second) {
            st.a = cut;
        } else {
            st.b = cut;
        }
        st.record(StepKind::interval_shrink, x_second);
        ++st.iterations;
        if (!(st.a < st.b) || st.b - st.a <= cfg.eps) {
            finish(st, f, f.best_t());
            return done();
        }
    }
    st.status = SearchStatus::max_iterations;
    st.t_star = f.best_t();
    st.f_star = f.best_f();
    return done();
}

}  // namespace detail

/// Newton refinement from st.x1 on [st.a, st.b]. Samples f on the m_grid CGL
/// nodes of the interval first. Leaves st unchanged apart from the iterate,
/// counters and trace unless the stopping test is met.
[[nodiscard]] inline SearchState chebyshev_newton(Objective1D& f, SearchState st, const LineSearchConfig& cfg) {
    cfg.validate();
    if (!(std::abs(st.x1) <= 1.0)) {
        throw std::domain_error("chebyshev_newton: starting point outside [-1, 1]");
    }
    const auto samples = detail::sample_interval(f, cfg.m_grid, st.a, st.b, cfg.f_max);
    const double d1 = detail::derivative_at(samples, 1, st.x1);
    const double d2 = detail::derivative_at(samples, 2, st.x1);
    if (d2 > eps_mach) {
        (void)detail::newton_refine(f, st, cfg, samples, d1, d2);
    }
    st.evaluations = f.evaluations();
    return st;
}

/// Minimise f starting from the interval [a, b] using second-order information.
[[nodiscard]] inline SearchState cpslsm_minimize(Objective1D& f, double a, double b,
                                                 const LineSearchConfig& cfg = {}) {
    return detail::run_cpslsm(f, a, b, cfg, detail::Variant::newton);
}

/// As cpslsm_minimize, refining with the secant scheme on first derivatives.
[[nodiscard]] inline SearchState cpslsm_minimize_first_order(Objective1D& f, double a, double b,
                                                             const LineSearchConfig& cfg = {}) {
    return detail::run_cpslsm(f, a, b, cfg, detail::Variant::secant);
}

}  // namespace chebls
