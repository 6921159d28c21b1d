#pragma once

/// \file bfgs.hpp
/// BFGS on the inverse Hessian with the Chebyshev line search choosing the
/// step length along each direction.

#include "chebls/line_search.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace chebls {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorObjective = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;
/// (x, p, g) -> alpha; replaces the Chebyshev line search when set.
using StepSearchFn = std::function<double(const Vector&, const Vector&, const Vector&)>;

/// Curvature sᵀy below this leaves the inverse Hessian untouched.
inline constexpr double curvature_tol = 1e-14;

struct BfgsConfig {
    std::optional<Matrix> initial_inverse_hessian;  ///< identity when empty
    int k_max = 10000;
    double p_max = 10.0;
    double gradient_step = 1e-4;
    double alpha_min = 3.0 * eps_mach;
    double alpha_max = 10.0;
    double grad_tol = 1e-12;
    double step_tol = 1e-12;
    LineSearchConfig line_search = default_line_search();
    /// Analytic gradient; central differences are used when empty.
    GradientFn gradient;
    StepSearchFn step_search;

    [[nodiscard]] static LineSearchConfig default_line_search() {
        LineSearchConfig c;
        c.m_grid = 6;
        c.eps_c = eps_mach;
        c.eps_d = 1e-6;
        c.eps = 1e-6;
        c.k_max = 100;
        c.rightward_only = true;
        return c;
    }

    void validate() const {
        if (!(p_max > 0)) {
            throw std::invalid_argument("BfgsConfig: p_max must be positive");
        }
        if (!(alpha_min > 0) || !(alpha_max > alpha_min)) {
            throw std::invalid_argument("BfgsConfig: need 0 < alpha_min < alpha_max");
        }
        if (!(gradient_step > 0)) {
            throw std::invalid_argument("BfgsConfig: gradient step must be positive");
        }
        if (k_max < 1) {
            throw std::invalid_argument("BfgsConfig: k_max must be >= 1");
        }
        line_search.validate();
    }
};

enum class BfgsStatus { gradient_small, step_small, max_iterations };

[[nodiscard]] inline const char* to_string(BfgsStatus s) {
    switch (s) {
        case BfgsStatus::gradient_small: return "converged";
        case BfgsStatus::step_small: return "converged_step";
        case BfgsStatus::max_iterations: return "failure";
    }
    return "unknown";
}

struct BfgsState {
    Vector x;
    Matrix binv;
    Vector p;
    Vector g;
    Vector s;
    Vector y;
    double alpha = 0.0;
    int iterations = 0;
    bool update_skipped = false;
};

/// Snapshot of one outer iteration, taken after the inverse update.
struct BfgsIterate {
    Vector p;           ///< direction used, after norm capping
    Vector s;
    Vector y;
    Matrix binv;        ///< updated inverse Hessian
    double alpha = 0.0;
    bool update_skipped = false;
};

struct BfgsResult {
    Vector x;
    double f = 0.0;
    int iterations = 0;
    BfgsStatus status = BfgsStatus::max_iterations;
    std::size_t evaluations = 0;
    std::vector<BfgsIterate> history;

    [[nodiscard]] bool converged() const noexcept { return status != BfgsStatus::max_iterations; }
};

[[nodiscard]] inline Vector central_diff_gradient(const VectorObjective& f, const Vector& x, double h) {
    if (!(h > 0)) {
        throw std::invalid_argument("central_diff_gradient: step must be positive");
    }
    Vector g(x.size());
    Vector xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        xp[i] = xi + h;
        const double fp = f(xp);
        xp[i] = xi - h;
        const double fm = f(xp);
        xp[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

struct InverseUpdate {
    Matrix binv;
    bool skipped = false;
};

[[nodiscard]] inline InverseUpdate inverse_update(const Matrix& binv, const Vector& s, const Vector& y) {
    if (binv.rows() != s.size() || binv.cols() != s.size() || y.size() != s.size()) {
        throw std::invalid_argument("inverse_update: dimension mismatch");
    }
    const double sy = s.dot(y);
    if (!(std::abs(sy) >= curvature_tol)) {
        return {binv, true};
    }
    const Vector by = binv * y;
    const double yby = y.dot(by);
    Matrix out = binv + ((sy + yby) / (sy * sy)) * (s * s.transpose()) -
                 (by * s.transpose() + s * by.transpose()) / sy;
    // The formula is symmetric in exact arithmetic; average away rounding.
    out = 0.5 * (out + out.transpose());
    return {out, false};
}

/// Direction -Binv g, rescaled to unit length when longer than p_max.
[[nodiscard]] inline Vector search_direction(const Matrix& binv, const Vector& g, double p_max) {
    Vector p = -(binv * g);
    const double n = p.norm();
    if (n > p_max) {
        p /= n;
    }
    return p;
}

struct StepLength {
    double alpha = 0.0;
    int iterations = 0;
};

/// Step length from the line search on phi(alpha) = f(x + alpha p).
[[nodiscard]] inline StepLength step_length(const VectorObjective& f, const Vector& x, const Vector& p,
                                            const BfgsConfig& cfg) {
    Vector trial(x.size());
    Objective1D phi([&](double alpha) {
        trial = x + alpha * p;
        return f(trial);
    });
    const SearchState st = cpslsm_minimize(phi, cfg.alpha_min, cfg.alpha_max, cfg.line_search);
    double alpha = std::isfinite(st.t_star) ? st.t_star : phi.best_t();
    if (!std::isfinite(alpha)) {
        alpha = cfg.alpha_min;
    }
    return {alpha, st.total_iterations()};
}

[[nodiscard]] inline BfgsResult bfgs_minimize(const VectorObjective& f, const Vector& x0, const BfgsConfig& cfg = {},
                                              bool keep_history = false) {
    cfg.validate();
    if (!x0.allFinite()) {
        throw std::invalid_argument("bfgs_minimize: starting point must be finite");
    }
    std::size_t evals = 0;
    const VectorObjective counted = [&](const Vector& v) {
        ++evals;
        return f(v);
    };
    auto gradient = [&](const Vector& v) {
        return cfg.gradient ? cfg.gradient(v) : central_diff_gradient(counted, v, cfg.gradient_step);
    };

    const auto d = x0.size();
    BfgsState st;
    st.x = x0;
    st.binv = cfg.initial_inverse_hessian.value_or(Matrix::Identity(d, d));
    if (st.binv.rows() != d || st.binv.cols() != d) {
        throw std::invalid_argument("bfgs_minimize: initial inverse Hessian has the wrong shape");
    }
    st.g = gradient(st.x);

    BfgsResult res;
    res.status = BfgsStatus::max_iterations;
    if (st.g.norm() < cfg.grad_tol) {
        res.status = BfgsStatus::gradient_small;
    }
    while (res.status == BfgsStatus::max_iterations && st.iterations < cfg.k_max) {
        st.p = search_direction(st.binv, st.g, cfg.p_max);
        st.alpha = cfg.step_search ? cfg.step_search(st.x, st.p, st.g) : step_length(counted, st.x, st.p, cfg).alpha;
        st.s = st.alpha * st.p;
        st.x += st.s;
        const Vector g_new = gradient(st.x);
        st.y = g_new - st.g;
        st.g = g_new;
        ++st.iterations;

        const InverseUpdate upd = inverse_update(st.binv, st.s, st.y);
        st.binv = upd.binv;
        st.update_skipped = upd.skipped;
        if (keep_history) {
            res.history.push_back({st.p, st.s, st.y, st.binv, st.alpha, st.update_skipped});
        }
        if (st.g.norm() < cfg.grad_tol) {
            res.status = BfgsStatus::gradient_small;
        } else if (st.s.norm() < cfg.step_tol) {
            res.status = BfgsStatus::step_small;
        }
    }
    res.x = st.x;
    res.f = f(st.x);
    res.iterations = st.iterations;
    res.evaluations = evals;
    return res;
}

}  // namespace chebls
