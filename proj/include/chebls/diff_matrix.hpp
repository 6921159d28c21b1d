#pragma once

/// \file diff_matrix.hpp
/// Chebyshev pseudospectral differentiation operators on CGL grids, either
/// the full (n+1)x(n+1) matrix or a single row evaluated at an arbitrary
/// point of [-1, 1]. Diagonal (full) or last (row) entries come from the
/// negative-sum rule so every row annihilates constants.

#include "chebls/chebyshev.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebls {

enum class DiffKind { full, single_row };

class DiffOperator {
public:
    DiffOperator(int order, int n, DiffKind kind, std::vector<double> entries, double eval_point)
        : order_(order), n_(n), kind_(kind), entries_(std::move(entries)), eval_point_(eval_point) {}

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int grid_order() const noexcept { return n_; }
    [[nodiscard]] DiffKind kind() const noexcept { return kind_; }
    /// Only meaningful for single-row operators.
    [[nodiscard]] double eval_point() const noexcept { return eval_point_; }

    [[nodiscard]] std::size_t rows() const noexcept {
        return kind_ == DiffKind::full ? static_cast<std::size_t>(n_) + 1 : 1;
    }
    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(n_) + 1; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols() + j];
    }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return std::span<const double>(entries_).subspan(i * cols(), cols());
    }
    [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }

private:
    int order_;
    int n_;
    DiffKind kind_;
    std::vector<double> entries_;
    double eval_point_;
};

namespace detail {

/// Off-diagonal weights (2 theta_j / n) sum_k theta_k T_k(x_j) T_k^(m)(x)
/// for every column j, given the derivative values T_k^(m)(x), k = 0..n.
inline std::vector<double> diff_row_weights(const ChebGrid& grid,
                                            std::span<const extended_real> deriv_at_point,
                                            int m) {
    const int n = grid.order;
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        const double theta_j = (j == 0 || j == n) ? 0.5 : 1.0;
        extended_real s = 0;
        for (int k = m; k <= n; ++k) {
            const double theta_k = (k == 0 || k == n) ? 0.5 : 1.0;
            s += extended_real(theta_k * grid.cheb_at_node(k, j)) * deriv_at_point[k];
        }
        w[j] = static_cast<double>(extended_real(2.0 * theta_j / n) * s);
    }
    return w;
}

inline std::vector<extended_real> derivative_table(int n, int m, double x) {
    std::vector<extended_real> v(static_cast<std::size_t>(n) + 1);
    const extended_real xe(x);
    for (int k = 0; k <= n; ++k) {
        v[k] = cheb_derivative<extended_real>(k, m, xe);
    }
    return v;
}

}  // namespace detail

/// Full m-th order differentiation matrix on the order-n CGL grid.
[[nodiscard]] inline DiffOperator full_diff_matrix(int n, int m) {
    if (n < 1) {
        throw std::invalid_argument("full_diff_matrix: grid order must be >= 1");
    }
    if (m < 1) {
        throw std::invalid_argument("full_diff_matrix: derivative order must be >= 1");
    }
    if (m > n) {
        throw std::invalid_argument("full_diff_matrix: derivative order " + std::to_string(m) +
                                    " exceeds grid order " + std::to_string(n));
    }
    const ChebGrid grid = cgl_nodes(n);
    const std::size_t size = static_cast<std::size_t>(n) + 1;
    std::vector<double> entries(size * size, 0.0);
    for (int i = 0; i <= n; ++i) {
        // Node n/2 of an even grid is exactly 0, which selects the closed-form branch.
        const auto deriv = detail::derivative_table(n, m, grid[i]);
        const auto w = detail::diff_row_weights(grid, deriv, m);
        double off_sum = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (j == i) {
                continue;
            }
            entries[i * size + j] = w[j];
            off_sum += w[j];
        }
        entries[i * size + i] = -off_sum;
    }
    return DiffOperator(m, n, DiffKind::full, std::move(entries), 0.0);
}

/// Row operator giving the order-th derivative at x_tilde from samples at
/// the m_grid + 1 CGL nodes.
[[nodiscard]] inline DiffOperator row_diff_matrix(int m_grid, int order, double x_tilde) {
    if (!(std::abs(x_tilde) <= 1.0)) {
        throw std::domain_error("row_diff_matrix: evaluation point " + std::to_string(x_tilde) +
                                " outside [-1, 1]");
    }
    if (order < 1) {
        throw std::invalid_argument("row_diff_matrix: derivative order must be >= 1");
    }
    if (m_grid < order) {
        throw std::invalid_argument("row_diff_matrix: grid order " + std::to_string(m_grid) +
                                    " below derivative order " + std::to_string(order));
    }
    const ChebGrid grid = cgl_nodes(m_grid);
    const auto deriv = detail::derivative_table(m_grid, order, x_tilde);
    auto w = detail::diff_row_weights(grid, deriv, order);
    double head_sum = 0.0;
    for (int j = 0; j < m_grid; ++j) {
        head_sum += w[j];
    }
    w[m_grid] = -head_sum;
    return DiffOperator(order, m_grid, DiffKind::single_row, std::move(w), x_tilde);
}

/// Matrix-vector product (full) or the single derivative value (row, one element).
[[nodiscard]] inline std::vector<double> apply(const DiffOperator& op, std::span<const double> samples) {
    if (samples.size() != op.cols()) {
        throw std::invalid_argument("apply: expected " + std::to_string(op.cols()) +
                                    " samples, got " + std::to_string(samples.size()));
    }
    std::vector<double> out(op.rows(), 0.0);
    for (std::size_t i = 0; i < op.rows(); ++i) {
        double s = 0.0;
        const auto r = op.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            s += r[j] * samples[j];
        }
        out[i] = s;
    }
    return out;
}

[[nodiscard]] inline double apply_row(const DiffOperator& op, std::span<const double> samples) {
    if (op.kind() != DiffKind::single_row) {
        throw std::invalid_argument("apply_row: operator is not a single row");
    }
    return apply(op, samples).front();
}

}  // namespace chebls
