#include "chebls/diff_matrix.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace chebls;
using oracle::big;
using oracle::d01_error;
using oracle::lagrange_first_derivative;
using oracle::loglog_slope;

namespace {

double max_abs_row(const DiffOperator& op, std::size_t i) {
    double s = 1.0;
    for (double v : op.row(i)) {
        s = std::max(s, std::abs(v));
    }
    return s;
}

}  // namespace

TEST(DiffMatrix, SecondOrderGridFirstDerivative) {
    const auto d = full_diff_matrix(2, 1);
    const double want[3][3] = {{1.5, -2, 0.5}, {0.5, 0, -0.5}, {-0.5, 2, -1.5}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_NEAR(d(i, j), want[i][j], 1e-15) << i << "," << j;
        }
    }
}

TEST(DiffMatrix, MatchesLagrangeForm) {
    for (int n : {3, 4, 8, 12, 16}) {
        const auto d = full_diff_matrix(n, 1);
        const auto ref = lagrange_first_derivative(n);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                EXPECT_NEAR(d(i, j), ref[i][j], 1e-12 * n * n) << "n=" << n << " " << i << "," << j;
            }
        }
    }
}

TEST(DiffMatrix, SecondDerivativeIsSquareOfFirst) {
    for (int n : {4, 8, 12}) {
        const auto d1 = full_diff_matrix(n, 1);
        const auto d2 = full_diff_matrix(n, 2);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                double s = 0;
                for (int k = 0; k <= n; ++k) {
                    s += d1(i, k) * d1(k, j);
                }
                EXPECT_NEAR(d2(i, j), s, 1e-11 * std::pow(n, 4));
            }
        }
    }
}

TEST(DiffMatrix, PolynomialExactness) {
    for (int n = 2; n <= 16; ++n) {
        const auto g = cgl_nodes(n);
        for (int m = 1; m <= 2; ++m) {
            const auto op = full_diff_matrix(n, m);
            const double tol = 1e-8 * std::pow(n, 2 * m);
            for (int deg = 0; deg <= n; ++deg) {
                std::vector<double> v(n + 1);
                for (int j = 0; j <= n; ++j) {
                    v[j] = std::pow(g[j], deg);
                }
                const auto dv = chebls::apply(op, v);
                for (int i = 0; i <= n; ++i) {
                    const double x = g[i];
                    const double exact = m == 1 ? (deg >= 1 ? deg * std::pow(x, deg - 1) : 0.0)
                                                : (deg >= 2 ? deg * (deg - 1) * std::pow(x, deg - 2) : 0.0);
                    EXPECT_NEAR(dv[i], exact, tol) << "n=" << n << " m=" << m << " deg=" << deg;
                }
            }
        }
    }
}

TEST(DiffMatrix, RowSumsVanish) {
    for (int n = 1; n <= 24; ++n) {
        for (int m = 1; m <= std::min(n, 4); ++m) {
            const auto op = full_diff_matrix(n, m);
            for (std::size_t i = 0; i < op.rows(); ++i) {
                double s = 0;
                for (double v : op.row(i)) {
                    s += v;
                }
                EXPECT_NEAR(s, 0.0, 1e-15 * max_abs_row(op, i) * (n + 1));
            }
        }
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = u(rng);
        const auto row = row_diff_matrix(12, 1 + trial % 2, x);
        double s = 0;
        for (double v : row.row(0)) {
            s += v;
        }
        EXPECT_NEAR(s, 0.0, 1e-15 * max_abs_row(row, 0) * 13);
    }
}

TEST(DiffMatrix, RowOperatorAgreesWithFullMatrix) {
    for (int n = 2; n <= 16; ++n) {
        const auto g = cgl_nodes(n);
        for (int m = 1; m <= 2; ++m) {
            const auto full = full_diff_matrix(n, m);
            for (int i = 0; i <= n; ++i) {
                const auto row = row_diff_matrix(n, m, g[i]);
                const double scale = max_abs_row(full, i);
                for (int j = 0; j <= n; ++j) {
                    EXPECT_NEAR(row(0, j), full(i, j), 1e-13 * scale) << "n=" << n << " m=" << m << " " << i << "," << j;
                }
            }
        }
    }
}

TEST(DiffMatrix, RowOperatorDifferentiatesPolynomialsOffGrid) {
    const int n = 12;
    const auto g = cgl_nodes(n);
    std::vector<double> v(n + 1);
    auto p = [](double x) { return ((((x - 2) * x + 0.5) * x + 3) * x - 1) * x + 4; };
    auto dp = [](double x) { return (((5 * x - 8) * x + 1.5) * x + 6) * x - 1; };
    auto d2p = [](double x) { return ((20 * x - 24) * x + 3) * x + 6; };
    for (int j = 0; j <= n; ++j) {
        v[j] = p(g[j]);
    }
    for (double x : {-0.93, -0.4, 0.0, 0.12, 0.61, 0.999}) {
        EXPECT_NEAR(apply_row(row_diff_matrix(n, 1, x), v), dp(x), 1e-11);
        EXPECT_NEAR(apply_row(row_diff_matrix(n, 2, x), v), d2p(x), 1e-9);
    }
}

TEST(DiffMatrix, RejectsBadArguments) {
    EXPECT_THROW((void)full_diff_matrix(0, 1), std::invalid_argument);
    EXPECT_THROW((void)full_diff_matrix(4, 0), std::invalid_argument);
    EXPECT_THROW((void)full_diff_matrix(2, 3), std::invalid_argument);
    EXPECT_THROW((void)row_diff_matrix(6, 1, 1.5), std::domain_error);
    EXPECT_THROW((void)row_diff_matrix(6, 0, 0.5), std::invalid_argument);
    EXPECT_THROW((void)row_diff_matrix(1, 2, 0.5), std::invalid_argument);
    const auto op = full_diff_matrix(4, 1);
    EXPECT_THROW((void)chebls::apply(op, std::vector<double>(3, 0.0)), std::invalid_argument);
    EXPECT_THROW((void)apply_row(op, std::vector<double>(5, 0.0)), std::invalid_argument);
}

TEST(DiffMatrix, OperatorShape) {
    const auto full = full_diff_matrix(6, 2);
    EXPECT_EQ(full.rows(), 7u);
    EXPECT_EQ(full.cols(), 7u);
    EXPECT_EQ(full.kind(), DiffKind::full);
    const auto row = row_diff_matrix(6, 2, 0.3);
    EXPECT_EQ(row.rows(), 1u);
    EXPECT_EQ(row.cols(), 7u);
    EXPECT_EQ(row.order(), 2);
    EXPECT_EQ(row.eval_point(), 0.3);
}

TEST(DiffMatrix, CornerEntryClosedForms) {
    EXPECT_NEAR(full_diff_matrix(4, 1)(0, 1), -2 / (1 - std::sqrt(0.5)), 1e-13);
    for (int n : {4, 8, 16, 32, 64}) {
        EXPECT_LT(d01_error(n, 1), 1e-11) << n;
        EXPECT_LT(d01_error(n, 2), 1e-8) << n;
    }
}

TEST(DiffMatrix, RoundingGrowth) {
    EXPECT_LE(loglog_slope(1), 2.5);
    EXPECT_LE(loglog_slope(2), 4.5);
}
