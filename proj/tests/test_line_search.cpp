#include "chebls/line_search.hpp"
#include "chebls/bench/test_functions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace chebls;

namespace {

double sq2(double t) { return (t - 2) * (t - 2); }

}  // namespace

TEST(Golden, HandTrace) {
    // First probes 10/rho^2 = 3.8197 and 10/rho = 6.1803; the left one wins,
    // b = 6.1803 and the new left probe is 6.1803/rho^2 = 2.3607. Then
    // f(2.3607) < f(3.8197), so b = 3.8197.
    Objective1D f(sq2);
    const auto g = golden_section_step(f, 0.0, 10.0, 1e-10);
    EXPECT_NEAR(g.t_best, 2.360679774997897, 1e-12);
    EXPECT_NEAR(g.t_second, 3.819660112501051, 1e-12);
    EXPECT_EQ(g.a, 0.0);
    EXPECT_NEAR(g.b, 3.819660112501051, 1e-12);
    EXPECT_FALSE(g.converged);
    EXPECT_EQ(f.evaluations(), 4u);
}

TEST(Golden, MonotoneShrinksLeft) {
    Objective1D f([](double t) { return t; });
    const auto g = golden_section_step(f, 0.0, 1.0, 1e-10);
    EXPECT_EQ(g.a, 0.0);
    EXPECT_LT(g.b, 1.0 / golden_ratio);
    EXPECT_EQ(g.t_best, std::min(g.t_best, g.t_second));
}

TEST(Golden, TieGoesToElseBranch) {
    Objective1D f([](double t) { return std::abs(t); });
    const auto g = golden_section_step(f, -1.0, 1.0, 1e-10);
    // First comparison ties, so the left probe -0.2361 becomes a.
    EXPECT_NEAR(g.a, -1.0 + 2.0 / golden_ratio_sq, 1e-15);
    EXPECT_LT(g.b, 1.0);
}

TEST(Golden, ShrinksByGoldenFactor) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 50; ++i) {
        const double c = u(rng);
        Objective1D f([c](double t) { return (t - c) * (t - c) + std::sin(3 * t); });
        const double a = -6, b = 6;
        const auto g = golden_section_step(f, a, b, 1e-10);
        EXPECT_NEAR(g.b - g.a, (b - a) / golden_ratio_sq, 1e-12);
    }
    Objective1D f(sq2);
    EXPECT_THROW((void)golden_section_step(f, 1.0, 1.0, 1e-10), std::invalid_argument);
}

TEST(Brent, Quadratic) {
    Objective1D f(sq2);
    const auto r = brent_minimize(f, 0.0, 10.0, 1e-10, 200);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.t, 2.0, 1e-9);
}

TEST(Brent, Cosine) {
    Objective1D f([](double t) { return std::cos(t); });
    const auto r = brent_minimize(f, 2.0, 4.0, 1e-10, 200);
    EXPECT_NEAR(r.t, std::numbers::pi, 1e-8);
}

TEST(Brent, FlatMinimum) {
    const auto& c = bench::scalar_case("f10");
    Objective1D f(c.f);
    const auto r = brent_minimize(f, -0.5, 0.5, 1e-10, 200);
    EXPECT_NEAR(r.t, 0.0, 1e-6);
}

TEST(Brent, CapReturnsBestPoint) {
    Objective1D f([](double t) { return std::cos(t); });
    const auto r = brent_minimize(f, 2.0, 4.0, 1e-14, 3);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 3);
    EXPECT_LT(r.f, std::cos(2.0));
}

TEST(Locator, InteriorHit) {
    Objective1D f([](double t) { return (t - 5) * (t - 5); });
    const auto br = locate_uncertainty_interval(f, 0.0, 10.0, LineSearchConfig{});
    EXPECT_TRUE(br.found);
    EXPECT_EQ(br.iterations, 1);
    EXPECT_DOUBLE_EQ(br.a, 4.0);
    EXPECT_DOUBLE_EQ(br.b, 6.0);
}

TEST(Locator, ExpandsRightToFarMinimum) {
    const auto& c = bench::scalar_case("f11");
    Objective1D f(c.f);
    const auto br = locate_uncertainty_interval(f, c.a, c.b, LineSearchConfig{});
    EXPECT_TRUE(br.found);
    EXPECT_LT(br.a, 99.0);
    EXPECT_GT(br.b, 99.0);
}

TEST(Locator, CrossesZeroFromPositiveStart) {
    Objective1D f([](double t) { return (t + 3) * (t + 3); });
    const auto br = locate_uncertainty_interval(f, 1.0, 2.0, LineSearchConfig{});
    EXPECT_TRUE(br.found);
    EXPECT_LT(br.a, -3.0);
    EXPECT_GT(br.b, -3.0);
}

TEST(Locator, RightwardOnlyKeepsLeftEnd) {
    Objective1D f([](double t) { return (t + 3) * (t + 3); });
    LineSearchConfig cfg;
    cfg.rightward_only = true;
    const auto br = locate_uncertainty_interval(f, 1.0, 2.0, cfg);
    EXPECT_TRUE(br.found);
    EXPECT_EQ(br.a, 1.0);
    EXPECT_DOUBLE_EQ(br.b, 1.1);
}

TEST(Locator, FailsOnUnboundedDescent) {
    Objective1D f([](double t) { return -t; });
    LineSearchConfig cfg;
    cfg.k_max = 20;
    const auto br = locate_uncertainty_interval(f, 0.0, 1.0, cfg);
    EXPECT_FALSE(br.found);
    Objective1D g([](double t) { return -t; });
    const auto st = cpslsm_minimize(g, 0.0, 1.0, cfg);
    EXPECT_EQ(st.status, SearchStatus::bracket_failed);
}

TEST(Newton, QuadraticInOneStep) {
    Objective1D f(sq2);
    SearchState st;
    st.a = 0.0;
    st.b = 4.0;
    st.x1 = 0.5;
    const auto out = chebyshev_newton(f, st, LineSearchConfig{});
    EXPECT_EQ(out.status, SearchStatus::converged);
    EXPECT_NEAR(out.t_star, 2.0, 1e-10);
    EXPECT_LE(out.iterations, 2);
    EXPECT_THROW((void)chebyshev_newton(f, [] {
        SearchState s;
        s.x1 = 1.5;
        return s;
    }(), LineSearchConfig{}), std::domain_error);
}

TEST(Cpslsm, QuadraticsAroundRandomCentres) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 30; ++i) {
        const double c = u(rng);
        Objective1D f([c](double t) { return (t - c) * (t - c); });
        const auto st = cpslsm_minimize(f, c - 1, c + 1);
        EXPECT_EQ(st.status, SearchStatus::converged);
        EXPECT_NEAR(st.t_star, c, 1e-10 * std::max(1.0, std::abs(c)));
    }
}

TEST(Cpslsm, SecantOnQuadratic) {
    Objective1D f(sq2);
    LineSearchConfig cfg;
    cfg.locate_interval = false;
    const auto st = cpslsm_minimize_first_order(f, 0.0, 10.0, cfg);
    EXPECT_EQ(st.status, SearchStatus::converged);
    EXPECT_NEAR(st.t_star, 2.0, 1e-10);
    EXPECT_LE(st.iterations, 2);
}

TEST(Cpslsm, SelectedTableCases) {
    const struct {
        const char* name;
        double tol;
    } cases[] = {{"f1", 1e-6}, {"f4", 1e-8}, {"f5", 1e-6}, {"f7", 1e-12}, {"f12", 1e-6}};
    for (const auto& k : cases) {
        const auto& c = bench::scalar_case(k.name);
        Objective1D f(c.f);
        const auto st = cpslsm_minimize(f, c.a, c.b);
        EXPECT_EQ(st.status, SearchStatus::converged) << k.name;
        EXPECT_NEAR(st.t_star, c.t_star, k.tol) << k.name;
        Objective1D g(c.f);
        const auto s1 = cpslsm_minimize_first_order(g, c.a, c.b);
        EXPECT_NEAR(s1.t_star, c.t_star, k.tol) << k.name << " (secant)";
    }
}

TEST(Cpslsm, ExactHitOnSymmetricInterval) {
    const auto& c = bench::scalar_case("f7");
    Objective1D f(c.f);
    const auto st = cpslsm_minimize(f, c.a, c.b);
    EXPECT_EQ(st.t_star, 0.0);
}

TEST(Cpslsm, IteratesStayInReferenceInterval) {
    for (const auto& c : bench::scalar_cases()) {
        for (int order = 1; order <= 2; ++order) {
            Objective1D f(c.f);
            const auto st = order == 2 ? cpslsm_minimize(f, c.a, c.b) : cpslsm_minimize_first_order(f, c.a, c.b);
            for (const auto& r : st.trace) {
                if (!std::isnan(r.x_tilde)) {
                    EXPECT_LE(std::abs(r.x_tilde), 1.0) << c.name << " " << to_string(r.kind);
                }
                EXPECT_LT(r.a, r.b) << c.name;
            }
            EXPECT_LE(st.trace.size(), 100u);
        }
    }
}

TEST(Cpslsm, StoppingMapBoundsPhysicalStep) {
    for (const auto& c : bench::scalar_cases()) {
        Objective1D f(c.f);
        LineSearchConfig cfg;
        const auto st = cpslsm_minimize(f, c.a, c.b, cfg);
        if (!std::isnan(st.final_step)) {
            EXPECT_LE(st.final_step, cfg.eps * (1 + 1e-12)) << c.name;
        }
    }
}

TEST(Cpslsm, SampleScalingDoesNotChangeIterates) {
    auto big = [](double t) { return 1e4 * (std::cos(t) + (t - 2) * (t - 2)); };
    LineSearchConfig scaled;
    LineSearchConfig raw;
    raw.f_max = std::numeric_limits<double>::infinity();
    raw.eps_d = scaled.eps_d = 1e-12;
    Objective1D f1(big);
    Objective1D f2(big);
    const auto a = cpslsm_minimize(f1, 0.0, 5.0, scaled);
    const auto b = cpslsm_minimize(f2, 0.0, 5.0, raw);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        if (!std::isnan(a.trace[i].x_tilde)) {
            EXPECT_NEAR(a.trace[i].x_tilde, b.trace[i].x_tilde, 1e-12);
        }
    }
    EXPECT_NEAR(a.t_star, b.t_star, 1e-12);
}

TEST(Cpslsm, CountsEvaluations) {
    Objective1D f(sq2);
    const auto st = cpslsm_minimize(f, 0.0, 10.0);
    EXPECT_EQ(st.evaluations, f.evaluations());
    EXPECT_GT(st.evaluations, 0u);
}

TEST(Cpslsm, RejectsBadInput) {
    Objective1D f(sq2);
    EXPECT_THROW((void)cpslsm_minimize(f, 1.0, 0.0), std::invalid_argument);
    LineSearchConfig cfg;
    cfg.m_grid = 1;
    EXPECT_THROW((void)cpslsm_minimize(f, 0.0, 1.0, cfg), std::invalid_argument);
}
