#include <doctest.h>

#include <cmath>
#include <vector>

#include "prandtl/crocco_solver.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/scenarios.hpp"

using namespace prandtl;

TEST_CASE("first-order wall closure") {
    const auto c = wall_closure(0.6, 0.5, 0.1);
    CHECK(c.radicand == doctest::Approx(0.36 - 0.1));
    CHECK(c.value == doctest::Approx(std::sqrt(0.26)));
    CHECK_FALSE(c.signal);
    CHECK(wall_closure(0.3, 1.0, 0.1).signal);

    CHECK(wall_closure(1.0, 0.0, 0.5).value == 1.0);
    const auto zero = wall_closure(1.0, 1.0, 0.5);
    CHECK(zero.value == 0.0);
    CHECK(zero.signal);
    CHECK(wall_closure(0.2, 1.0, 0.01).value == doctest::Approx(std::sqrt(0.02)));
}

TEST_CASE("second-order wall closure is exact for linear w squared") {
    // f = a + bη gives ∂_η f = b = 2g and f(0) = a
    const double b = 10.0, g = b / 2.0, e1 = 0.02, e2 = 0.05;
    for (const double a : {0.25, -0.1}) {
        const auto c = wall_closure2(std::sqrt(a + b * e1), std::sqrt(a + b * e2), e1, e2, g);
        CHECK(c.radicand == doctest::Approx(a).epsilon(1e-12));
        CHECK(c.signal == (a <= 0.0));
        if (a > 0.0) CHECK(c.value == doctest::Approx(std::sqrt(a)));
    }
}

TEST_CASE("initial data validation") {
    const auto s = heat_oracle(0.05);
    const CroccoGrid g(1.0, 8, 65, 1.0);
    const CroccoSetup setup{g, s.model, s.w1, 1e-4, 2};
    CHECK_NOTHROW(init_crocco(s.w0, setup));
    CHECK_THROWS_AS(init_crocco([](double, double eta) { return 0.5 - eta; }, setup), DataError);
    CHECK_THROWS_AS(init_crocco([](double, double) { return 1.0; }, setup), DataError);
}

TEST_CASE("heat oracle in Crocco variables") {
    const auto s = heat_oracle(0.05);
    const CroccoGrid g(1.0, 8, 129, 1.0);
    const CroccoSetup setup{g, s.model, s.w1, crocco_time_step(s.model, g, 1e-4), 2};
    const auto run = run_crocco(init_crocco(s.w0, setup), setup, RunStop{0.05, false, 20});
    CHECK(run.last.tau == doctest::Approx(0.05));
    double err = 0.0;
    for (std::size_t i = 0; i < g.n_xi(); ++i)
        for (std::size_t j = 0; j < g.n_eta(); ++j)
            err = std::max(err, std::abs(run.last.values(i, j) - s.exact_w(0.05, g.eta()[j])));
    CHECK(err < 5e-3);
    CHECK(run.min_interior == 0.0);
    // exact wall value: 1/sqrt(π(t + t₀))
    for (const double tw : crocco_wall_shear(run.last, setup)) CHECK(tw == doctest::Approx(1.0 / std::sqrt(M_PI * 0.1)).epsilon(1e-2));
}

TEST_CASE("long-plate example signals back-flow") {
    const auto s = example_4_1(3.0);
    const CroccoGrid g(s.model.length(), 16, 65, 2.0);
    const CroccoSetup setup{g, s.model, s.w1, crocco_time_step(s.model, g, 4e-7), 2};
    const auto run = run_crocco(init_crocco(s.w0, setup), setup, RunStop{s.model.horizon(), true, 12});
    REQUIRE(run.event.has_value());
    CHECK(run.event->t_star > 0.0);
    CHECK(run.event->t_star < s.model.horizon());
    CHECK(run.event->wall_curvature > 0.0);
}

TEST_CASE("wall curvature from the Crocco profile") {
    // w² = 1 + 2cη with c = 0.3 gives ∂²_y u(0) = U c
    const std::vector<double> eta{0.0, 0.01, 0.03, 0.1};
    std::vector<double> w;
    for (const double e : eta) w.push_back(std::sqrt(1.0 + 0.6 * e));
    CHECK(crocco_wall_curvature(w, eta, 2.0) == doctest::Approx(0.6).epsilon(1e-10));
}
