#include <doctest.h>

#include <cmath>
#include <vector>

#include "prandtl/errors.hpp"
#include "prandtl/physical_solver.hpp"
#include "prandtl/scenarios.hpp"

using namespace prandtl;

TEST_CASE("time step is clipped by the advective limit") {
    const auto m = OuterFlowModel::constant(1.0, 1.0, 2.0);
    const PhysicalGrid g(m, 9, 33, 8.0, 1.0, 1.0);
    CHECK(g.dx() == doctest::Approx(0.125));
    CHECK(g.dt() == doctest::Approx(0.5 * 0.125 / 2.0));
    CHECK(PhysicalGrid(m, 9, 33, 8.0, 1.0, 1e-4).dt() == 1e-4);
}

TEST_CASE("wall stencils are exact on low-order polynomials") {
    const std::vector<double> y{0.0, 0.07, 0.2, 0.41, 0.8};
    std::vector<double> quad, cubic;
    for (const double v : y) {
        quad.push_back(2.0 * v + 3.0 * v * v);
        cubic.push_back(2.0 * v - v * v + 0.5 * v * v * v);
    }
    CHECK(column_wall_shear(quad, y) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(wall_curvature(cubic, y) == doctest::Approx(-2.0).epsilon(1e-10));
    const auto prof = column_shear_profile(quad, y);
    CHECK(prof[0] == doctest::Approx(2.0));
    CHECK(prof[2] == doctest::Approx(2.0 + 6.0 * 0.2).epsilon(1e-12));
}

TEST_CASE("v from continuity") {
    const auto m = OuterFlowModel::constant(1.0, 1.0, 1.0);
    const PhysicalGrid g(m, 11, 65, 4.0, 0.7, 1e-3);
    Field2D u(11, 65);
    for (std::size_t i = 0; i < 11; ++i)
        for (std::size_t j = 0; j < 65; ++j) u(i, j) = g.x()[i] * g.y()[j];
    const auto v = compute_v(u, g);
    // ∂_x u = y, so v = −y²/2 and the trapezoid rule is exact
    for (std::size_t i = 0; i < 11; ++i)
        for (std::size_t j = 0; j < 65; ++j) CHECK(v(i, j) == doctest::Approx(-0.5 * g.y()[j] * g.y()[j]).epsilon(1e-12));
}

TEST_CASE("initial data validation") {
    const auto s = heat_oracle(0.05);
    const PhysicalSetup setup{PhysicalGrid(s.model, 9, 65, 8.0, 1.0, 1e-3), s.model, s.u1, 1e-3};
    CHECK_NOTHROW(init_physical(setup, s.u0));
    CHECK_THROWS_AS(init_physical(setup, [](double, double y) { return y * std::exp(1.0 - y); }), DataError);
    CHECK_THROWS_AS(init_physical(setup, [](double, double y) { return 1.0 - std::exp(-y / 4.0); }), TruncationError);
    CHECK_THROWS_AS(init_physical(setup, [](double, double y) { return std::erf(y / 0.5) + 0.1; }), DataError);
}

TEST_CASE("zero step is the identity") {
    const auto s = heat_oracle(0.05);
    const PhysicalSetup setup{PhysicalGrid(s.model, 9, 65, 8.0, 1.0, 1e-3), s.model, s.u1, 1e-3};
    const auto st = init_physical(setup, s.u0);
    const auto [next, rep] = step_physical(st, setup, 0.0);
    CHECK(next.u == st.u);
    CHECK(rep.t_new == st.t);
}

TEST_CASE("heat oracle stays on the similarity solution") {
    const auto s = heat_oracle(0.05);
    const PhysicalSetup setup{PhysicalGrid(s.model, 8, 129, 8.0, 1.0, 1e-4), s.model, s.u1, 1e-3};
    const auto run = run_physical(init_physical(setup, s.u0), setup, RunStop{0.05, false, 20});
    CHECK(run.last.t == doctest::Approx(0.05));
    CHECK_FALSE(run.event.has_value());
    double err = 0.0;
    const auto y = setup.grid.y();
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < y.size(); ++j) err = std::max(err, std::abs(run.last.u(i, j) - std::erf(y[j] / (2.0 * std::sqrt(0.1)))));
    CHECK(err < 2e-3);
    // v only sees the mismatch between the exact inflow column and the computed ones
    for (const double v : run.last.v.values()) CHECK(std::abs(v) < 1e-3);
    const double exact_shear = 1.0 / std::sqrt(M_PI * 0.1);
    for (const double tw : wall_shear(run.last, setup.grid)) CHECK(tw == doctest::Approx(exact_shear).epsilon(2e-2));
}

TEST_CASE("long-plate example separates at the wall before the horizon") {
    const auto s = example_4_1(3.0);
    const PhysicalSetup setup{PhysicalGrid(s.model, 16, 65, 10.0, 1.0, 4e-7), s.model, s.u1, 1e-3};
    const auto run = run_physical(init_physical(setup, s.u0), setup, RunStop{s.model.horizon(), true, 12});
    REQUIRE(run.event.has_value());
    const auto& e = *run.event;
    CHECK(e.t_star > 0.0);
    CHECK(e.t_star < s.model.horizon());
    CHECK(e.t_before <= e.t_star);
    CHECK(e.t_star <= e.t_after);
    // every column still has positive wall shear just before the event
    for (const double tw : wall_shear(run.last, setup.grid)) CHECK(tw > 0.0);
}
