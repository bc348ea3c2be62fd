#include <doctest.h>

#include <cmath>

#include "prandtl/errors.hpp"
#include "prandtl/scenarios.hpp"

using namespace prandtl;

TEST_CASE("scenario registry") {
    const auto names = scenario_names();
    CHECK(names.size() == 4);
    for (const auto& n : names) CHECK(make_scenario(n).name == n);
    CHECK_THROWS_AS(make_scenario("blasius"), ConfigError);
}

TEST_CASE("long-plate example data") {
    const double L = 3.0;
    const auto s = example_4_1(L);
    CHECK(s.model.horizon() == doctest::Approx(4.0 / std::pow(L, 5)));
    CHECK(s.model.velocity(0.0, 0.0) == doctest::Approx(2 * L));
    CHECK(s.u0(1.0, 0.0) == 0.0);
    CHECK(s.u0(1.0, 2.0) == doctest::Approx((2 * L - 1.0) * (1.0 - std::exp(-2.0))));
    CHECK(s.dudy0(1.0, 2.0) == doctest::Approx((2 * L - 1.0) * std::exp(-2.0)));
    CHECK(s.w0(0.5, 0.3) == doctest::Approx(0.7));
    CHECK(s.expected == ExpectedOutcome::BackflowExpected);
}

TEST_CASE("linear-blend profile is C1 at the joint") {
    const double M = 10.0, a = 0.05, h = 1e-7;
    CHECK(std::abs(example_4_2_phi(M + h, M, a) - example_4_2_phi(M - h, M, a)) < 3.0 * a * h);
    CHECK(example_4_2_dphi(M - h, M, a) == doctest::Approx(example_4_2_dphi(M + h, M, a)).epsilon(1e-6));
    CHECK(example_4_2_phi(2.0, M, a) == doctest::Approx(0.1));
    CHECK(example_4_2_phi(200.0, M, a) == doctest::Approx(1.0));
    for (double y = 0.5; y < 40.0; y += 0.5) {
        const double fd = (example_4_2_phi(y + h, M, a) - example_4_2_phi(y - h, M, a)) / (2 * h);
        CHECK(example_4_2_dphi(y, M, a) == doctest::Approx(fd).epsilon(1e-5));
        CHECK(example_4_2_dphi(y, M, a) > 0.0);
    }
    CHECK_THROWS(example_4_2(0.5, 0.1));
    CHECK_THROWS(example_4_2(10.0, 0.2));
}

TEST_CASE("favourable control") {
    const auto s = favourable_control();
    CHECK(classify_gradient(s.model).classification == GradientClass::Favourable);
    CHECK(s.expected == ExpectedOutcome::NoBackflowExpected);
}

TEST_CASE("heat oracle exact solutions agree") {
    const auto s = heat_oracle(0.05);
    const double t = 0.1;
    // w(η) at η = u(y) equals ∂_y u(y)
    for (const double y : {0.1, 0.5, 1.2}) {
        const double h = 1e-6;
        const double dudy = (s.exact_u(t, y + h) - s.exact_u(t, y - h)) / (2 * h);
        CHECK(s.exact_w(t, s.exact_u(t, y)) == doctest::Approx(dudy).epsilon(1e-7));
    }
    CHECK(s.exact_u(0.0, 0.3) == doctest::Approx(s.u0(0.0, 0.3)));
    CHECK(s.exact_w(t, 1.0) == 0.0);
}
