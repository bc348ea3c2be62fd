#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "prandtl/diagnostics.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/scenarios.hpp"

using namespace prandtl;

namespace {

// ∫₀¹ dη/√((1−η)² + η²)
const double kLinearProfileIntegral = std::sqrt(2.0) * std::asinh(1.0);

}  // namespace

TEST_CASE("Lyapunov functional of simple profiles") {
    const double L = 2.0;
    const auto xi = uniform_nodes(0.0, L, 2049);
    const auto eta = uniform_nodes(0.0, 1.0, 33);
    const double weight = 0.4 * std::pow(L, 2.5);

    const Field2D ones(xi.size(), eta.size(), 1.0);
    CHECK(lyapunov_G(ones, xi, eta) == doctest::Approx(weight * std::asinh(1.0)).epsilon(1e-6));

    Field2D lin(xi.size(), eta.size());
    for (std::size_t i = 0; i < xi.size(); ++i)
        for (std::size_t j = 0; j < eta.size(); ++j) lin(i, j) = 1.0 - eta[j];
    CHECK(lyapunov_G(lin, xi, eta) == doctest::Approx(weight * kLinearProfileIntegral).epsilon(1e-6));

    lin(7, 0) = 0.0;
    CHECK(std::isinf(lyapunov_G(lin, xi, eta)));
}

TEST_CASE("Richardson refinement improves the xi quadrature") {
    const auto xi = uniform_nodes(0.0, 1.0, 65);
    const auto eta = uniform_nodes(0.0, 1.0, 9);
    const Field2D ones(65, 9, 1.0);
    const double exact = 0.4 * std::asinh(1.0);
    CHECK(std::abs(lyapunov_G_richardson(ones, xi, eta) - exact) < std::abs(lyapunov_G(ones, xi, eta) - exact));
}

TEST_CASE("constants for a frozen outer flow") {
    const double L = 1.5, U = 2.0, p = 3.0;
    CHECK(lyapunov_C0(L, U, [](double) { return 1.0; }) ==
          doctest::Approx(std::pow(L, 1.5) * U * (std::sqrt(2.0) - 1.0)).epsilon(1e-10));
    const auto ue = [&](double) { return U; };
    const auto px = [&](double) { return p; };
    CHECK(lyapunov_C1(ue, px, L) == doctest::Approx(0.5 * L * U * U / std::sqrt(p)).epsilon(1e-10));
    const double inner = 2.0 * std::sqrt(U / p) * 0.4 * std::pow(L, 2.5);
    CHECK(lyapunov_C2(ue, px, L) == doctest::Approx(0.5 / (inner * inner)).epsilon(1e-8));
}

TEST_CASE("constants require an adverse gradient") {
    const auto s = favourable_control();
    CHECK_THROWS_AS(lyapunov_constants(s.model, s.w1), PreconditionError);
    const auto a = example_4_1(3.0);
    const auto k = lyapunov_constants(a.model, a.w1);
    CHECK(k.lambda2 > 0.0);
    CHECK(k.lambda0 == doctest::Approx(*std::min_element(k.C0.begin(), k.C0.end())));
    CHECK(k.lambda1 == doctest::Approx(*std::max_element(k.C1.begin(), k.C1.end())));
    const auto c = ode_coefficients(k);
    CHECK(c.linear == 0.75);
    CHECK(c.constant == doctest::Approx(k.lambda0 - k.lambda1));
}

TEST_CASE("comparison ODE closed forms") {
    const auto b = comparison_ode(2.0, OdeCoefficients{1.0, 0.0, 0.0}, 1.0);
    REQUIRE(b.blowup_time.has_value());
    CHECK(*b.blowup_time == doctest::Approx(0.125).epsilon(1e-6));

    // G' = G³ − G from G₀ = 1 sits on the equilibrium
    const auto eq = comparison_ode(1.0, OdeCoefficients{1.0, 1.0, 0.0}, 2.0);
    CHECK_FALSE(eq.blowup_time.has_value());
    CHECK(eq.trajectory.back().G == doctest::Approx(1.0).epsilon(1e-8));

    const auto down = comparison_ode(0.1, OdeCoefficients{1.0, 0.0, -10.0}, 1.0);
    CHECK(down.collapsed);
    CHECK_FALSE(down.blowup_time.has_value());
}

TEST_CASE("cubic root and threshold") {
    CHECK(largest_cubic_root(OdeCoefficients{1.0, 1.0, 0.0}) == doctest::Approx(1.0));
    const double r = largest_cubic_root(OdeCoefficients{2.0, 0.75, 0.1});
    CHECK(2.0 * r * r * r - 0.75 * r + 0.1 == doctest::Approx(0.0).epsilon(1e-12));

    // G' = G³ blows up at 1/(2G₀²), so C* = 1/√(2T)
    const auto th = critical_threshold(OdeCoefficients{1.0, 0.0, 0.0}, 2.0);
    CHECK(th.reachable);
    CHECK(th.C_star == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("condition integral of the exponential profile") {
    CHECK(example_4_1_c0() == doctest::Approx(kLinearProfileIntegral).epsilon(1e-10));
    const double L = 1.7;
    const auto u0 = [&](double x, double y) { return (2 * L - x) * -std::expm1(-y); };
    const auto du = [&](double x, double y) { return (2 * L - x) * std::exp(-y); };
    const auto c = condition_1_10(u0, du, L, 40.0);
    CHECK(c.total() == doctest::Approx(0.4 * std::pow(L, 2.5) * kLinearProfileIntegral).epsilon(1e-8));
    CHECK(c.tail >= 0.0);
    CHECK(c.tail < 1e-10);
    CHECK_THROWS_AS(condition_1_10(u0, [](double, double) { return -1.0; }, L, 40.0), DataError);
}

TEST_CASE("shear growth bound tracker") {
    Field2D base(4, 5, 1.0);
    Field2D grown(4, 5, 1.0);
    grown(2, 1) = 1.2;

    Lemma21Tracker flat(0.0);
    flat.observe(0.0, base);
    CHECK(flat.observe(0.5, grown) == doctest::Approx(1.05 - 1.44));
    CHECK_FALSE(flat.report().pass());

    Lemma21Tracker fast(std::log(1.44) / 0.5);
    fast.observe(0.0, base);
    fast.observe(0.5, grown);
    CHECK(fast.report().worst_ratio == doctest::Approx(1.0));
    CHECK(fast.report().pass());
}

TEST_CASE("shear growth rate of the long-plate flow") {
    const double L = 3.0;
    const auto m = OuterFlowModel::decaying_wedge(L, 4.0 / std::pow(L, 5));
    // −2B = 2(ηe^{−L⁵τ} + L⁵), largest at η = 1, τ = 0
    CHECK(lemma21_rate(m, uniform_nodes(0.0, L, 9), uniform_nodes(0.0, 1.0, 9)) ==
          doctest::Approx(2.0 * (1.0 + std::pow(L, 5))));
}

TEST_CASE("discrete inequality on an exact trajectory") {
    const OdeCoefficients k{1.0, 0.0, 0.0};
    std::vector<double> tau, G, Gbad;
    for (int s = 0; s <= 100; ++s) {
        const double t = 0.4 * s / 100.0;
        tau.push_back(t);
        G.push_back(1.0 / std::sqrt(1.0 - 2.0 * t));
        Gbad.push_back(1.0 - t);
    }
    const auto good = discrete_lyapunov_inequality(tau, G, k);
    CHECK(good.n_checked == 100);
    CHECK(good.fraction() == 1.0);
    const auto bad = discrete_lyapunov_inequality(tau, Gbad, k, 0.05, 10);
    CHECK(bad.n_checked == 90);
    CHECK(bad.fraction() == 0.0);
    CHECK(std::isnan(bad.margins.back()));
}

TEST_CASE("event column inspection") {
    const auto y = uniform_nodes(0.0, 4.0, 81);
    std::vector<double> u;
    for (const double v : y) u.push_back(0.1 * v + v * v);
    const auto rep = inspect_event_column(u, y);
    CHECK(rep.wall_is_minimizer);
    CHECK(rep.wall_shear == doctest::Approx(0.1).epsilon(1e-10));

    std::vector<double> dip;
    // ∂_y u = 1 − 0.9 sin y dips to 0.1 at y = π/2
    for (const double v : y) dip.push_back(v + 0.9 * std::cos(v) - 0.9);
    CHECK_FALSE(inspect_event_column(dip, y).wall_is_minimizer);
}

TEST_CASE("cross validation of identical series") {
    DiagnosticSeries a;
    for (int s = 0; s < 5; ++s) a.records.push_back({static_cast<std::size_t>(s), 0.1 * s, 1.0 + s, 0.0, 0.0, {}, {}});
    auto b = a;
    CHECK(cross_validate(a, b, 1.0).rel_linf == 0.0);
    b.records[2].min_wall_shear *= 1.1;
    // scaled by the sup of the first series
    CHECK(cross_validate(a, b, 1.0).rel_linf == doctest::Approx(0.3 / 5.0));
}

TEST_CASE("physical state mapped to Crocco variables") {
    const auto s = example_4_1(1.0);
    const PhysicalSetup setup{PhysicalGrid(s.model, 5, 801, 25.0, 1.0, 1e-3), s.model, s.u1, 1e-3};
    const auto st = init_physical(setup, s.u0);
    const auto eta = uniform_nodes(0.0, 1.0, 17);
    const auto w = physical_to_crocco(st, setup.grid, s.model, eta);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 17; ++j) CHECK(w(i, j) == doctest::Approx(1.0 - eta[j]).epsilon(2e-3));
}

TEST_CASE("threshold limits and monotone dependence") {
    // without a constant term the equilibrium √(0.75/λ₂) is the long-horizon threshold
    const OdeCoefficients k{25.0 / 32.0, 0.75, 0.0};
    const auto far = critical_threshold(k, 1e3);
    CHECK(far.C_star == doctest::Approx(std::sqrt(0.96)).epsilon(1e-6));
    CHECK(far.C_star > std::sqrt(0.96));
    CHECK(critical_threshold(k, 1e-6).C_star > 100.0);
    const OdeCoefficients doubled{2.0 * k.lambda2, k.linear, k.constant};
    CHECK(critical_threshold(doubled, 1.0).C_star < critical_threshold(k, 1.0).C_star);
}

TEST_CASE("linear-profile condition grows like (2/5) log M") {
    const auto value = [](double M) {
        const auto s = example_4_2(M, 0.5 / M);
        return condition_1_10(s.u0, s.dudy0, 1.0, s.condition_y_cut, s.breakpoints).total();
    };
    const double increment = value(100.0) - value(10.0);
    CHECK(increment == doctest::Approx(0.4 * std::log(10.0)).epsilon(0.05));
}
