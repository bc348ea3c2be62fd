#include <doctest.h>

#include <cmath>
#include <vector>

#include "prandtl/crocco_transform.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/numerics.hpp"

using namespace prandtl;

namespace {

struct Profile {
    std::vector<double> y, u, dudy;
};

// u = U(1 − e^{−y}) has w = 1 − η exactly.
Profile exponential(double ue, std::size_t n = 2001, double y_max = 25.0) {
    Profile p;
    p.y = stretched_nodes(y_max, n, 1.0);
    for (const double y : p.y) {
        p.u.push_back(-ue * std::expm1(-y));
        p.dudy.push_back(ue * std::exp(-y));
    }
    return p;
}

}  // namespace

TEST_CASE("forward map of the exponential profile is w = 1 - eta") {
    const auto p = exponential(2.0);
    const auto eta = uniform_nodes(0.0, 1.0, 65);
    const auto w = crocco_forward(p.y, p.u, p.dudy, 2.0, eta);
    REQUIRE(w.size() == eta.size());
    for (std::size_t j = 0; j < eta.size(); ++j) CHECK(w[j] == doctest::Approx(1.0 - eta[j]).epsilon(1e-4));
    CHECK(w.back() == 0.0);
}

TEST_CASE("inverse map of w = 1 - eta is y = -log(1 - eta)") {
    const auto eta = uniform_nodes(0.0, 1.0, 1025);
    std::vector<double> w;
    for (const double e : eta) w.push_back(1.0 - e);
    const auto inv = crocco_inverse(eta, w, 3.0);
    CHECK(inv.eta_cut < 1.0);
    for (std::size_t k = 0; k < inv.y.size(); ++k) {
        // exact for piecewise-linear w, and here w is linear
        CHECK(inv.y[k] == doctest::Approx(-std::log1p(-inv.eta[k])).epsilon(1e-10));
        CHECK(inv.u[k] == doctest::Approx(3.0 * inv.eta[k]));
    }
}

TEST_CASE("forward map rejects bad profiles") {
    auto p = exponential(1.0, 201);
    const auto eta = uniform_nodes(0.0, 1.0, 17);

    auto dip = p;
    dip.u[50] = dip.u[48];
    CHECK_THROWS_AS(crocco_forward(dip.y, dip.u, dip.dudy, 1.0, eta), MonotonicityError);

    auto neg = p;
    neg.dudy[10] = -1.0;
    CHECK_THROWS_AS(crocco_forward(neg.y, neg.u, neg.dudy, 1.0, eta), MonotonicityError);

    const auto short_profile = exponential(1.0, 201, 3.0);  // u(3)/U = 0.95
    CHECK_THROWS_AS(crocco_forward(short_profile.y, short_profile.u, short_profile.dudy, 1.0, eta), TruncationError);
}

TEST_CASE("inverse map rejects a vanishing interior shear") {
    const auto eta = uniform_nodes(0.0, 1.0, 9);
    std::vector<double> w(9, 0.5);
    w[4] = 0.0;
    w.back() = 0.0;
    CHECK_THROWS_AS(crocco_inverse(eta, w, 1.0), InvertibilityError);
}

TEST_CASE("Crocco coefficients") {
    const auto m = OuterFlowModel::exponential_linear(1.0, 1.0, 0.7, 2.0, -1.0);
    const double t = 0.3, xi = 0.4;
    const double U = m.velocity(t, xi), Ux = m.velocity_dx(t, xi), Ut = m.velocity_dt(t, xi);
    for (const double eta : {0.0, 0.25, 0.9, 1.0}) {
        const auto c = crocco_coefficients(m, t, xi, eta);
        CHECK(c.A == doctest::Approx((1 - eta * eta) * Ux + (1 - eta) * Ut / U).epsilon(1e-14));
        CHECK(c.B == doctest::Approx(eta * Ux + Ut / U).epsilon(1e-14));
        CHECK(crocco_coefficient_A_factored(m, t, xi, eta) == doctest::Approx(c.A).epsilon(1e-13));
    }
    // A vanishes on η = 1
    CHECK(crocco_coefficients(m, t, xi, 1.0).A == doctest::Approx(0.0));
}

TEST_CASE("auxiliary W") {
    CHECK(auxiliary_W(3.0, 4.0) == doctest::Approx(0.2));
    CHECK(std::isinf(auxiliary_W(0.0, 0.0)));
}

TEST_CASE("Crocco grid") {
    const CroccoGrid g(2.0, 9, 17, 2.0);
    CHECK(g.d_xi() == doctest::Approx(0.25));
    CHECK(g.eta()[8] == doctest::Approx(0.25));
    CHECK(g.d_eta() == doctest::Approx(1.0 / 256.0));
}
