#include "prandtl/scenarios.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "prandtl/errors.hpp"

namespace prandtl {

const char* to_string(ExpectedOutcome e) noexcept {
    switch (e) {
        case ExpectedOutcome::BackflowExpected: return "backflow-expected";
        case ExpectedOutcome::NoBackflowExpected: return "no-backflow-expected";
        case ExpectedOutcome::Oracle: return "oracle";
    }
    return "unknown";
}

namespace {

// u₀ = U_e(0,x)(1 − e^{−y}) and its Crocco image w = 1 − η.
void shear_layer_data(Scenario& s) {
    const OuterFlowModel m = s.model;
    s.u0 = [m](double x, double y) { return m.velocity(0.0, x) * -std::expm1(-y); };
    s.dudy0 = [m](double x, double y) { return m.velocity(0.0, x) * std::exp(-y); };
    s.w0 = [](double, double eta) { return 1.0 - eta; };
    s.w1 = [](double, double eta) { return 1.0 - eta; };
    s.u1 = [m](double t, double y) { return -std::expm1(-y) * m.velocity(t, 0.0); };
    s.notes["u0"] = "U_e(0,x)(1-exp(-y))";
    s.notes["inflow"] = "u0(0,y)*U_e(t,0)/U_e(0,0)";
}

}  // namespace

double example_4_1_c0() {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(
        [](double y) {
            const double d = std::exp(-y);
            const double u = -std::expm1(-y);
            return d / std::hypot(d, u);
        },
        0.0, std::numeric_limits<double>::infinity());
}

Scenario example_4_1(double L) {
    if (!(L > 0.0)) throw ConfigError("L: must be > 0");
    const double T = 4.0 / std::pow(L, 5.0);
    Scenario s("example4.1", OuterFlowModel::decaying_wedge(L, T));
    shear_layer_data(s);
    s.parameters["L"] = L;
    s.parameters["T"] = T;

    s.grid.n_x = 64;
    s.grid.n_y = 129;
    s.grid.y_max = 10.0;
    s.grid.stretch = 1.0;
    s.grid.n_xi = 64;
    s.grid.n_eta = 129;
    s.grid.eta_power = 2.0;
    s.grid.dt = std::min(2e-7, T / 64.0);
    s.grid.t_end = T;
    s.grid.solver = "both";
    s.condition_y_cut = 40.0;

    const double c0 = example_4_1_c0();
    s.parameters["c0"] = c0;
    s.condition_lower_bound = 0.4 * c0 * std::pow(L, 2.5);
    const auto k = lyapunov_constants(s.model, s.w1);
    const auto th = critical_threshold(ode_coefficients(k), T);
    s.reference_threshold = th.C_star;
    s.expected = (th.reachable && *s.condition_lower_bound >= th.C_star) ? ExpectedOutcome::BackflowExpected
                                                                         : ExpectedOutcome::NoBackflowExpected;
    s.notes["horizon"] = "T = 4/L^5";
    return s;
}

double example_4_2_phi(double y, double M, double alpha) {
    if (y <= M) return alpha * y;
    const double rest = 1.0 - alpha * M;
    return 1.0 - rest * std::exp(-alpha * (y - M) / rest);
}

double example_4_2_dphi(double y, double M, double alpha) {
    if (y <= M) return alpha;
    const double rest = 1.0 - alpha * M;
    return alpha * std::exp(-alpha * (y - M) / rest);
}

Scenario example_4_2(double M, double alpha, double horizon) {
    if (!(M >= 1.0)) throw ConfigError("M: must be >= 1");
    if (!(alpha > 0.0 && alpha * M < 1.0)) throw ConfigError("alpha: must satisfy 0 < alpha < 1/M");
    Scenario s("example4.2", OuterFlowModel::affine(1.0, horizon, 2.0, -1.0));
    const OuterFlowModel m = s.model;
    s.u0 = [m, M, alpha](double x, double y) { return m.velocity(0.0, x) * example_4_2_phi(y, M, alpha); };
    s.dudy0 = [m, M, alpha](double x, double y) { return m.velocity(0.0, x) * example_4_2_dphi(y, M, alpha); };
    const double k = alpha / (1.0 - alpha * M);
    const auto w = [alpha, M, k](double eta) { return eta <= alpha * M ? alpha : k * (1.0 - eta); };
    s.w0 = [w](double, double eta) { return w(eta); };
    s.w1 = [w](double, double eta) { return w(eta); };
    s.u1 = [m, M, alpha](double, double y) { return m.velocity(0.0, 0.0) * example_4_2_phi(y, M, alpha); };
    s.parameters["M"] = M;
    s.parameters["alpha"] = alpha;
    s.parameters["T"] = horizon;
    s.notes["u0"] = "U(x)phi(y), phi = alpha*y for y <= M, C1 exponential blend above";
    s.notes["inflow"] = "u0(0,y) frozen";

    s.grid.n_x = 64;
    s.grid.n_y = 129;
    s.grid.y_max = std::ceil(M + std::log((1.0 - alpha * M) / 5e-4) / k);
    s.grid.stretch = 1.0;
    s.grid.n_xi = 64;
    s.grid.n_eta = 129;
    s.grid.eta_power = 3.0;
    s.grid.dt = 1e-6;
    s.grid.t_end = horizon;
    s.grid.solver = "crocco";
    s.breakpoints = {M};
    s.condition_y_cut = s.grid.y_max;

    // lower bound against the threshold of λ₂ = 25/32, λ₀ − λ₁ = −(4√2 − 1)/5
    s.condition_lower_bound = 0.4 * std::asinh(M);
    const OdeCoefficients ref{25.0 / 32.0, 0.75, -(4.0 * std::sqrt(2.0) - 1.0) / 5.0};
    const auto th = critical_threshold(ref, horizon);
    s.reference_threshold = th.C_star;
    s.expected = (th.reachable && *s.condition_lower_bound >= th.C_star) ? ExpectedOutcome::BackflowExpected
                                                                         : ExpectedOutcome::NoBackflowExpected;
    return s;
}

Scenario favourable_control() {
    Scenario s("favourable", OuterFlowModel::affine(1.0, 1.0, 2.0, 1.0));
    shear_layer_data(s);
    s.parameters["T"] = 1.0;
    s.grid.n_x = 64;
    s.grid.n_y = 129;
    s.grid.y_max = 10.0;
    s.grid.n_xi = 64;
    s.grid.n_eta = 129;
    s.grid.eta_power = 2.0;
    s.grid.dt = 2e-3;
    s.grid.t_end = 1.0;
    s.grid.solver = "physical";
    s.expected = ExpectedOutcome::NoBackflowExpected;
    return s;
}

Scenario heat_oracle(double t0) {
    if (!(t0 > 0.0)) throw ConfigError("t0: must be > 0");
    const double T = 0.2;
    Scenario s("heat-oracle", OuterFlowModel::constant(1.0, T, 1.0));
    const auto exact_u = [t0](double t, double y) { return std::erf(y / (2.0 * std::sqrt(t + t0))); };
    const auto exact_w = [t0](double tau, double eta) {
        if (eta >= 1.0) return 0.0;
        const double z = boost::math::erf_inv(eta);
        return std::exp(-z * z) / std::sqrt(M_PI * (tau + t0));
    };
    s.exact_u = exact_u;
    s.exact_w = exact_w;
    s.u0 = [exact_u](double, double y) { return exact_u(0.0, y); };
    s.dudy0 = [t0](double, double y) { return std::exp(-y * y / (4.0 * t0)) / std::sqrt(M_PI * t0); };
    s.u1 = exact_u;
    s.w0 = [exact_w](double, double eta) { return exact_w(0.0, eta); };
    s.w1 = exact_w;
    s.parameters["t0"] = t0;
    s.parameters["T"] = T;
    s.notes["inflow"] = "exact similarity solution";
    s.grid.n_x = 16;
    s.grid.n_y = 257;
    s.grid.y_max = 8.0;
    s.grid.stretch = 1.0;
    s.grid.n_xi = 16;
    s.grid.n_eta = 257;
    s.grid.eta_power = 1.0;
    s.grid.dt = 1e-4;
    s.grid.t_end = T;
    s.grid.solver = "both";
    s.condition_y_cut = 8.0;
    s.expected = ExpectedOutcome::Oracle;
    return s;
}

std::vector<std::string> scenario_names() { return {"example4.1", "example4.2", "favourable", "heat-oracle"}; }

Scenario make_scenario(const std::string& name, const std::map<std::string, double>& params) {
    const auto get = [&](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "example4.1") return example_4_1(get("L", 3.0));
    if (name == "example4.2") {
        const double M = get("M", 50.0);
        return example_4_2(M, get("alpha", 0.5 / M), get("T", 0.5));
    }
    if (name == "favourable") return favourable_control();
    if (name == "heat-oracle") return heat_oracle(get("t0", 0.05));
    throw ConfigError("scenario: unknown name '" + name + "'");
}

}  // namespace prandtl
