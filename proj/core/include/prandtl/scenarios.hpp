#pragma once

// Ready-to-run cases: the long-plate and linear-profile examples, a
// favourable-gradient control and the x-independent heat-equation oracle.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prandtl/crocco_solver.hpp"
#include "prandtl/diagnostics.hpp"
#include "prandtl/outer_flow.hpp"
#include "prandtl/physical_solver.hpp"

namespace prandtl {

enum class ExpectedOutcome { BackflowExpected, NoBackflowExpected, Oracle };

const char* to_string(ExpectedOutcome e) noexcept;

struct GridDefaults {
    std::size_t n_x = 64;
    std::size_t n_y = 129;
    double y_max = 10.0;
    double stretch = 1.0;
    std::size_t n_xi = 64;
    std::size_t n_eta = 129;
    double eta_power = 1.0;
    std::size_t n_eta_diag = 33;  // η nodes used to evaluate G from a physical state
    double dt = 1e-3;
    double t_end = 1.0;
    std::string solver = "physical";
};

struct Scenario {
    Scenario(std::string name_, OuterFlowModel model_) : name(std::move(name_)), model(std::move(model_)) {}

    std::string name;
    OuterFlowModel model;
    InitialProfile u0;     // u₀(x, y)
    InitialProfile dudy0;  // ∂_y u₀(x, y)
    InflowProfile u1;      // u₁(t, y)
    CroccoProfile w0;      // w₀(ξ, η)
    CroccoInflow w1;       // w₁(τ, η)
    /// Exact solutions (oracle scenarios only).
    std::function<double(double t, double y)> exact_u;
    std::function<double(double tau, double eta)> exact_w;
    GridDefaults grid;
    ExpectedOutcome expected = ExpectedOutcome::NoBackflowExpected;
    /// Kinks of u₀ in y, and where the condition integral switches to its tail rule.
    std::vector<double> breakpoints;
    double condition_y_cut = 40.0;
    /// Closed-form lower bound of the condition integral, when one is known.
    std::optional<double> condition_lower_bound;
    /// Threshold the lower bound was compared with to set `expected`.
    std::optional<double> reference_threshold;
    std::map<std::string, double> parameters;
    std::map<std::string, std::string> notes;
};

/// U_e = e^{−L⁵t}(2L − x) on [0, L], T = 4/L⁵, u₀ = U_e(0,x)(1 − e^{−y}).
Scenario example_4_1(double L);

/// ∫₀^∞ ∂_yu₀ / √((∂_yu₀)² + u₀²) dy for the profile of example_4_1 (x-independent).
double example_4_1_c0();

/// U_e = 2 − x on [0, 1], u₀ = U_e φ(y) with φ = αy (y ≤ M) and an
/// exponential C¹ blend to 1 above M.  Requires M ≥ 1 and 0 < α < 1/M.
Scenario example_4_2(double M, double alpha, double horizon = 0.5);

/// φ and φ' of example_4_2.
double example_4_2_phi(double y, double M, double alpha);
double example_4_2_dphi(double y, double M, double alpha);

/// U_e = 2 + x on [0, 1] (∂_xP = −(2+x) ≤ 0), u₀ = U_e(0,x)(1 − e^{−y}).
Scenario favourable_control();

/// U_e ≡ 1, u₀ = erf(y/(2√t₀)); exact u = erf(y/(2√(t+t₀))).
Scenario heat_oracle(double t0);

/// Names accepted by make_scenario.
std::vector<std::string> scenario_names();

/// Builds a scenario by name; `params` may carry L (example4.1), M and alpha
/// (example4.2) or t0 (heat-oracle).  Throws ConfigError on unknown names.
Scenario make_scenario(const std::string& name, const std::map<std::string, double>& params = {});

}  // namespace prandtl
