#pragma once

// Lyapunov functional, comparison ODE, critical threshold and the runtime
// theorem checks.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prandtl/crocco_transform.hpp"
#include "prandtl/outer_flow.hpp"
#include "prandtl/physical_solver.hpp"
#include "prandtl/run_types.hpp"

namespace prandtl {

// ---------------------------------------------------------------------------
// Lyapunov functional  G = ∫₀¹∫₀^L (w² + η²)^{-1/2} (L − ξ)^{3/2} dξ dη

/// Trapezoid in ξ; in η each cell is integrated exactly for w linear between
/// nodes (this covers the singular first cell).  +inf if w(ξ, 0) ≤ 0 at any
/// ξ < L.
double lyapunov_G(const Field2D& w, std::span<const double> xi, std::span<const double> eta);
double lyapunov_G(const ShearField& w, const CroccoGrid& grid);

/// (4·G_h − G_2h)/3 with G_2h on every second node in both directions
/// (falls back to G_h when a count is even).
double lyapunov_G_richardson(const Field2D& w, std::span<const double> xi, std::span<const double> eta);

/// Maps every column of a physical state to Crocco variables on `eta`
/// (column shear from the wall stencil, monotone interpolation).
Field2D physical_to_crocco(const VelocityField& state, const PhysicalGrid& grid, const OuterFlowModel& model,
                           std::span<const double> eta, double truncation_tol = 1e-3);

// ---------------------------------------------------------------------------
// Constants of the comparison inequality

/// w₁(τ, η)
using CroccoInflow = std::function<double(double tau, double eta)>;

struct LyapunovConstants {
    std::vector<double> tau;
    std::vector<double> C0;
    std::vector<double> C1;
    std::vector<double> C2;
    double lambda0 = 0.0;  // inf C₀
    double lambda1 = 0.0;  // sup C₁
    double lambda2 = 0.0;  // inf C₂
};

/// C₀ = L^{3/2} U_e(τ,0) ∫₀¹ η/√(w₁² + η²) dη
/// C₁ = ½ ∫₀^L (U_e⁴/∂_ξP)^{1/2} dξ
/// C₂ = ½ (2 ∫₀^L (U_e/∂_ξP)^{1/2} (L − ξ)^{3/2} dξ)^{-2}
/// at one instant, from η ↦ w₁, ξ ↦ U_e and ξ ↦ ∂_ξP.
double lyapunov_C0(double L, double ue_at_inflow, const std::function<double(double)>& w1);
double lyapunov_C1(const std::function<double(double)>& ue, const std::function<double(double)>& px, double L);
double lyapunov_C2(const std::function<double(double)>& ue, const std::function<double(double)>& px, double L);

/// C₀, C₁, C₂ at n_samples uniform τ in [0, T] and their extrema.  Throws
/// PreconditionError unless the gradient is adverse.
LyapunovConstants lyapunov_constants(const OuterFlowModel& model, const CroccoInflow& w1,
                                     std::size_t n_samples = 65);

/// G' = λ₂G³ − linear·G + constant
struct OdeCoefficients {
    double lambda2 = 0.0;
    double linear = 0.75;
    double constant = 0.0;  // λ₀ − λ₁
};

OdeCoefficients ode_coefficients(const LyapunovConstants& k);

struct OdeSample {
    double t;
    double G;
};

struct OdeBound {
    double G0 = 0.0;
    std::optional<double> blowup_time;
    bool collapsed = false;  // trajectory reached G ≤ 0 (no blow-up possible from there)
    std::vector<OdeSample> trajectory;
};

struct OdeOptions {
    double blowup_level = 1e6;
    double rel_tol = 1e-11;
    double abs_tol = 1e-12;
    bool keep_trajectory = true;
};

/// Adaptive Dormand–Prince integration of the comparison ODE on [0, T].
OdeBound comparison_ode(double G0, const OdeCoefficients& k, double T, const OdeOptions& opts = {});

/// Largest real root of λ₂G³ − linear·G + constant (λ₂ > 0).
double largest_cubic_root(const OdeCoefficients& k);

struct ThresholdResult {
    double C_star = 0.0;
    double G_c = 0.0;  // largest real root
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
    bool reachable = true;
};

/// C* = the smallest G0 whose trajectory blows up before T.  Bisection between
/// max(G_c, 0) and an upper bracket found by doubling.  reachable = false when
/// no bracket blows up.
ThresholdResult critical_threshold(const OdeCoefficients& k, double T, int iterations = 60);

// ---------------------------------------------------------------------------
// Sufficient condition  ∫₀^∞∫₀^L (L−x)^{3/2} ∂_y u₀ / √((∂_y u₀)² + u₀²) dx dy

struct ConditionValue {
    double core = 0.0;  // y ∈ [0, y_cut]
    double tail = 0.0;  // y ∈ [y_cut, ∞)
    double total() const noexcept { return core + tail; }
};

/// Adaptive Gauss–Kronrod in x and y (split at `breakpoints`), double-exponential
/// tail.  Throws DataError on a negative ∂_y u₀ sample.
ConditionValue condition_1_10(const InitialProfile& u0, const InitialProfile& dudy0, double L, double y_cut,
                              std::span<const double> breakpoints = {});

// ---------------------------------------------------------------------------
// Runtime checks

struct Lemma21Report {
    double N = 0.0;              // max(0, sup(−2B))
    double reference = 0.0;      // max(sup w₀², sup w₁²)
    double worst_ratio = 0.0;    // sup over levels of e^{−Nτ} sup w² / reference
    double final_level_ratio = 1.0;
    double allowance = 0.05;
    std::size_t levels = 0;
    double margin() const noexcept { return 1.0 + allowance - worst_ratio; }
    bool pass() const noexcept { return margin() >= 0.0; }
};

/// N = max(0, sup −2B) over the grid and n_tau samples of [0, T].
double lemma21_rate(const OuterFlowModel& model, std::span<const double> xi, std::span<const double> eta,
                    std::size_t n_tau = 65);

/// Incremental form: feed levels in time order.  Column 0 is the inflow.
class Lemma21Tracker {
public:
    Lemma21Tracker(double N, double allowance = 0.05) : N_(N), allowance_(allowance) {}
    /// Returns the running margin.
    double observe(double tau, const Field2D& w);
    Lemma21Report report() const;

private:
    double N_;
    double allowance_;
    double sup_w0_sq_ = 0.0;
    double sup_w1_sq_ = 0.0;
    std::vector<double> scaled_;  // e^{−Nτ} sup w² per level
};

Lemma21Report check_lemma21(std::span<const ShearField> history, const OuterFlowModel& model,
                            const CroccoGrid& grid, double allowance = 0.05);

struct PositivityReport {
    bool pass = true;
    bool pre_retardation = true;  // no column has fallen below 50% of its initial wall shear
    double min_interior = 0.0;     // min over checked columns of min_{0<y≤Y/2} ∂_y u
    double min_wall = 0.0;
    std::size_t worst_column = 0;
    std::string detail;
};

/// Interior minimum of ∂_y u over y ∈ (0, Y_max/2] must stay > 0 and, once
/// the wall shear has dropped below half its initial value, above the wall
/// value.  Column 0 (inflow data) is skipped.
PositivityReport check_interior_positivity(const VelocityField& state, const PhysicalGrid& grid,
                                           std::span<const double> initial_wall_shear);

struct EventProfileReport {
    bool wall_is_minimizer = false;
    double wall_shear = 0.0;
    double interior_min = 0.0;  // over (0, Y_max/2]
    std::size_t argmin = 0;
};

/// ∂_y u over a single column.
EventProfileReport inspect_event_column(std::span<const double> u, std::span<const double> y);

struct WallCompatibilityReport {
    double worst_rel = 0.0;
    double worst_t = 0.0;
    std::size_t worst_column = 0;
    std::size_t samples = 0;
};

/// max over columns 1.. of |∂²_y u(x,0) − ∂_xP| / |∂_xP|.
WallCompatibilityReport wall_compatibility(const VelocityField& state, const PhysicalGrid& grid,
                                           const OuterFlowModel& model);

struct InequalityReport {
    std::size_t n_checked = 0;
    std::size_t n_pass = 0;
    std::size_t worst_step = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::vector<double> margins;  // one per forward difference (NaN where excluded)
    double fraction() const noexcept {
        return n_checked == 0 ? 1.0 : static_cast<double>(n_pass) / static_cast<double>(n_checked);
    }
};

/// (G_{k+1} − G_k)/Δτ ≥ λ₂G_k³ − linear·G_k + constant − tol, tol = rel_tol·max(1, λ₂G_k³).
/// The last `exclude_last` differences and any non-finite G are skipped.
InequalityReport discrete_lyapunov_inequality(std::span<const double> tau, std::span<const double> G,
                                              const OdeCoefficients& k, double rel_tol = 0.05,
                                              std::size_t exclude_last = 0);

struct CrossValidation {
    double rel_linf = 0.0;
    std::size_t samples = 0;
};

/// Relative L∞ difference of min wall shear on the common times t ≤ t_limit
/// (the second series is interpolated linearly onto the first).
CrossValidation cross_validate(const DiagnosticSeries& a, const DiagnosticSeries& b, double t_limit);

}  // namespace prandtl
