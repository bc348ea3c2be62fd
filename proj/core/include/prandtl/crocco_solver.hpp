#pragma once

// Transformed problem for w(τ, ξ, η) = ∂_y u / U_e:
//
//   ∂_τ w + ηU_e ∂_ξ w + A ∂_η w + B w = w² ∂²_η w,
//   w ∂_η w = ∂_ξP / U_e at η = 0,   w = 0 at η = 1,   w = w₁ at ξ = 0.
//
// Below η = ½ each column is advanced in f = w², which is nearly linear in η
// at the wall and turns the wall condition into ∂_η f = 2∂_ξP/U_e; above it
// in w.  Both forms are implicit in η with coefficients iterated to
// convergence within the step.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "prandtl/crocco_transform.hpp"
#include "prandtl/outer_flow.hpp"
#include "prandtl/physical_solver.hpp"
#include "prandtl/run_types.hpp"

namespace prandtl {

/// w₀(ξ, η)
using CroccoProfile = std::function<double(double xi, double eta)>;

struct CroccoSetup {
    CroccoGrid grid;
    OuterFlowModel model;
    InflowProfile inflow;  // w₁(τ, η)
    double dt = 0.0;
    /// 1: two-point ∂_η(w²) = 2g;  2: three-point one-sided ∂_η(w²) = 2g.
    int wall_order = 2;
    /// Interior values in [−clamp_tol, 0) are clamped to 0 silently; deeper
    /// undershoots are clamped too but reported.
    double clamp_tol = 1e-10;
};

/// dt clipped to cfl · 0.5 · Δξ / max U_e (the ξ-advection limit; η-advection is implicit).
double crocco_time_step(const OuterFlowModel& model, const CroccoGrid& grid, double dt, double cfl = 1.0);

struct CroccoStepReport {
    double t_new = 0.0;
    double max_residual = 0.0;
    double min_wall_shear = 0.0;  // min over ξ of U_e·w(ξ, 0)
    std::size_t argmin_index = 0;
    bool backflow_signal = false;
    std::size_t signal_index = 0;  // most upstream signalling column
    std::size_t n_clamped = 0;
    double min_interior = 0.0;     // most negative interior value before clamping (0 if none)
};

/// Samples w₀ and checks w₀ > 0 below η = 1 and w₀(·, 1) = 0.
ShearField init_crocco(const CroccoProfile& w0, const CroccoSetup& setup);

struct WallClosure {
    double value = 0.0;     // w(ξ, 0)
    double radicand = 0.0;  // w(ξ, 0)² before the square root
    bool signal = false;    // radicand ≤ 0: the wall shear has vanished
};

/// w(0) = sqrt(w(Δη)² − 2Δη·g) with g = ∂_ξP/U_e; signals when the radicand is ≤ 0.
WallClosure wall_closure(double w_first, double grad_p_over_ue, double d_eta);

/// Second-order variant from (0, η₁, η₂): c₀f₀ + c₁f₁ + c₂f₂ = 2g with f = w².
WallClosure wall_closure2(double w1, double w2, double eta1, double eta2, double grad_p_over_ue);

/// Closure of one column using setup.wall_order.
WallClosure column_closure(std::span<const double> w, std::span<const double> eta, double g, int order);

/// One semi-implicit step of size dt.
std::pair<ShearField, CroccoStepReport> step_crocco(const ShearField& state, const CroccoSetup& setup, double dt);

/// Pointwise residual |∂_τw + ηU∂_ξw + A∂_ηw + Bw − w²∂²_ηw| of a computed step,
/// maximised over interior nodes with ξ > 0 (all terms differenced at the new level).
double crocco_residual(const ShearField& before, const ShearField& after, const CroccoSetup& setup);

/// U_e(τ, ξ_i)·w(τ, ξ_i, 0).
std::vector<double> crocco_wall_shear(const ShearField& state, const CroccoSetup& setup);

/// ∂²_y u at the wall recovered as U_e·½∂_η(w²) (three-point one-sided).
double crocco_wall_curvature(std::span<const double> w, std::span<const double> eta, double ue);

struct CroccoRun {
    DiagnosticSeries series;
    std::optional<BackFlowEvent> event;
    ShearField last;
    std::optional<ShearField> crossed;
    std::size_t steps = 0;
    std::size_t n_clamped = 0;
    double min_interior = 0.0;
};

using CroccoObserver = std::function<void(const ShearField&, DiagnosticRecord&)>;

/// Analogue of run_physical: the event is the first column whose wall value
/// w(ξ, 0)² (stored as a signed root) is ≤ 0,
/// bracketed by bisection; x* is the most upstream signalling column.
CroccoRun run_crocco(ShearField state, const CroccoSetup& setup, const RunStop& stop,
                     const CroccoObserver& observer = {});

}  // namespace prandtl
