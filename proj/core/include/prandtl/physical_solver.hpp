#pragma once

// Prandtl equations in physical variables on [0, L] × [0, Y_max]:
//
//   ∂_t u + u ∂_x u + v ∂_y u = ∂²_y u − ∂_x P,   ∂_x u + ∂_y v = 0,
//   u = v = 0 at y = 0,  u = U_e at y = Y_max,  u = u₁ at x = 0.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prandtl/numerics.hpp"
#include "prandtl/outer_flow.hpp"
#include "prandtl/run_types.hpp"

namespace prandtl {

/// u₀(x, y)
using InitialProfile = std::function<double(double x, double y)>;
/// u₁(t, y) or w₁(τ, η)
using InflowProfile = std::function<double(double t, double y)>;

class PhysicalGrid {
public:
    /// dt is clipped to cfl · 0.5 · Δx / max U_e.
    PhysicalGrid(const OuterFlowModel& model, std::size_t n_x, std::size_t n_y, double y_max, double stretch,
                 double dt, double cfl = 1.0);

    std::size_t n_x() const noexcept { return x_.size(); }
    std::size_t n_y() const noexcept { return y_.size(); }
    double length() const noexcept { return x_.back(); }
    double y_max() const noexcept { return y_.back(); }
    double stretch() const noexcept { return stretch_; }
    double dx() const noexcept { return dx_; }
    double dt() const noexcept { return dt_; }
    std::span<const double> x() const noexcept { return x_; }
    std::span<const double> y() const noexcept { return y_; }

private:
    double stretch_;
    double dx_;
    double dt_;
    std::vector<double> x_;
    std::vector<double> y_;
};

struct VelocityField {
    double t = 0.0;
    Field2D u;  // (n_x, n_y)
    Field2D v;
};

struct StepReport {
    double t_new = 0.0;
    double max_residual = 0.0;
    double min_wall_shear = 0.0;
    std::size_t argmin_index = 0;
    bool monotone_flag = true;
};

/// Everything a physical run needs besides the state.
struct PhysicalSetup {
    PhysicalGrid grid;
    OuterFlowModel model;
    InflowProfile inflow;           // u₁(t, y)
    double far_field_tol = 1e-3;    // relative to U_e
};

/// Samples u₀, validates it (u₀(x,0) = 0, u₀ > 0 above the wall, strictly
/// increasing in y until it saturates at U_e, far-field match) and fills v.
/// Throws MonotonicityError / DataError / TruncationError naming the worst node.
VelocityField init_physical(const PhysicalSetup& setup, const InitialProfile& u0);

/// v(x, y) = −∫₀^y ∂_x u dy' (trapezoid on the stretched grid).
Field2D compute_v(const Field2D& u, const PhysicalGrid& grid);

/// One semi-implicit step of size dt (dt = 0 returns the state unchanged).
std::pair<VelocityField, StepReport> step_physical(const VelocityField& state, const PhysicalSetup& setup,
                                                   double dt);

/// ∂_y u(t, x, 0) per x-column from the quadratic through (0,0), (y₁,u₁), (y₂,u₂).
/// `scale` multiplies the stencil (a fault-injection hook for the validation suite).
std::vector<double> wall_shear(const VelocityField& state, const PhysicalGrid& grid, double scale = 1.0);

/// Wall shear of a single column.
double column_wall_shear(std::span<const double> u, std::span<const double> y);

/// ∂²_y u at y = 0 from the cubic through (0,0) and the first three nodes.
double wall_curvature(std::span<const double> u, std::span<const double> y);

/// ∂_y u over the whole column (wall value from column_wall_shear).
std::vector<double> column_shear_profile(std::span<const double> u, std::span<const double> y);

struct PhysicalRun {
    DiagnosticSeries series;
    std::optional<BackFlowEvent> event;
    VelocityField last;                    // state at t_end, or last state before the event
    std::optional<VelocityField> crossed;  // first state past the event
    std::size_t steps = 0;
};

/// Called for the initial state (step 0) and after every accepted step; may
/// add G and check margins to the record.
using PhysicalObserver = std::function<void(const VelocityField&, DiagnosticRecord&)>;

/// Steps to stop.t_end or to the first wall-shear sign change, which is then
/// bracketed by re-stepping with halved dt.  x* is the most upstream column
/// whose wall shear is ≤ 0 just past the crossing.
PhysicalRun run_physical(VelocityField state, const PhysicalSetup& setup, const RunStop& stop,
                         const PhysicalObserver& observer = {});

}  // namespace prandtl
