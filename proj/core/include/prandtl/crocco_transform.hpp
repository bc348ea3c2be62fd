#pragma once

// Crocco change of variables (t, x, y) → (τ, ξ, η = u/U_e) with the normalized
// shear w = ∂_y u / U_e as the unknown.

#include <cstddef>
#include <span>
#include <vector>

#include "prandtl/numerics.hpp"
#include "prandtl/outer_flow.hpp"

namespace prandtl {

/// Nodes on [0, L] × [0, 1].  ξ is uniform; η is uniform for eta_power = 1
/// and packed toward the wall as η = s^eta_power otherwise.
class CroccoGrid {
public:
    CroccoGrid(double length, std::size_t n_xi, std::size_t n_eta, double eta_power = 1.0);

    std::size_t n_xi() const noexcept { return xi_.size(); }
    std::size_t n_eta() const noexcept { return eta_.size(); }
    double length() const noexcept { return length_; }
    double d_xi() const noexcept { return d_xi_; }
    /// Spacing of the first η cell (equals 1/(n_eta − 1) on the uniform grid).
    double d_eta() const noexcept { return eta_[1] - eta_[0]; }
    double eta_power() const noexcept { return eta_power_; }
    std::span<const double> xi() const noexcept { return xi_; }
    std::span<const double> eta() const noexcept { return eta_; }

private:
    double length_;
    double d_xi_;
    double eta_power_;
    std::vector<double> xi_;
    std::vector<double> eta_;
};

/// w(τ, ξ_i, η_j) on a CroccoGrid; values(i, ·) is one ξ-column.
struct ShearField {
    double tau = 0.0;
    Field2D values;
};

struct ForwardOptions {
    /// Accept the profile if u(y_max)/U_e ≥ 1 − truncation_tol.
    double truncation_tol = 1e-3;
};

/// Maps a monotone physical profile to Crocco shear samples at `eta_nodes`.
/// w(η) = (∂_y u / U_e) at the height where u/U_e = η, by monotone cubic
/// interpolation in η; w(1) = 0.  Samples past the last strictly increasing
/// node are dropped when they already sit within the truncation tolerance of
/// U_e (saturated tails); targets above the last sampled η are filled by a
/// straight line to w(1) = 0.
///
/// Throws MonotonicityError if u is not increasing or ∂_y u ≤ 0, and
/// TruncationError if the profile stops short of U_e.
std::vector<double> crocco_forward(std::span<const double> y, std::span<const double> u,
                                   std::span<const double> dudy, double ue, std::span<const double> eta_nodes,
                                   const ForwardOptions& opts = {});

struct InverseProfile {
    /// Integration stops at the last node below η = 1 (w vanishes there).
    double eta_cut = 0.0;
    std::vector<double> eta;
    std::vector<double> y;
    std::vector<double> u;
};

/// y(η) = ∫₀^η dη'/w(η'), u = η·U_e.  Cells are integrated exactly for w
/// linear between nodes.  Throws InvertibilityError if w ≤ 0 below η = 1.
InverseProfile crocco_inverse(std::span<const double> eta, std::span<const double> w, double ue);

struct CroccoCoefficients {
    double A;
    double B;
};

/// A = (1−η²)∂_ξU_e + (1−η)∂_τU_e/U_e,  B = η∂_ξU_e + ∂_τU_e/U_e.
CroccoCoefficients crocco_coefficients(const OuterFlowModel& model, double t, double xi, double eta);

/// The factored form (1−η)[(1+η)∂_ξU_e + ∂_τU_e/U_e] of A.
double crocco_coefficient_A_factored(const OuterFlowModel& model, double t, double xi, double eta);

/// W = (w² + η²)^{-1/2}; +inf at w = η = 0 (the back-flow signature).
double auxiliary_W(double w, double eta) noexcept;

}  // namespace prandtl
