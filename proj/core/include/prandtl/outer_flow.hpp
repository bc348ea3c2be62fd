#pragma once

#include <cstddef>
#include <string>

namespace prandtl {

/// Outer Euler velocity trace U_e(t, x) on [0, T] × [0, L].
///
/// All built-in forms are members of the family
///
///     U_e(t, x) = e^{−rate·t} · (offset + slope·x)
///
/// with hand-coded derivatives, so U_e, ∂_t U_e, ∂_x U_e and the Bernoulli
/// pressure gradient are exact.  The object is immutable once built.
class OuterFlowModel {
public:
    enum class Kind { ExponentialLinear, AffineSteady, Constant };

    /// e^{−rate t}(offset + slope x).
    static OuterFlowModel exponential_linear(double length, double horizon, double rate, double offset,
                                             double slope);
    /// U_e = e^{−L⁵ t}(2L − x), the long-plate example.
    static OuterFlowModel decaying_wedge(double length, double horizon);
    /// U_e = offset + slope x, independent of t.
    static OuterFlowModel affine(double length, double horizon, double offset, double slope);
    static OuterFlowModel constant(double length, double horizon, double value);

    Kind kind() const noexcept { return kind_; }
    std::string kind_name() const;
    double length() const noexcept { return length_; }
    double horizon() const noexcept { return horizon_; }
    double rate() const noexcept { return rate_; }
    double offset() const noexcept { return offset_; }
    double slope() const noexcept { return slope_; }

    /// U_e(t, x).  Throws DomainError outside [0, T] × [0, L].
    double velocity(double t, double x) const;
    double velocity_dt(double t, double x) const;
    double velocity_dx(double t, double x) const;

    /// ∂_x P = −(∂_t U_e + U_e ∂_x U_e)  (Bernoulli).
    double pressure_gradient(double t, double x) const;

    /// max of U_e over a sampling grid; used for CFL limits.
    double max_velocity(std::size_t nt = 101, std::size_t nx = 101) const;

    /// Same family, different horizon (the validity check is repeated).
    OuterFlowModel with_horizon(double horizon) const;

private:
    OuterFlowModel(Kind kind, double length, double horizon, double rate, double offset, double slope);
    void check_domain(double t, double x) const;

    Kind kind_;
    double length_;
    double horizon_;
    double rate_;
    double offset_;
    double slope_;
};

enum class GradientClass { Adverse, Favourable, Mixed };

const char* to_string(GradientClass c) noexcept;

struct GradientReport {
    GradientClass classification = GradientClass::Mixed;
    double min_grad = 0.0;
    double max_grad = 0.0;
    double t_at_min = 0.0;
    double x_at_min = 0.0;
    std::size_t n_samples = 0;
    std::size_t n_positive = 0;
};

/// Samples ∂_x P on an nt × nx uniform grid of [0, T] × [0, L].
/// adverse ⇔ min > 0, favourable ⇔ max ≤ 0, otherwise mixed.
GradientReport classify_gradient(const OuterFlowModel& model, std::size_t nt = 101, std::size_t nx = 101);

}  // namespace prandtl
