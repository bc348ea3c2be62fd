#include "prandtl/outer_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "prandtl/errors.hpp"

namespace prandtl {

namespace {
// Slack for coordinates that land on the boundary up to rounding.
constexpr double kDomainSlack = 1e-12;
}  // namespace

OuterFlowModel::OuterFlowModel(Kind kind, double length, double horizon, double rate, double offset,
                               double slope)
    : kind_(kind), length_(length), horizon_(horizon), rate_(rate), offset_(offset), slope_(slope) {
    if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("outer flow: length L must be > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("outer flow: horizon T must be > 0");
    // U_e is a positive factor times an affine function of x, so positivity on
    // the sampling grid reduces to both end values; the grid scan is kept to
    // report the worst sample like the other checks.
    double worst = std::numeric_limits<double>::infinity();
    double wt = 0.0, wx = 0.0;
    for (std::size_t a = 0; a <= 100; ++a) {
        const double t = horizon * static_cast<double>(a) / 100.0;
        for (std::size_t b = 0; b <= 100; ++b) {
            const double x = length * static_cast<double>(b) / 100.0;
            const double u = velocity(t, x);
            if (u < worst) {
                worst = u;
                wt = t;
                wx = x;
            }
        }
    }
    if (!(worst > 0.0)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "outer flow: U_e must be > 0, found %.6g at (t=%.6g, x=%.6g)", worst,
                      wt, wx);
        throw DomainError(buf);
    }
}

OuterFlowModel OuterFlowModel::exponential_linear(double length, double horizon, double rate, double offset,
                                                  double slope) {
    return {Kind::ExponentialLinear, length, horizon, rate, offset, slope};
}

OuterFlowModel OuterFlowModel::decaying_wedge(double length, double horizon) {
    return exponential_linear(length, horizon, std::pow(length, 5), 2.0 * length, -1.0);
}

OuterFlowModel OuterFlowModel::affine(double length, double horizon, double offset, double slope) {
    return {Kind::AffineSteady, length, horizon, 0.0, offset, slope};
}

OuterFlowModel OuterFlowModel::constant(double length, double horizon, double value) {
    return {Kind::Constant, length, horizon, 0.0, value, 0.0};
}

OuterFlowModel OuterFlowModel::with_horizon(double horizon) const {
    return {kind_, length_, horizon, rate_, offset_, slope_};
}

std::string OuterFlowModel::kind_name() const {
    switch (kind_) {
        case Kind::ExponentialLinear: return "exponential-linear";
        case Kind::AffineSteady: return "affine-steady";
        case Kind::Constant: return "constant";
    }
    return "unknown";
}

void OuterFlowModel::check_domain(double t, double x) const {
    const double st = kDomainSlack * std::max(1.0, horizon_);
    const double sx = kDomainSlack * std::max(1.0, length_);
    if (!(t >= -st && t <= horizon_ + st && x >= -sx && x <= length_ + sx)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "outer flow: (t=%.6g, x=%.6g) outside [0, %.6g] x [0, %.6g]", t, x,
                      horizon_, length_);
        throw DomainError(buf);
    }
}

double OuterFlowModel::velocity(double t, double x) const {
    check_domain(t, x);
    return std::exp(-rate_ * t) * (offset_ + slope_ * x);
}

double OuterFlowModel::velocity_dt(double t, double x) const {
    check_domain(t, x);
    if (rate_ == 0.0) return 0.0;
    return -rate_ * std::exp(-rate_ * t) * (offset_ + slope_ * x);
}

double OuterFlowModel::velocity_dx(double t, double x) const {
    check_domain(t, x);
    return std::exp(-rate_ * t) * slope_;
}

double OuterFlowModel::pressure_gradient(double t, double x) const {
    return -(velocity_dt(t, x) + velocity(t, x) * velocity_dx(t, x));
}

double OuterFlowModel::max_velocity(std::size_t nt, std::size_t nx) const {
    double best = 0.0;
    for (std::size_t a = 0; a < nt; ++a) {
        const double t = horizon_ * static_cast<double>(a) / static_cast<double>(std::max<std::size_t>(nt - 1, 1));
        for (std::size_t b = 0; b < nx; ++b) {
            const double x = length_ * static_cast<double>(b) / static_cast<double>(std::max<std::size_t>(nx - 1, 1));
            best = std::max(best, std::abs(velocity(t, x)));
        }
    }
    return best;
}

const char* to_string(GradientClass c) noexcept {
    switch (c) {
        case GradientClass::Adverse: return "adverse";
        case GradientClass::Favourable: return "favourable";
        case GradientClass::Mixed: return "mixed";
    }
    return "mixed";
}

GradientReport classify_gradient(const OuterFlowModel& model, std::size_t nt, std::size_t nx) {
    if (nt < 2 || nx < 2) throw std::invalid_argument("classify_gradient: nt, nx must be >= 2");
    GradientReport r;
    r.min_grad = std::numeric_limits<double>::infinity();
    r.max_grad = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < nt; ++a) {
        const double t = model.horizon() * static_cast<double>(a) / static_cast<double>(nt - 1);
        for (std::size_t b = 0; b < nx; ++b) {
            const double x = model.length() * static_cast<double>(b) / static_cast<double>(nx - 1);
            const double g = model.pressure_gradient(t, x);
            ++r.n_samples;
            if (g > 0.0) ++r.n_positive;
            if (g < r.min_grad) {
                r.min_grad = g;
                r.t_at_min = t;
                r.x_at_min = x;
            }
            r.max_grad = std::max(r.max_grad, g);
        }
    }
    if (r.min_grad > 0.0) {
        r.classification = GradientClass::Adverse;
    } else if (r.max_grad <= 0.0) {
        r.classification = GradientClass::Favourable;
    } else {
        r.classification = GradientClass::Mixed;
    }
    return r;
}

}  // namespace prandtl
