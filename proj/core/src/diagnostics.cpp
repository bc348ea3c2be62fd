#include "prandtl/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "prandtl/errors.hpp"

namespace prandtl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
double gk(F&& f, double a, double b, double tol = 1e-12) {
    if (!(b > a)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

double column_inverse_hypot(std::span<const double> w, std::span<const double> eta) {
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < eta.size(); ++j) sum += inverse_hypot_cell(eta[j], eta[j + 1], w[j], w[j + 1]);
    return sum;
}

}  // namespace

double lyapunov_G(const Field2D& w, std::span<const double> xi, std::span<const double> eta) {
    const std::size_t nx = xi.size();
    if (nx < 2) return 0.0;
    const double L = xi.back();
    if (!(L > xi.front())) return 0.0;
    std::vector<double> f(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        const double phi = std::pow(L - xi[i], 1.5);
        if (phi == 0.0) continue;
        const auto col = w.column(i);
        if (!(col[0] > 0.0)) return kInf;
        f[i] = phi * column_inverse_hypot(col, eta);
    }
    return trapezoid(xi, f);
}

double lyapunov_G(const ShearField& w, const CroccoGrid& grid) { return lyapunov_G(w.values, grid.xi(), grid.eta()); }

double lyapunov_G_richardson(const Field2D& w, std::span<const double> xi, std::span<const double> eta) {
    const double fine = lyapunov_G(w, xi, eta);
    const std::size_t nx = xi.size();
    const std::size_t ne = eta.size();
    if (!std::isfinite(fine) || nx % 2 == 0 || ne % 2 == 0 || nx < 5 || ne < 5) return fine;
    const std::size_t cx = (nx + 1) / 2;
    const std::size_t ce = (ne + 1) / 2;
    std::vector<double> cxi(cx), ceta(ce);
    Field2D cw(cx, ce);
    for (std::size_t i = 0; i < cx; ++i) cxi[i] = xi[2 * i];
    for (std::size_t j = 0; j < ce; ++j) ceta[j] = eta[2 * j];
    for (std::size_t i = 0; i < cx; ++i) {
        for (std::size_t j = 0; j < ce; ++j) cw(i, j) = w(2 * i, 2 * j);
    }
    const double coarse = lyapunov_G(cw, cxi, ceta);
    return (4.0 * fine - coarse) / 3.0;
}

Field2D physical_to_crocco(const VelocityField& state, const PhysicalGrid& grid, const OuterFlowModel& model,
                           std::span<const double> eta, double truncation_tol) {
    Field2D out(grid.n_x(), eta.size());
    const ForwardOptions opts{truncation_tol};
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        const auto u = state.u.column(i);
        const auto dudy = column_shear_profile(u, grid.y());
        const auto w = crocco_forward(grid.y(), u, dudy, model.velocity(state.t, grid.x()[i]), eta, opts);
        std::copy(w.begin(), w.end(), out.column(i).begin());
    }
    return out;
}

// ---------------------------------------------------------------------------

double lyapunov_C0(double L, double ue_at_inflow, const std::function<double(double)>& w1) {
    const double I = gk(
        [&](double eta) {
            const double w = w1(eta);
            const double r = std::hypot(w, eta);
            return r > 0.0 ? eta / r : 0.0;
        },
        0.0, 1.0);
    return std::pow(L, 1.5) * ue_at_inflow * I;
}

double lyapunov_C1(const std::function<double(double)>& ue, const std::function<double(double)>& px, double L) {
    return 0.5 * gk(
                     [&](double x) {
                         const double p = px(x);
                         if (!(p > 0.0)) throw PreconditionError("lyapunov constants: adverse classification required");
                         const double u = ue(x);
                         return std::sqrt(u * u * u * u / p);
                     },
                     0.0, L);
}

double lyapunov_C2(const std::function<double(double)>& ue, const std::function<double(double)>& px, double L) {
    const double I = gk(
        [&](double x) {
            const double p = px(x);
            if (!(p > 0.0)) throw PreconditionError("lyapunov constants: adverse classification required");
            return std::sqrt(ue(x) / p) * std::pow(L - x, 1.5);
        },
        0.0, L);
    return 0.5 / ((2.0 * I) * (2.0 * I));
}

LyapunovConstants lyapunov_constants(const OuterFlowModel& model, const CroccoInflow& w1, std::size_t n_samples) {
    if (n_samples < 2) throw std::invalid_argument("lyapunov_constants: need >= 2 samples");
    const auto rep = classify_gradient(model);
    if (rep.classification != GradientClass::Adverse) {
        throw PreconditionError("lyapunov constants: adverse classification required (gradient is " +
                                std::string(to_string(rep.classification)) + ")");
    }
    const double L = model.length();
    LyapunovConstants k;
    k.tau = uniform_nodes(0.0, model.horizon(), n_samples);
    for (const double tau : k.tau) {
        const auto ue = [&](double x) { return model.velocity(tau, x); };
        const auto px = [&](double x) { return model.pressure_gradient(tau, x); };
        k.C0.push_back(lyapunov_C0(L, model.velocity(tau, 0.0), [&](double eta) { return w1(tau, eta); }));
        k.C1.push_back(lyapunov_C1(ue, px, L));
        k.C2.push_back(lyapunov_C2(ue, px, L));
    }
    k.lambda0 = *std::min_element(k.C0.begin(), k.C0.end());
    k.lambda1 = *std::max_element(k.C1.begin(), k.C1.end());
    k.lambda2 = *std::min_element(k.C2.begin(), k.C2.end());
    return k;
}

OdeCoefficients ode_coefficients(const LyapunovConstants& k) {
    return OdeCoefficients{k.lambda2, 0.75, k.lambda0 - k.lambda1};
}

OdeBound comparison_ode(double G0, const OdeCoefficients& k, double T, const OdeOptions& opts) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 1>;
    OdeBound out;
    out.G0 = G0;
    const auto rhs = [&](const State& x, State& dxdt, double) {
        const double g = x[0];
        dxdt[0] = k.lambda2 * g * g * g - k.linear * g + k.constant;
    };
    State x{G0};
    double t = 0.0;
    if (opts.keep_trajectory) out.trajectory.push_back({t, G0});
    if (G0 >= opts.blowup_level) {
        out.blowup_time = 0.0;
        return out;
    }
    if (!(T > 0.0)) return out;
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol, ode::runge_kutta_dopri5<State>());
    double dt = std::min(T, 1e-3);
    std::size_t guard = 0;
    while (t < T) {
        if (++guard > 50'000'000) throw NumericalError("comparison_ode: step budget exhausted");
        dt = std::min(dt, T - t);
        const double t_prev = t;
        const double g_prev = x[0];
        if (stepper.try_step(rhs, x, t, dt) == ode::fail) {
            if (!(dt > 1e-300)) throw NumericalError("comparison_ode: step size underflow");
            continue;
        }
        if (opts.keep_trajectory) out.trajectory.push_back({t, x[0]});
        if (!std::isfinite(x[0]) || x[0] >= opts.blowup_level) {
            // near blow-up G⁻² is close to linear in t; place the crossing by that
            double tb = t;
            if (std::isfinite(x[0]) && g_prev > 0.0) {
                const double a = 1.0 / (g_prev * g_prev);
                const double b = 1.0 / (x[0] * x[0]);
                const double c = 1.0 / (opts.blowup_level * opts.blowup_level);
                if (a > b) tb = t_prev + (t - t_prev) * (a - c) / (a - b);
            }
            out.blowup_time = tb;
            return out;
        }
        if (x[0] <= 0.0) {
            out.collapsed = true;
            return out;
        }
        if (t >= T) break;
    }
    return out;
}

double largest_cubic_root(const OdeCoefficients& k) {
    if (!(k.lambda2 > 0.0)) throw std::invalid_argument("largest_cubic_root: lambda2 must be > 0");
    const auto f = [&](double g) { return k.lambda2 * g * g * g - k.linear * g + k.constant; };
    const double R = 1.0 + std::max(std::abs(k.linear), std::abs(k.constant)) / k.lambda2;  // Cauchy bound
    double lo = -R;
    const double hi = R;
    if (k.linear > 0.0) {
        const double gm = std::sqrt(k.linear / (3.0 * k.lambda2));  // local minimum
        if (f(gm) <= 0.0) {
            lo = gm;
        } else {
            // the only real root lies left of the local maximum at −gm
            boost::math::tools::eps_tolerance<double> tol(52);
            std::uintmax_t it = 200;
            const auto r = boost::math::tools::toms748_solve(f, -R, -gm, tol, it);
            return 0.5 * (r.first + r.second);
        }
    }
    if (f(lo) == 0.0) return lo;
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

ThresholdResult critical_threshold(const OdeCoefficients& k, double T, int iterations) {
    ThresholdResult res;
    res.G_c = largest_cubic_root(k);
    OdeOptions opts;
    opts.keep_trajectory = false;
    const auto blows = [&](double g0) { return comparison_ode(g0, k, T, opts).blowup_time.has_value(); };

    double lo = std::max(res.G_c, 0.0);
    res.lower = lo;
    if (blows(lo)) {
        res.C_star = lo;
        res.upper = lo;
        return res;
    }
    double hi = std::max(2.0 * lo, 1.0);
    int doublings = 0;
    while (!blows(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 64) {
            res.reachable = false;
            res.upper = hi;
            res.C_star = kInf;
            return res;
        }
    }
    res.upper = hi;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (blows(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++res.iterations;
    }
    res.C_star = hi;
    return res;
}

// ---------------------------------------------------------------------------

ConditionValue condition_1_10(const InitialProfile& u0, const InitialProfile& dudy0, double L, double y_cut,
                              std::span<const double> breakpoints) {
    if (!(L > 0.0)) return {};
    if (!(y_cut > 0.0)) throw std::invalid_argument("condition_1_10: y_cut must be > 0");
    std::vector<double> cuts{0.0};
    for (const double b : breakpoints) {
        if (b > 0.0 && b < y_cut) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(y_cut);

    const auto integrand = [&](double x, double y) {
        const double d = dudy0(x, y);
        if (d < 0.0) throw DataError("condition_1_10: negative du0/dy at x = " + std::to_string(x) +
                                     ", y = " + std::to_string(y));
        const double u = u0(x, y);
        const double r = std::hypot(d, u);
        return r > 0.0 ? d / r : 0.0;
    };
    const auto weight = [&](double x) { return std::pow(L - x, 1.5); };

    ConditionValue v;
    v.core = gk(
        [&](double x) {
            double inner = 0.0;
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                inner += gk([&](double y) { return integrand(x, y); }, cuts[k], cuts[k + 1], 1e-13);
            }
            return weight(x) * inner;
        },
        0.0, L, 1e-11);

    boost::math::quadrature::exp_sinh<double> tail;
    v.tail = gk(
        [&](double x) {
            const double inner = tail.integrate([&](double y) { return integrand(x, y); }, y_cut, kInf);
            return weight(x) * inner;
        },
        0.0, L, 1e-11);
    return v;
}

// ---------------------------------------------------------------------------

double lemma21_rate(const OuterFlowModel& model, std::span<const double> xi, std::span<const double> eta,
                    std::size_t n_tau) {
    double sup = 0.0;
    for (const double tau : uniform_nodes(0.0, model.horizon(), std::max<std::size_t>(n_tau, 2))) {
        for (const double x : xi) {
            for (const double e : eta) sup = std::max(sup, -2.0 * crocco_coefficients(model, tau, x, e).B);
        }
    }
    return sup;
}

double Lemma21Tracker::observe(double tau, const Field2D& w) {
    double sup = 0.0;
    for (const double v : w.values()) sup = std::max(sup, v * v);
    double sup_in = 0.0;
    for (const double v : w.column(0)) sup_in = std::max(sup_in, v * v);
    if (scaled_.empty()) sup_w0_sq_ = sup;
    sup_w1_sq_ = std::max(sup_w1_sq_, sup_in);
    scaled_.push_back(std::exp(-N_ * tau) * sup);
    return report().margin();
}

Lemma21Report Lemma21Tracker::report() const {
    Lemma21Report r;
    r.N = N_;
    r.allowance = allowance_;
    r.levels = scaled_.size();
    r.reference = std::max(sup_w0_sq_, sup_w1_sq_);
    if (scaled_.empty() || !(r.reference > 0.0)) {
        r.worst_ratio = scaled_.empty() ? 1.0 : kInf;
        return r;
    }
    r.worst_ratio = *std::max_element(scaled_.begin(), scaled_.end()) / r.reference;
    r.final_level_ratio = scaled_.back() / r.reference;
    return r;
}

Lemma21Report check_lemma21(std::span<const ShearField> history, const OuterFlowModel& model,
                            const CroccoGrid& grid, double allowance) {
    if (history.empty()) throw std::invalid_argument("check_lemma21: empty history");
    Lemma21Tracker tr(lemma21_rate(model, grid.xi(), grid.eta()), allowance);
    for (const auto& level : history) tr.observe(level.tau, level.values);
    return tr.report();
}

PositivityReport check_interior_positivity(const VelocityField& state, const PhysicalGrid& grid,
                                           std::span<const double> initial_wall_shear) {
    PositivityReport rep;
    const auto y = grid.y();
    const double half = 0.5 * grid.y_max();
    rep.min_interior = kInf;
    rep.min_wall = kInf;
    for (std::size_t i = 1; i < grid.n_x(); ++i) {
        const auto s = column_shear_profile(state.u.column(i), y);
        double interior = kInf;
        for (std::size_t j = 1; j < y.size() && y[j] <= half; ++j) interior = std::min(interior, s[j]);
        if (interior < rep.min_interior) {
            rep.min_interior = interior;
            rep.worst_column = i;
        }
        rep.min_wall = std::min(rep.min_wall, s[0]);
        const bool retarded = s[0] < 0.5 * initial_wall_shear[i];
        if (retarded) rep.pre_retardation = false;
        if (!(interior > 0.0)) {
            rep.pass = false;
            rep.detail = describe_node("interior shear not positive", static_cast<int>(i), 0, interior);
        } else if (retarded && !(interior > s[0])) {
            rep.pass = false;
            rep.detail = describe_node("interior shear below the wall value", static_cast<int>(i), 0, interior);
        }
    }
    return rep;
}

EventProfileReport inspect_event_column(std::span<const double> u, std::span<const double> y) {
    EventProfileReport rep;
    const auto s = column_shear_profile(u, y);
    const double half = 0.5 * y.back();
    rep.wall_shear = s[0];
    rep.interior_min = kInf;
    for (std::size_t j = 1; j < y.size() && y[j] <= half; ++j) rep.interior_min = std::min(rep.interior_min, s[j]);
    rep.argmin = static_cast<std::size_t>(std::min_element(s.begin(), s.end()) - s.begin());
    rep.wall_is_minimizer = rep.argmin == 0;
    return rep;
}

WallCompatibilityReport wall_compatibility(const VelocityField& state, const PhysicalGrid& grid,
                                           const OuterFlowModel& model) {
    WallCompatibilityReport rep;
    rep.worst_t = state.t;
    for (std::size_t i = 1; i < grid.n_x(); ++i) {
        const double k = wall_curvature(state.u.column(i), grid.y());
        const double p = model.pressure_gradient(state.t, grid.x()[i]);
        const double rel = std::abs(k - p) / std::max(std::abs(p), 1e-300);
        ++rep.samples;
        if (rel > rep.worst_rel) {
            rep.worst_rel = rel;
            rep.worst_column = i;
        }
    }
    return rep;
}

InequalityReport discrete_lyapunov_inequality(std::span<const double> tau, std::span<const double> G,
                                              const OdeCoefficients& k, double rel_tol, std::size_t exclude_last) {
    if (tau.size() != G.size()) throw std::invalid_argument("discrete_lyapunov_inequality: size mismatch");
    InequalityReport rep;
    const std::size_t n = G.size();
    if (n < 2) return rep;
    rep.margins.assign(n - 1, std::numeric_limits<double>::quiet_NaN());
    const std::size_t limit = (n - 1 > exclude_last) ? n - 1 - exclude_last : 0;
    for (std::size_t s = 0; s < limit; ++s) {
        const double dt = tau[s + 1] - tau[s];
        if (!(dt > 0.0) || !std::isfinite(G[s]) || !std::isfinite(G[s + 1])) continue;
        const double g = G[s];
        const double cubic = k.lambda2 * g * g * g;
        const double lhs = (G[s + 1] - g) / dt;
        const double rhs = cubic - k.linear * g + k.constant;
        const double tol = rel_tol * std::max(1.0, cubic);
        const double margin = lhs - rhs + tol;
        rep.margins[s] = margin;
        ++rep.n_checked;
        if (margin >= 0.0) ++rep.n_pass;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_step = s;
        }
    }
    return rep;
}

CrossValidation cross_validate(const DiagnosticSeries& a, const DiagnosticSeries& b, double t_limit) {
    CrossValidation cv;
    if (a.records.empty() || b.records.size() < 2) return cv;
    double scale = 0.0;
    double worst = 0.0;
    for (const auto& r : a.records) {
        if (r.t > t_limit) break;
        const auto it = std::lower_bound(b.records.begin(), b.records.end(), r.t,
                                         [](const DiagnosticRecord& x, double t) { return x.t < t; });
        double other;
        if (it == b.records.end()) {
            continue;
        } else if (it == b.records.begin() || it->t == r.t) {
            if (it->t != r.t) continue;
            other = it->min_wall_shear;
        } else {
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double th = (r.t - lo.t) / (hi.t - lo.t);
            other = lo.min_wall_shear + th * (hi.min_wall_shear - lo.min_wall_shear);
        }
        scale = std::max(scale, std::abs(r.min_wall_shear));
        worst = std::max(worst, std::abs(r.min_wall_shear - other));
        ++cv.samples;
    }
    cv.rel_linf = scale > 0.0 ? worst / scale : 0.0;
    return cv;
}

}  // namespace prandtl
