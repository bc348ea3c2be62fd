#include "prandtl/crocco_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prandtl/detail/march.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/parallel.hpp"

namespace prandtl {

double crocco_time_step(const OuterFlowModel& model, const CroccoGrid& grid, double dt, double cfl) {
    if (!(dt > 0.0)) throw std::invalid_argument("crocco_time_step: dt must be > 0");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("crocco_time_step: cfl must lie in (0, 1]");
    return std::min(dt, cfl * 0.5 * grid.d_xi() / model.max_velocity());
}

ShearField init_crocco(const CroccoProfile& w0, const CroccoSetup& setup) {
    const auto& grid = setup.grid;
    const auto xi = grid.xi();
    const auto eta = grid.eta();
    const std::size_t ne = grid.n_eta();
    ShearField s;
    s.tau = 0.0;
    s.values = Field2D(grid.n_xi(), ne);
    for (std::size_t i = 0; i < grid.n_xi(); ++i) {
        for (std::size_t j = 0; j < ne; ++j) {
            const double v = w0(xi[i], eta[j]);
            if (j + 1 == ne) {
                if (v != 0.0) {
                    throw DataError(describe_node("init_crocco: w0 must vanish at eta = 1", static_cast<int>(i),
                                                  static_cast<int>(j), v));
                }
            } else if (!(v > 0.0) || !std::isfinite(v)) {
                throw DataError(describe_node("init_crocco: w0 must be positive below eta = 1", static_cast<int>(i),
                                              static_cast<int>(j), v));
            }
            s.values(i, j) = v;
        }
    }
    return s;
}

WallClosure wall_closure(double w_first, double grad_p_over_ue, double d_eta) {
    WallClosure c;
    c.radicand = w_first * w_first - 2.0 * d_eta * grad_p_over_ue;
    c.signal = !(c.radicand > 0.0);
    c.value = c.signal ? 0.0 : std::sqrt(c.radicand);
    return c;
}

WallClosure wall_closure2(double w1, double w2, double eta1, double eta2, double grad_p_over_ue) {
    const auto c = one_sided_first_derivative(eta1, eta2);
    WallClosure out;
    out.radicand = (2.0 * grad_p_over_ue - c.c1 * w1 * w1 - c.c2 * w2 * w2) / c.c0;
    out.signal = !(out.radicand > 0.0);
    out.value = out.signal ? 0.0 : std::sqrt(out.radicand);
    return out;
}

WallClosure column_closure(std::span<const double> w, std::span<const double> eta, double g, int order) {
    if (order == 1) return wall_closure(w[1], g, eta[1] - eta[0]);
    return wall_closure2(w[1], w[2], eta[1], eta[2], g);
}

namespace {

struct ColumnResult {
    double residual = 0.0;
    bool signal = false;
    std::size_t n_clamped = 0;
    double min_interior = 0.0;
};

// Rows 1..n−2 of column i.  Below η = ½ the unknown is f = w²,
//   f_τ + ηU f_ξ + (A + ½f_η) f_η + 2B f = f f_ηη,
// above it w itself,
//   w_τ + ηU w_ξ + A w_η + B w = w² w_ηη.
// Coefficients come from the iterate wk; the two rows at the switch see
// their neighbour through f = w² linearised about wk.
void assemble_interior(Tridiagonal& sys, const ShearField& state, std::span<const double> wk, std::size_t split,
                       const CroccoSetup& setup, std::size_t i, double t, double dt) {
    const auto& grid = setup.grid;
    const auto& model = setup.model;
    const auto eta = grid.eta();
    const std::size_t ne = grid.n_eta();
    const double xi = grid.xi()[i];
    const double ue = model.velocity(t, xi);
    const auto w = state.values.column(i);
    const auto wl = state.values.column(i - 1);
    const auto sq = [](double v) { return v * std::abs(v); };
    for (std::size_t j = 1; j + 1 < ne; ++j) {
        const double hm = eta[j] - eta[j - 1];
        const double hp = eta[j + 1] - eta[j];
        const double lm = -hp / (hm * (hm + hp));
        const double l0 = (hp - hm) / (hm * hp);
        const double lp = hm / (hp * (hm + hp));
        const auto [A, B] = crocco_coefficients(model, t, xi, eta[j]);
        const bool f_row = j < split;

        double d, a;
        if (f_row) {
            d = std::max(sq(wk[j]), 0.0);
            a = A + 0.5 * (lm * sq(wk[j - 1]) + l0 * sq(wk[j]) + lp * sq(wk[j + 1]));
        } else {
            d = wk[j] * wk[j];
            a = A;
        }
        const double am = 2.0 * d / (hm * (hm + hp));
        const double ap = 2.0 * d / (hp * (hm + hp));
        double cl, cd, cu;
        if (std::abs(a) * std::max(hm, hp) <= 2.0 * d) {
            cl = a * lm;
            cd = a * l0;
            cu = a * lp;
        } else if (a > 0.0) {
            cl = -a / hm;
            cd = a / hm;
            cu = 0.0;
        } else {
            cl = 0.0;
            cd = -a / hp;
            cu = a / hp;
        }
        double lower = -am + cl;
        double upper = -ap + cu;
        double rhs;
        if (f_row) {
            const double f_old = w[j] * w[j];
            rhs = f_old / dt - eta[j] * ue * (f_old - wl[j] * wl[j]) / grid.d_xi() - 2.0 * B * f_old;
            if (j + 1 == split) {
                // f_{j+1} ≈ 2 wk w_{j+1} − wk²
                rhs += upper * wk[j + 1] * wk[j + 1];
                upper *= 2.0 * wk[j + 1];
            }
        } else {
            rhs = w[j] / dt - eta[j] * ue * (w[j] - wl[j]) / grid.d_xi() - B * w[j];
            if (j == split) {
                // w_{j−1} ≈ (f_{j−1} + wk²) / (2 wk)
                rhs -= lower * 0.5 * wk[j - 1];
                lower /= 2.0 * wk[j - 1];
            }
        }
        sys.lower[j] = lower;
        sys.diag[j] = 1.0 / dt + am + ap + cd;
        sys.upper[j] = upper;
        sys.rhs[j] = rhs;
    }
}

ColumnResult solve_column(const ShearField& state, const CroccoSetup& setup, std::size_t i, double t, double dt,
                          std::span<double> out) {
    const auto& grid = setup.grid;
    const auto eta = grid.eta();
    const std::size_t ne = grid.n_eta();
    const std::size_t n = ne - 1;  // unknowns 0..n−1; w_n = 0
    const double xi = grid.xi()[i];
    const double g = setup.model.pressure_gradient(t, xi) / setup.model.velocity(t, xi);
    const auto old = state.values.column(i);

    std::size_t split = 1;
    while (split + 1 < ne && eta[split] < 0.5) ++split;
    std::vector<double> wk(old.begin(), old.end());
    std::vector<double> sol(n);
    ColumnResult res;
    const OneSided3 c = one_sided_first_derivative(eta[1], eta[2]);
    constexpr int max_picard = 30;

    const auto to_w = [&](std::size_t j, double v) {
        if (j >= split) return v;
        return v >= 0.0 ? std::sqrt(v) : -std::sqrt(-v);
    };

    for (int iter = 0; iter < max_picard; ++iter) {
        Tridiagonal sys(n);
        assemble_interior(sys, state, wk, split, setup, i, t, dt);
        if (setup.wall_order == 1) {
            // (f₁ − f₀)/η₁ = 2g
            sys.diag[0] = -1.0;
            sys.upper[0] = 1.0;
            sys.rhs[0] = 2.0 * g * eta[1];
        } else {
            // c₀f₀ + c₁f₁ + c₂f₂ = 2g, f₂ eliminated with row 1
            const double m = c.c2 / sys.upper[1];
            sys.diag[0] = c.c0 - m * sys.lower[1];
            sys.upper[0] = c.c1 - m * sys.diag[1];
            sys.rhs[0] = 2.0 * g - m * sys.rhs[1];
        }
        solve_tridiagonal(sys, sol);
        res.residual = tridiagonal_residual(sys, sol);
        double change = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(sol[j])) {
                throw InstabilityError(
                    describe_node("step_crocco: non-finite w", static_cast<int>(i), static_cast<int>(j), sol[j]));
            }
            const double v = to_w(j, sol[j]);
            change = std::max(change, std::abs(v - wk[j]) / std::max(1.0, std::abs(v)));
            wk[j] = (j == 0) ? v : std::max(v, 0.0);
        }
        if (change <= 1e-12) break;
    }

    res.signal = !(sol[0] > 0.0);
    out[0] = to_w(0, sol[0]);
    for (std::size_t j = 1; j < n; ++j) {
        double v = to_w(j, sol[j]);
        if (v < 0.0) {
            if (v < -setup.clamp_tol) res.min_interior = std::min(res.min_interior, v);
            ++res.n_clamped;
            v = 0.0;
        }
        out[j] = v;
    }
    out[n] = 0.0;
    return res;
}

}  // namespace

std::pair<ShearField, CroccoStepReport> step_crocco(const ShearField& state, const CroccoSetup& setup, double dt) {
    const auto& grid = setup.grid;
    const std::size_t nxi = grid.n_xi();
    const std::size_t ne = grid.n_eta();
    const auto eta = grid.eta();

    ShearField next = state;
    CroccoStepReport rep;
    if (dt < 0.0) throw std::invalid_argument("step_crocco: dt must be >= 0");
    if (dt > 0.0) {
        const double t = state.tau;
        const double t1 = t + dt;
        {
            auto col = next.values.column(0);
            for (std::size_t j = 0; j + 1 < ne; ++j) col[j] = setup.inflow(t1, eta[j]);
            col[ne - 1] = 0.0;
        }
        std::vector<ColumnResult> results(nxi);
        parallel_for(1, nxi, [&](std::size_t i) {
            results[i] = solve_column(state, setup, i, t, dt, next.values.column(i));
        });
        next.tau = t1;
        for (std::size_t i = 1; i < nxi; ++i) {
            rep.max_residual = std::max(rep.max_residual, results[i].residual);
            rep.n_clamped += results[i].n_clamped;
            rep.min_interior = std::min(rep.min_interior, results[i].min_interior);
            if (results[i].signal && !rep.backflow_signal) {
                rep.backflow_signal = true;
                rep.signal_index = i;
            }
        }
    }
    rep.t_new = next.tau;
    const auto shear = crocco_wall_shear(next, setup);
    const auto it = std::min_element(shear.begin(), shear.end());
    rep.min_wall_shear = *it;
    rep.argmin_index = static_cast<std::size_t>(it - shear.begin());
    return {std::move(next), rep};
}

double crocco_residual(const ShearField& before, const ShearField& after, const CroccoSetup& setup) {
    const auto& grid = setup.grid;
    const auto& model = setup.model;
    const auto eta = grid.eta();
    const double dt = after.tau - before.tau;
    if (!(dt > 0.0)) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < grid.n_xi(); ++i) {
        const double xi = grid.xi()[i];
        const double ue = model.velocity(after.tau, xi);
        const auto w = after.values.column(i);
        const auto wl = after.values.column(i - 1);
        const auto w_old = before.values.column(i);
        for (std::size_t j = 1; j + 1 < grid.n_eta(); ++j) {
            const double hm = eta[j] - eta[j - 1];
            const double hp = eta[j + 1] - eta[j];
            const double w_eta = (-hp / (hm * (hm + hp))) * w[j - 1] + ((hp - hm) / (hm * hp)) * w[j] +
                                 (hm / (hp * (hm + hp))) * w[j + 1];
            const double w_etaeta = 2.0 * ((w[j + 1] - w[j]) / hp - (w[j] - w[j - 1]) / hm) / (hm + hp);
            const auto [A, B] = crocco_coefficients(model, after.tau, xi, eta[j]);
            const double r = (w[j] - w_old[j]) / dt + eta[j] * ue * (w[j] - wl[j]) / grid.d_xi() + A * w_eta +
                             B * w[j] - w[j] * w[j] * w_etaeta;
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

std::vector<double> crocco_wall_shear(const ShearField& state, const CroccoSetup& setup) {
    const auto xi = setup.grid.xi();
    std::vector<double> s(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) s[i] = setup.model.velocity(state.tau, xi[i]) * state.values(i, 0);
    return s;
}

double crocco_wall_curvature(std::span<const double> w, std::span<const double> eta, double ue) {
    const auto c = one_sided_first_derivative(eta[1] - eta[0], eta[2] - eta[0]);
    const double df = c.c0 * w[0] * w[0] + c.c1 * w[1] * w[1] + c.c2 * w[2] * w[2];
    return ue * 0.5 * df;
}

CroccoRun run_crocco(ShearField state, const CroccoSetup& setup, const RunStop& stop,
                     const CroccoObserver& observer) {
    const auto& grid = setup.grid;
    const auto& model = setup.model;
    CroccoRun run;
    run.series.source = "crocco";
    run.last = state;
    if (!(stop.t_end > state.tau)) return run;
    if (stop.t_end > model.horizon() * (1.0 + 1e-12)) {
        throw DomainError("run_crocco: t_end exceeds the model horizon");
    }

    auto record = [&](const ShearField& s, std::size_t k) {
        DiagnosticRecord r;
        r.step = k;
        r.t = s.tau;
        const auto shear = crocco_wall_shear(s, setup);
        const auto it = std::min_element(shear.begin(), shear.end());
        r.min_wall_shear = *it;
        r.argmin_x = grid.xi()[static_cast<std::size_t>(it - shear.begin())];
        if (observer) observer(s, r);
        run.series.records.push_back(r);
    };
    auto crossed = [&](const ShearField& s) {
        for (std::size_t i = 0; i < grid.n_xi(); ++i) {
            if (!(s.values(i, 0) > 0.0)) return true;
        }
        return false;
    };
    auto step = [&](const ShearField& s, double h) {
        auto [next, rep] = step_crocco(s, setup, h);
        run.n_clamped += rep.n_clamped;
        run.min_interior = std::min(run.min_interior, rep.min_interior);
        return next;
    };

    record(state, 0);
    auto out = detail::march(std::move(state), stop.t_end, setup.dt, stop.detect_backflow, stop.max_bisections,
                             step, crossed, record, [](const ShearField& s) { return s.tau; });
    run.steps = out.steps;
    run.last = std::move(out.last);
    if (out.crossed) {
        const auto& before = run.last;
        const auto& after = *out.crossed;
        const auto eta = grid.eta();
        std::size_t idx = 0;
        while (idx < grid.n_xi() && after.values(idx, 0) > 0.0) ++idx;
        const double xi = grid.xi()[idx];
        const double g_b = model.pressure_gradient(before.tau, xi) / model.velocity(before.tau, xi);
        const double g_a = model.pressure_gradient(after.tau, xi) / model.velocity(after.tau, xi);
        const double rb = column_closure(before.values.column(idx), eta, g_b, setup.wall_order).radicand;
        const double ra = column_closure(after.values.column(idx), eta, g_a, setup.wall_order).radicand;
        const double theta = (rb > ra) ? std::clamp(rb / (rb - ra), 0.0, 1.0) : 1.0;

        BackFlowEvent ev;
        ev.source = run.series.source;
        ev.x_index = idx;
        ev.x_star = xi;
        ev.t_before = before.tau;
        ev.t_after = after.tau;
        ev.t_star = before.tau + theta * (after.tau - before.tau);
        const double ue_star = model.velocity(ev.t_star, xi);
        const double kb = crocco_wall_curvature(before.values.column(idx), eta, ue_star);
        const double ka = crocco_wall_curvature(after.values.column(idx), eta, ue_star);
        ev.wall_curvature = kb + theta * (ka - kb);
        const double sb = model.velocity(before.tau, xi) * std::sqrt(std::max(rb, 0.0));
        const double sa = model.velocity(after.tau, xi) * std::sqrt(std::max(-ra, 0.0));
        ev.shear_floor = std::max(sb, sa);
        ev.bisections = out.bisections;
        run.event = ev;
        run.crossed = *out.crossed;
    }
    return run;
}

}  // namespace prandtl
