#include "prandtl/physical_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prandtl/detail/march.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/parallel.hpp"

namespace prandtl {

PhysicalGrid::PhysicalGrid(const OuterFlowModel& model, std::size_t n_x, std::size_t n_y, double y_max,
                           double stretch, double dt, double cfl)
    : stretch_(stretch), dx_(0.0), dt_(dt) {
    if (n_x < 3 || n_y < 4) throw std::invalid_argument("PhysicalGrid: need n_x >= 3 and n_y >= 4");
    if (!(y_max > 0.0)) throw std::invalid_argument("PhysicalGrid: y_max must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("PhysicalGrid: dt must be > 0");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("PhysicalGrid: cfl must lie in (0, 1]");
    x_ = uniform_nodes(0.0, model.length(), n_x);
    y_ = stretched_nodes(y_max, n_y, stretch);
    dx_ = model.length() / static_cast<double>(n_x - 1);
    dt_ = std::min(dt, cfl * 0.5 * dx_ / model.max_velocity());
}

namespace {

double saturation_level(double ue, double tol) { return (1.0 - tol) * ue; }

void check_initial_column(const PhysicalSetup& setup, std::span<const double> u, std::size_t i) {
    const auto y = setup.grid.y();
    const double ue = setup.model.velocity(0.0, setup.grid.x()[i]);
    const int ii = static_cast<int>(i);
    if (std::abs(u[0]) > 1e-12 * ue) throw DataError(describe_node("init: u0(x, 0) != 0", ii, 0, u[0]));

    std::size_t worst = 0;
    double worst_val = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < y.size(); ++j) {
        if (!std::isfinite(u[j])) throw DataError(describe_node("init: non-finite u0", ii, static_cast<int>(j), u[j]));
        if (u[j] < worst_val) {
            worst_val = u[j];
            worst = j;
        }
    }
    if (!(worst_val > 0.0)) {
        throw DataError(describe_node("init: u0 not positive above the wall", ii, static_cast<int>(worst), worst_val));
    }

    const double sat = saturation_level(ue, setup.far_field_tol);
    double worst_inc = 0.0;
    std::size_t worst_j = 0;
    bool bad = false;
    for (std::size_t j = 1; j < y.size(); ++j) {
        const double inc = u[j] - u[j - 1];
        const bool strict = u[j - 1] < sat;
        if ((strict && !(inc > 0.0)) || (!strict && inc < 0.0)) {
            if (!bad || inc < worst_inc) {
                worst_inc = inc;
                worst_j = j;
            }
            bad = true;
        }
    }
    if (bad) {
        throw MonotonicityError(
            describe_node("init: u0 not increasing in y (increment)", ii, static_cast<int>(worst_j), worst_inc));
    }

    const double top = u[y.size() - 1];
    if (std::abs(top - ue) > setup.far_field_tol * ue) {
        throw TruncationError(describe_node("init: u0(x, Y_max) does not match U_e", ii,
                                            static_cast<int>(y.size() - 1), top));
    }
}

}  // namespace

VelocityField init_physical(const PhysicalSetup& setup, const InitialProfile& u0) {
    const auto& grid = setup.grid;
    VelocityField s;
    s.t = 0.0;
    s.u = Field2D(grid.n_x(), grid.n_y());
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        auto col = s.u.column(i);
        for (std::size_t j = 0; j < grid.n_y(); ++j) col[j] = u0(grid.x()[i], grid.y()[j]);
        check_initial_column(setup, col, i);
    }
    s.v = compute_v(s.u, grid);
    return s;
}

Field2D compute_v(const Field2D& u, const PhysicalGrid& grid) {
    const std::size_t nx = grid.n_x();
    const std::size_t ny = grid.n_y();
    const double dx = grid.dx();
    const auto y = grid.y();
    Field2D v(nx, ny);
    std::vector<double> dudx(ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            if (i == 0) {
                dudx[j] = (-3.0 * u(0, j) + 4.0 * u(1, j) - u(2, j)) / (2.0 * dx);
            } else if (i + 1 == nx) {
                dudx[j] = (3.0 * u(i, j) - 4.0 * u(i - 1, j) + u(i - 2, j)) / (2.0 * dx);
            } else {
                dudx[j] = (u(i + 1, j) - u(i - 1, j)) / (2.0 * dx);
            }
        }
        double acc = 0.0;
        v(i, 0) = 0.0;
        for (std::size_t j = 1; j < ny; ++j) {
            acc += 0.5 * (y[j] - y[j - 1]) * (dudx[j] + dudx[j - 1]);
            v(i, j) = -acc;
        }
    }
    return v;
}

std::pair<VelocityField, StepReport> step_physical(const VelocityField& state, const PhysicalSetup& setup,
                                                   double dt) {
    const auto& grid = setup.grid;
    const auto& model = setup.model;
    const std::size_t nx = grid.n_x();
    const std::size_t ny = grid.n_y();
    const auto x = grid.x();
    const auto y = grid.y();
    const double dx = grid.dx();

    VelocityField next = state;
    StepReport rep;
    if (dt < 0.0) throw std::invalid_argument("step_physical: dt must be >= 0");
    if (dt > 0.0) {
        const double t = state.t;
        const double t1 = t + dt;

        {
            auto col = next.u.column(0);
            for (std::size_t j = 1; j + 1 < ny; ++j) col[j] = setup.inflow(t1, y[j]);
            col[0] = 0.0;
            col[ny - 1] = model.velocity(t1, 0.0);
        }

        std::vector<double> residual(nx, 0.0);
        parallel_for(1, nx, [&](std::size_t i) {
            const std::size_t n = ny - 2;
            Tridiagonal sys(n);
            const auto u = state.u.column(i);
            const auto v = state.v.column(i);
            const double px = model.pressure_gradient(t, x[i]);
            const double top = model.velocity(t1, x[i]);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t j = k + 1;
                const double hm = y[j] - y[j - 1];
                const double hp = y[j + 1] - y[j];
                const double am = 2.0 / (hm * (hm + hp));
                const double ap = 2.0 / (hp * (hm + hp));

                double adv;
                if (u[j] >= 0.0 || i + 1 == nx) {
                    adv = u[j] * (u[j] - state.u(i - 1, j)) / dx;
                } else {
                    adv = u[j] * (state.u(i + 1, j) - u[j]) / dx;
                }

                // v ∂_y u: centred while the cell Péclet number allows it, upwind otherwise
                double cl, cd, cu;
                const double vj = v[j];
                if (std::abs(vj) * std::max(hm, hp) <= 2.0) {
                    cl = -vj * hp / (hm * (hm + hp));
                    cd = vj * (hp - hm) / (hm * hp);
                    cu = vj * hm / (hp * (hm + hp));
                } else if (vj > 0.0) {
                    cl = -vj / hm;
                    cd = vj / hm;
                    cu = 0.0;
                } else {
                    cl = 0.0;
                    cd = -vj / hp;
                    cu = vj / hp;
                }

                sys.lower[k] = -am + cl;
                sys.diag[k] = 1.0 / dt + am + ap + cd;
                sys.upper[k] = -ap + cu;
                sys.rhs[k] = u[j] / dt - adv - px;
            }
            sys.rhs[n - 1] -= sys.upper[n - 1] * top;

            auto out = next.u.column(i);
            std::span<double> interior = out.subspan(1, n);
            solve_tridiagonal(sys, interior);
            residual[i] = tridiagonal_residual(sys, interior);
            out[0] = 0.0;
            out[ny - 1] = top;
            for (std::size_t j = 1; j + 1 < ny; ++j) {
                if (!std::isfinite(out[j])) {
                    throw InstabilityError(describe_node("step_physical: non-finite u", static_cast<int>(i),
                                                         static_cast<int>(j), out[j]));
                }
            }
        });

        next.t = t1;
        next.v = compute_v(next.u, grid);
        rep.max_residual = *std::max_element(residual.begin(), residual.end());
    }

    rep.t_new = next.t;
    const auto shear = wall_shear(next, grid);
    const auto it = std::min_element(shear.begin(), shear.end());
    rep.min_wall_shear = *it;
    rep.argmin_index = static_cast<std::size_t>(it - shear.begin());
    for (std::size_t i = 0; i < nx && rep.monotone_flag; ++i) {
        const auto col = next.u.column(i);
        for (std::size_t j = 1; j < ny; ++j) {
            if (col[j] < col[j - 1]) {
                rep.monotone_flag = false;
                break;
            }
        }
    }
    return {std::move(next), rep};
}

double column_wall_shear(std::span<const double> u, std::span<const double> y) {
    const double y1 = y[1];
    const double y2 = y[2];
    return (u[1] * y2 * y2 - u[2] * y1 * y1) / (y1 * y2 * (y2 - y1));
}

std::vector<double> wall_shear(const VelocityField& state, const PhysicalGrid& grid, double scale) {
    std::vector<double> s(grid.n_x());
    for (std::size_t i = 0; i < grid.n_x(); ++i) s[i] = scale * column_wall_shear(state.u.column(i), grid.y());
    return s;
}

double wall_curvature(std::span<const double> u, std::span<const double> y) {
    // Lagrange cubic through (0,0), (y1,u1), (y2,u2), (y3,u3):
    // L_k''(0) = −2 Σ_{m≠k} y_m / Π_{m≠k} (y_k − y_m)
    double sum = 0.0;
    for (std::size_t k = 1; k <= 3; ++k) {
        double others = 0.0;
        double denom = 1.0;
        for (std::size_t m = 0; m <= 3; ++m) {
            if (m == k) continue;
            others += y[m];
            denom *= y[k] - y[m];
        }
        sum += u[k] * (-2.0 * others / denom);
    }
    return sum;
}

std::vector<double> column_shear_profile(std::span<const double> u, std::span<const double> y) {
    auto d = derivative_nonuniform(y, u);
    d[0] = column_wall_shear(u, y);
    return d;
}

PhysicalRun run_physical(VelocityField state, const PhysicalSetup& setup, const RunStop& stop,
                         const PhysicalObserver& observer) {
    const auto& grid = setup.grid;
    PhysicalRun run;
    run.series.source = "physical";
    run.last = state;
    if (!(stop.t_end > state.t)) return run;
    if (stop.t_end > setup.model.horizon() * (1.0 + 1e-12)) {
        throw DomainError("run_physical: t_end exceeds the model horizon");
    }

    auto record = [&](const VelocityField& s, std::size_t k) {
        DiagnosticRecord r;
        r.step = k;
        r.t = s.t;
        const auto shear = wall_shear(s, grid);
        const auto it = std::min_element(shear.begin(), shear.end());
        r.min_wall_shear = *it;
        r.argmin_x = grid.x()[static_cast<std::size_t>(it - shear.begin())];
        if (observer) observer(s, r);
        run.series.records.push_back(r);
    };
    auto crossed = [&](const VelocityField& s) {
        const auto shear = wall_shear(s, grid);
        return *std::min_element(shear.begin(), shear.end()) <= 0.0;
    };

    record(state, 0);
    auto out = detail::march(
        std::move(state), stop.t_end, grid.dt(), stop.detect_backflow, stop.max_bisections,
        [&](const VelocityField& s, double h) { return step_physical(s, setup, h).first; }, crossed,
        record, [](const VelocityField& s) { return s.t; });

    run.steps = out.steps;
    run.last = std::move(out.last);
    if (out.crossed) {
        const auto& before = run.last;
        const auto& after = *out.crossed;
        const auto s_before = wall_shear(before, grid);
        const auto s_after = wall_shear(after, grid);
        std::size_t idx = 0;
        while (idx < s_after.size() && s_after[idx] > 0.0) ++idx;

        BackFlowEvent ev;
        ev.source = run.series.source;
        ev.x_index = idx;
        ev.x_star = grid.x()[idx];
        ev.t_before = before.t;
        ev.t_after = after.t;
        const double sb = s_before[idx];
        const double sa = s_after[idx];
        const double theta = (sb > sa) ? std::clamp(sb / (sb - sa), 0.0, 1.0) : 1.0;
        ev.t_star = before.t + theta * (after.t - before.t);
        const double kb = wall_curvature(before.u.column(idx), grid.y());
        const double ka = wall_curvature(after.u.column(idx), grid.y());
        ev.wall_curvature = kb + theta * (ka - kb);
        ev.shear_floor = std::max(std::abs(sb), std::abs(sa));
        ev.bisections = out.bisections;
        run.event = ev;
        run.crossed = *out.crossed;
    }
    return run;
}

}  // namespace prandtl
