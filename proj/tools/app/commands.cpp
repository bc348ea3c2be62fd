#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "output.hpp"
#include "prandtl/crocco_solver.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/outer_flow.hpp"
#include "prandtl/physical_solver.hpp"
#include "prandtl/scenarios.hpp"

namespace prandtl::app {

BoundReport compute_bound(const RunConfig& cfg) {
    const auto rr = resolve(cfg);
    const auto& s = rr.scenario;
    const auto cls = classify_gradient(s.model);
    if (cls.classification != GradientClass::Adverse) {
        throw PreconditionError(std::string("adverse classification required (scenario ") + s.name + " is " +
                                to_string(cls.classification) + ")");
    }
    BoundReport b;
    b.scenario = s.name;
    b.T = s.model.horizon();
    b.constants = lyapunov_constants(s.model, s.w1);
    b.coefficients = ode_coefficients(b.constants);
    b.threshold = critical_threshold(b.coefficients, b.T);
    b.condition = condition_1_10(s.u0, s.dudy0, s.model.length(), s.condition_y_cut, s.breakpoints);
    OdeOptions opts;
    opts.keep_trajectory = false;
    b.trajectory = comparison_ode(b.condition.total(), b.coefficients, b.T, opts);
    b.closed_form_lower_bound = s.condition_lower_bound;
    b.reference_threshold = s.reference_threshold;
    b.verdict = (b.threshold.reachable && b.condition.total() >= b.threshold.C_star) ? "backflow-expected"
                                                                                     : "condition not met";
    return b;
}

int cmd_blowup_bound(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
    const auto b = compute_bound(cfg);
    nlohmann::ordered_json j;
    j["scenario"] = b.scenario;
    j["T"] = b.T;
    j["lambda0"] = b.constants.lambda0;
    j["lambda1"] = b.constants.lambda1;
    j["lambda2"] = b.constants.lambda2;
    j["ode"] = {{"cubic", b.coefficients.lambda2}, {"linear", b.coefficients.linear},
                {"constant", b.coefficients.constant}};
    j["condition_value"] = b.condition.total();
    j["condition_core"] = b.condition.core;
    j["condition_tail"] = b.condition.tail;
    j["condition_lower_bound"] =
        b.closed_form_lower_bound ? nlohmann::ordered_json(*b.closed_form_lower_bound) : nlohmann::ordered_json();
    j["C_star"] = b.threshold.C_star;
    j["C_star_reachable"] = b.threshold.reachable;
    j["G_c"] = std::isfinite(b.threshold.G_c) ? nlohmann::ordered_json(b.threshold.G_c) : nlohmann::ordered_json();
    j["reference_C_star"] =
        b.reference_threshold ? nlohmann::ordered_json(*b.reference_threshold) : nlohmann::ordered_json();
    j["predicted_blowup_time"] =
        b.trajectory.blowup_time ? nlohmann::ordered_json(*b.trajectory.blowup_time) : nlohmann::ordered_json();
    j["verdict"] = b.verdict;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
    write_json(out_dir / "bound.json", j);

    log << "scenario            " << b.scenario << "  (T = " << format_real(b.T) << ")\n";
    log << "lambda0, 1, 2       " << format_real(b.constants.lambda0) << ", " << format_real(b.constants.lambda1)
        << ", " << format_real(b.constants.lambda2) << '\n';
    log << "condition value     " << format_real(b.condition.total());
    if (b.closed_form_lower_bound) log << "  (closed-form lower bound " << format_real(*b.closed_form_lower_bound) << ")";
    log << '\n';
    log << "critical threshold  " << format_real(b.threshold.C_star) << (b.threshold.reachable ? "" : " (unreachable)");
    if (b.reference_threshold) log << "  (reference " << format_real(*b.reference_threshold) << ")";
    log << '\n';
    if (b.trajectory.blowup_time) {
        log << "blow-up window      back-flow before t = " << format_real(*b.trajectory.blowup_time) << '\n';
    } else {
        log << "blow-up window      none before T\n";
    }
    log << "verdict             " << b.verdict << '\n';
    return 0;
}

namespace {

ValidationCheck below(std::string name, double value, double limit) {
    return {std::move(name), value, limit, std::isfinite(value) && value < limit};
}

double heat_physical_error(const Scenario& s, std::size_t n_y, double dt, double shear_scale, double* shear_err) {
    PhysicalSetup setup{PhysicalGrid(s.model, 16, n_y, 8.0, 1.0, dt), s.model, s.u1, 1e-3};
    auto run = run_physical(init_physical(setup, s.u0), setup, RunStop{0.2, false, 20});
    const auto& st = run.last;
    const auto y = setup.grid.y();
    double err = 0.0;
    for (std::size_t i = 0; i < setup.grid.n_x(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) err = std::max(err, std::abs(st.u(i, j) - s.exact_u(st.t, y[j])));
    }
    if (shear_err) {
        const double exact = 1.0 / std::sqrt(M_PI * (st.t + s.parameters.at("t0")));
        double worst = 0.0;
        for (const double v : wall_shear(st, setup.grid, shear_scale)) worst = std::max(worst, std::abs(v - exact));
        *shear_err = worst / exact;
    }
    return err;
}

}  // namespace

std::vector<ValidationCheck> run_validation(const ValidationOptions& opts) {
    std::vector<ValidationCheck> out;
    const auto heat = heat_oracle(0.05);

    double shear_err = 0.0;
    out.push_back(below("heat oracle, physical solver, max |u - erf|", heat_physical_error(heat, 257, 1e-4, opts.shear_scale, &shear_err), 1e-3));
    out.push_back(below("heat oracle, physical solver, wall shear relative error", shear_err, 1e-2));
    {
        const double coarse = heat_physical_error(heat, 65, 1e-5, 1.0, nullptr);
        const double fine = heat_physical_error(heat, 129, 1e-5, 1.0, nullptr);
        const double ratio = coarse / fine;
        out.push_back({"heat oracle, physical solver, error ratio under dy halving", ratio, 4.8,
                       ratio >= 3.2 && ratio <= 4.8});
    }
    {
        const CroccoGrid g(1.0, 16, 257, 1.0);
        const CroccoSetup cs{g, heat.model, heat.w1, crocco_time_step(heat.model, g, 1e-4), 2};
        auto run = run_crocco(init_crocco(heat.w0, cs), cs, RunStop{0.2, false, 20});
        double err = 0.0;
        for (std::size_t i = 0; i < g.n_xi(); ++i) {
            for (std::size_t j = 0; j < g.n_eta(); ++j) {
                err = std::max(err, std::abs(run.last.values(i, j) - heat.exact_w(run.last.tau, g.eta()[j])));
            }
        }
        out.push_back(below("heat oracle, crocco solver, max |w - exact|", err, 5e-3));
    }
    {
        const double ue = 1.7;
        const auto y = stretched_nodes(30.0, 4001, 1.0);
        std::vector<double> u(y.size()), dudy(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) {
            u[j] = -ue * std::expm1(-y[j]);
            dudy[j] = ue * std::exp(-y[j]);
        }
        const auto eta = uniform_nodes(0.0, 1.0, 256);
        const auto w = crocco_forward(y, u, dudy, ue, eta);
        const auto inv = crocco_inverse(eta, w, ue);
        double err = 0.0;
        for (std::size_t k = 0; k < inv.y.size(); ++k) err = std::max(err, std::abs(inv.u[k] + ue * std::expm1(-inv.y[k])));
        out.push_back(below("crocco round trip, max |u - U(1 - exp(-y))|", err / ue, 1e-4));
    }
    {
        const auto xi = uniform_nodes(0.0, 1.0, 513);
        const auto eta = uniform_nodes(0.0, 1.0, 513);
        const Field2D ones(513, 513, 1.0);
        const double G = lyapunov_G_richardson(ones, xi, eta);
        out.push_back(below("Lyapunov functional of w = 1 vs (2/5) asinh(1)", std::abs(G - 0.4 * std::asinh(1.0)), 1e-5));
    }
    {
        const auto b = comparison_ode(1.0, OdeCoefficients{1.0, 0.0, 0.0}, 1.0);
        const double t = b.blowup_time.value_or(std::nan(""));
        out.push_back(below("G' = G^3, G(0) = 1 blow-up time vs 1/2", std::abs(t - 0.5), 1e-4));
    }
    return out;
}

int cmd_validate(std::ostream& log, const ValidationOptions& opts) {
    bool all = true;
    for (const auto& c : run_validation(opts)) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s  %-62s %.3e (limit %.1e)\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                      c.value, c.limit);
        log << buf;
        all = all && c.pass;
    }
    return all ? 0 : 1;
}

int cmd_scenarios(std::ostream& log) {
    for (const auto& name : scenario_names()) {
        const auto s = make_scenario(name);
        log << name << "  " << to_string(s.expected) << "  T=" << format_real(s.model.horizon())
            << "  solver=" << s.grid.solver << "  grid " << s.grid.n_x << "x" << s.grid.n_y << " / " << s.grid.n_xi
            << "x" << s.grid.n_eta << '\n';
    }
    return 0;
}

}  // namespace prandtl::app
