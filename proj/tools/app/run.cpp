#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include <boost/version.hpp>

#include "output.hpp"
#include "prandtl/diagnostics.hpp"
#include "prandtl/errors.hpp"
#include "prandtl/outer_flow.hpp"

#ifndef PRANDTL_VERSION
#define PRANDTL_VERSION "0.0.0"
#endif

namespace prandtl::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants_snapshot(std::size_t step, std::size_t every) { return step == 0 || (every > 0 && step % every == 0); }

// Physical u on the y nodes recovered column by column from w.
Field2D crocco_to_physical(const ShearField& w, const CroccoGrid& grid, const OuterFlowModel& model,
                           std::span<const double> y) {
    Field2D u(grid.n_xi(), y.size());
    const auto eta = grid.eta();
    for (std::size_t i = 0; i < grid.n_xi(); ++i) {
        const double ue = model.velocity(w.tau, grid.xi()[i]);
        const auto inv = crocco_inverse(eta, w.values.column(i), ue);
        auto col = u.column(i);
        std::size_t k = 0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            while (k + 1 < inv.y.size() && inv.y[k + 1] < y[j]) ++k;
            if (k + 1 >= inv.y.size()) {
                col[j] = inv.u.back();
                continue;
            }
            const double th = (y[j] - inv.y[k]) / (inv.y[k + 1] - inv.y[k]);
            col[j] = inv.u[k] + std::clamp(th, 0.0, 1.0) * (inv.u[k + 1] - inv.u[k]);
        }
    }
    return u;
}

void attach_inequality(DiagnosticSeries& series, const std::optional<OdeCoefficients>& k, const RunConfig& cfg,
                       bool had_event, std::vector<CheckResult>& checks, const std::string& source) {
    if (!k || series.records.size() < 2) return;
    std::vector<double> tau, G;
    for (const auto& r : series.records) {
        tau.push_back(r.t);
        G.push_back(r.G_value);
    }
    const std::size_t exclude = had_event ? cfg.inequality_exclude : 0;
    const auto rep = discrete_lyapunov_inequality(tau, G, *k, cfg.inequality_tol, exclude);
    for (std::size_t s = 0; s < rep.margins.size(); ++s) {
        if (std::isfinite(rep.margins[s])) series.records[s + 1].inequality_margin = rep.margins[s];
    }
    CheckResult c{source + ".lyapunov_inequality", rep.fraction() >= 0.95, true, rep.fraction(), 0.95, ""};
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu/%zu steps", rep.n_pass, rep.n_checked);
    c.detail = buf;
    checks.push_back(std::move(c));
}

CheckResult outcome_check(const std::string& source, const Scenario& s, bool had_event, double t_end) {
    CheckResult c{source + ".expected_outcome", true, true, had_event ? 1.0 : 0.0, 0.0, to_string(s.expected)};
    const bool full_horizon = t_end >= s.model.horizon() * (1.0 - 1e-12);
    if (s.expected == ExpectedOutcome::BackflowExpected && !had_event && full_horizon) {
        c.pass = false;
        c.detail += ": no event before the horizon";
    } else if (s.expected != ExpectedOutcome::BackflowExpected && had_event) {
        c.pass = false;
        c.detail += ": unexpected event";
    } else if (s.expected == ExpectedOutcome::BackflowExpected && !had_event) {
        c.detail += ": horizon not reached";
    }
    return c;
}

// The e^{Nt} bound relies on the wall flux ∂_ξP/U_e being non-negative.
CheckResult lemma21_check(const std::string& source, const Lemma21Report& lr, bool covered) {
    CheckResult c{source + ".lemma21", lr.pass(), covered, lr.worst_ratio, 1.0 + lr.allowance, "N=" + format_real(lr.N)};
    if (!covered) c.detail += ", favourable wall flux: bound not applicable";
    return c;
}

SolverOutcome run_physical_solver(const RunConfig& cfg, const ResolvedRun& rr, const std::optional<OdeCoefficients>& k,
                                  bool adverse, bool lemma_covered) {
    const auto& s = rr.scenario;
    const auto& g = rr.grid;
    const auto& model = s.model;
    PhysicalSetup setup{PhysicalGrid(model, g.n_x, g.n_y, g.y_max, g.stretch, g.dt, cfg.cfl), model, s.u1,
                        cfg.far_field_tol};
    const auto& grid = setup.grid;
    const auto x = grid.x();
    const auto eta = power_nodes(g.n_eta_diag, g.eta_power);

    SolverOutcome out;
    out.source = "physical";
    out.dx = grid.dx();
    auto state = init_physical(setup, s.u0);
    const auto initial_shear = wall_shear(state, grid);

    Lemma21Tracker lemma(lemma21_rate(model, x, eta), cfg.lemma21_allowance);
    double worst_compat = 0.0;
    double worst_compat_t = 0.0;
    std::size_t n_unmapped = 0;
    const auto observer = [&](const VelocityField& v, DiagnosticRecord& r) {
        std::optional<Field2D> w;
        try {
            w = physical_to_crocco(v, grid, model, eta, cfg.far_field_tol);
        } catch (const DataError&) {
            ++n_unmapped;
        }
        r.G_value = w ? lyapunov_G(*w, x, eta) : kNaN;
        if (w) r.lemma21_margin = lemma.observe(v.t, *w);
        if (v.t > 0.0 && adverse) {
            const auto wc = wall_compatibility(v, grid, model);
            if (wc.worst_rel > worst_compat) {
                worst_compat = wc.worst_rel;
                worst_compat_t = v.t;
            }
        }
        if (wants_snapshot(r.step, cfg.snapshot_every)) {
            out.u_snapshots.push_back({v.t, {x.begin(), x.end()}, {grid.y().begin(), grid.y().end()}, v.u});
            if (w) out.w_snapshots.push_back({v.t, {x.begin(), x.end()}, eta, *w});
        }
    };
    auto run = run_physical(std::move(state), setup, RunStop{rr.t_end, true, cfg.max_bisections}, observer);
    out.series = std::move(run.series);
    out.event = run.event;
    out.steps = run.steps;
    if (!out.series.records.empty() && out.u_snapshots.back().t != run.last.t) {
        out.u_snapshots.push_back({run.last.t, {x.begin(), x.end()}, {grid.y().begin(), grid.y().end()}, run.last.u});
        try {
            out.w_snapshots.push_back(
                {run.last.t, {x.begin(), x.end()}, eta, physical_to_crocco(run.last, grid, model, eta, cfg.far_field_tol)});
        } catch (const DataError&) {
            ++n_unmapped;
        }
    }

    const auto lr = lemma.report();
    out.checks.push_back(lemma21_check("physical", lr, lemma_covered));
    if (n_unmapped > 0) {
        out.checks.push_back({"physical.crocco_mapping", false, false, static_cast<double>(n_unmapped), 0.0,
                              "states that could not be mapped to Crocco variables"});
    }
    if (adverse) {
        const auto pos = check_interior_positivity(run.last, grid, initial_shear);
        out.checks.push_back({"physical.interior_positivity", pos.pass, true, pos.min_interior, 0.0, pos.detail});
        out.checks.push_back({"physical.wall_compatibility", worst_compat <= 0.1, false, worst_compat, 0.1,
                              "worst at t=" + format_real(worst_compat_t)});
    }
    if (run.event) {
        const auto& e = *run.event;
        const auto col = inspect_event_column(run.last.u.column(e.x_index), grid.y());
        const bool ok = col.wall_is_minimizer && col.interior_min > 10.0 * e.shear_floor;
        out.checks.push_back({"physical.wall_first", ok, true, col.interior_min, 10.0 * e.shear_floor,
                              col.wall_is_minimizer ? "wall node minimises the shear" : "interior minimiser"});
        const double px = model.pressure_gradient(e.t_star, e.x_star);
        const double rel = std::abs(e.wall_curvature - px) / std::abs(px);
        out.checks.push_back({"physical.wall_curvature", rel <= 0.1, false, rel, 0.1,
                              "d2u/dy2=" + format_real(e.wall_curvature) + " dP/dx=" + format_real(px)});
    }
    attach_inequality(out.series, k, cfg, run.event.has_value(), out.checks, "physical");
    out.checks.push_back(outcome_check("physical", s, run.event.has_value(), rr.t_end));
    return out;
}

SolverOutcome run_crocco_solver(const RunConfig& cfg, const ResolvedRun& rr, const std::optional<OdeCoefficients>& k,
                                bool with_u, bool lemma_covered) {
    const auto& s = rr.scenario;
    const auto& g = rr.grid;
    const auto& model = s.model;
    const CroccoGrid grid(model.length(), g.n_xi, g.n_eta, g.eta_power);
    const CroccoSetup setup{grid, model, s.w1, crocco_time_step(model, grid, g.dt, cfg.cfl), cfg.wall_order,
                            cfg.clamp_tol};
    const auto xi = grid.xi();
    const auto eta = grid.eta();
    const auto y = stretched_nodes(g.y_max, g.n_y, g.stretch);

    SolverOutcome out;
    out.source = "crocco";
    out.dx = grid.d_xi();
    Lemma21Tracker lemma(lemma21_rate(model, xi, eta), cfg.lemma21_allowance);
    std::size_t n_uninverted = 0;
    const auto snap = [&](const ShearField& w) {
        out.w_snapshots.push_back({w.tau, {xi.begin(), xi.end()}, {eta.begin(), eta.end()}, w.values});
        if (!with_u) return;
        try {
            out.u_snapshots.push_back({w.tau, {xi.begin(), xi.end()}, y, crocco_to_physical(w, grid, model, y)});
        } catch (const DataError&) {
            ++n_uninverted;
        }
    };
    const auto observer = [&](const ShearField& w, DiagnosticRecord& r) {
        r.G_value = lyapunov_G(w, grid);
        r.lemma21_margin = lemma.observe(w.tau, w.values);
        if (wants_snapshot(r.step, cfg.snapshot_every)) snap(w);
    };
    auto run = run_crocco(init_crocco(s.w0, setup), setup, RunStop{rr.t_end, true, cfg.max_bisections}, observer);
    out.series = std::move(run.series);
    out.event = run.event;
    out.steps = run.steps;
    if (out.w_snapshots.back().t != run.last.tau) snap(run.last);

    const auto lr = lemma.report();
    out.checks.push_back(lemma21_check("crocco", lr, lemma_covered));
    out.checks.push_back({"crocco.positivity", !(run.min_interior < -cfg.clamp_tol), true, run.min_interior,
                          -cfg.clamp_tol, std::to_string(run.n_clamped) + " clamped values"});
    if (n_uninverted > 0) {
        out.checks.push_back({"crocco.inverse", false, false, static_cast<double>(n_uninverted), 0.0,
                              "states that could not be mapped back to physical variables"});
    }
    attach_inequality(out.series, k, cfg, run.event.has_value(), out.checks, "crocco");
    out.checks.push_back(outcome_check("crocco", s, run.event.has_value(), rr.t_end));
    return out;
}

nlohmann::ordered_json check_json(const CheckResult& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["gating"] = c.gating;
    j["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr);
    j["threshold"] = c.threshold;
    j["detail"] = c.detail;
    return j;
}

void write_snapshots(const std::filesystem::path& dir, const SolverOutcome& o, bool write_u, bool write_w) {
    if (write_u) {
        for (const auto& sn : o.u_snapshots) {
            write_field_csv(dir / snapshot_name("u", sn.t), "t", sn.t, "x", sn.first, "y", sn.second, sn.values);
        }
    }
    if (write_w) {
        for (const auto& sn : o.w_snapshots) {
            write_field_csv(dir / snapshot_name("w", sn.t), "tau", sn.t, "xi", sn.first, "eta", sn.second,
                            sn.values);
        }
    }
}

}  // namespace

bool RunSummary::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass || !c.gating; });
}

RunSummary execute_run(const RunConfig& cfg) {
    RunSummary sum{resolve(cfg), std::nullopt, std::nullopt, {}};
    const auto& rr = sum.resolved;
    const auto& model = rr.scenario.model;
    const auto gradient = classify_gradient(model);
    const bool adverse = gradient.classification == GradientClass::Adverse;
    const bool covered = gradient.min_grad >= 0.0;
    std::optional<OdeCoefficients> k;
    if (adverse) k = ode_coefficients(lyapunov_constants(model, rr.scenario.w1));

    const std::string& solver = rr.grid.solver;
    if (solver == "both") {
        auto phys = std::async(std::launch::async, [&] { return run_physical_solver(cfg, rr, k, adverse, covered); });
        auto croc = std::async(std::launch::async, [&] { return run_crocco_solver(cfg, rr, k, false, covered); });
        sum.physical = phys.get();
        sum.crocco = croc.get();
    } else if (solver == "physical") {
        sum.physical = run_physical_solver(cfg, rr, k, adverse, covered);
    } else {
        sum.crocco = run_crocco_solver(cfg, rr, k, true, covered);
    }

    for (const auto* o : {sum.physical ? &*sum.physical : nullptr, sum.crocco ? &*sum.crocco : nullptr}) {
        if (o) sum.checks.insert(sum.checks.end(), o->checks.begin(), o->checks.end());
    }
    if (sum.physical && sum.crocco) {
        const auto& p = *sum.physical;
        const auto& c = *sum.crocco;
        const double limit = p.event ? 0.9 * p.event->t_star : rr.t_end;
        const auto cv = cross_validate(p.series, c.series, limit);
        sum.checks.push_back({"both.wall_shear_agreement", cv.rel_linf <= 0.02, false, cv.rel_linf, 0.02,
                              std::to_string(cv.samples) + " samples up to t=" + format_real(limit)});
        if (p.event.has_value() != c.event.has_value()) {
            sum.checks.push_back({"both.event_agreement", false, false, 0.0, 0.0, "only one solver found an event"});
        } else if (p.event) {
            const double dt_rel = std::abs(p.event->t_star - c.event->t_star) / p.event->t_star;
            const double dx_cells = std::abs(p.event->x_star - c.event->x_star) / p.dx;
            sum.checks.push_back({"both.event_time", dt_rel <= 0.05, false, dt_rel, 0.05, ""});
            sum.checks.push_back({"both.event_position", dx_cells <= 2.0, false, dx_cells, 2.0, "in cells of dx"});
        }
    }
    return sum;
}

void write_run_outputs(const RunConfig& cfg, const RunSummary& sum, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir / "snapshots", ec);
    if (ec) throw IoError("cannot create '" + (out_dir / "snapshots").string() + "': " + ec.message());
    for (const char* stale : {"diagnostics.ndjson", "diagnostics_crocco.ndjson", "event.json", "event_crocco.json"}) {
        fs::remove(out_dir / stale, ec);
    }
    for (const auto& entry : fs::directory_iterator(out_dir / "snapshots")) {
        if (entry.path().extension() == ".csv") fs::remove(entry.path(), ec);
    }

    const SolverOutcome& primary = sum.physical ? *sum.physical : *sum.crocco;
    write_ndjson(out_dir / "diagnostics.ndjson", primary.series);
    if (primary.event) write_json(out_dir / "event.json", event_json(*primary.event));
    if (sum.physical && sum.crocco) {
        write_ndjson(out_dir / "diagnostics_crocco.ndjson", sum.crocco->series);
        if (sum.crocco->event) write_json(out_dir / "event_crocco.json", event_json(*sum.crocco->event));
        write_snapshots(out_dir / "snapshots", *sum.physical, true, false);
        write_snapshots(out_dir / "snapshots", *sum.crocco, false, true);
    } else {
        write_snapshots(out_dir / "snapshots", primary, true, true);
    }

    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : sum.checks) checks.push_back(check_json(c));
    nlohmann::ordered_json cj;
    cj["passed"] = sum.passed();
    cj["checks"] = checks;
    write_json(out_dir / "checks.json", cj);

    const auto& s = sum.resolved.scenario;
    nlohmann::ordered_json meta;
    meta["program"] = "prandtl";
    meta["command"] = "run";
    nlohmann::ordered_json conf;
    for (const auto& [key, value] : echo(cfg, sum.resolved)) conf[key] = value;
    meta["config"] = conf;
    nlohmann::ordered_json sc;
    sc["name"] = s.name;
    sc["model"] = s.model.kind_name();
    sc["expected_outcome"] = to_string(s.expected);
    if (s.condition_lower_bound) sc["condition_lower_bound"] = *s.condition_lower_bound;
    if (s.reference_threshold) sc["reference_threshold"] = *s.reference_threshold;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : s.parameters) params[key] = value;
    sc["parameters"] = params;
    nlohmann::ordered_json notes;
    for (const auto& [key, value] : s.notes) notes[key] = value;
    sc["notes"] = notes;
    meta["scenario"] = sc;
    nlohmann::ordered_json design;
    design["time_scheme"] = "first-order semi-implicit";
    design["physical_advection"] = "explicit upwind u*du/dx, implicit hybrid v*du/dy";
    design["crocco_unknown"] = "w^2 for eta < 1/2, w above";
    design["crocco_coefficients"] = "iterated to convergence within each step";
    design["crocco_wall_closure_order"] = cfg.wall_order;
    design["eta_advection"] = "hybrid central/upwind by cell Peclet number";
    design["event_position"] = "most upstream column with non-positive wall shear";
    design["event_time"] = "bisection of the step, then linear interpolation of the wall value";
    design["lemma21_constant"] = "exp(N t) with N = max(0, sup(-2B)) on the grid";
    design["physical_G_eta_nodes"] = sum.resolved.grid.n_eta_diag;
    meta["design"] = design;
    nlohmann::ordered_json versions;
    versions["prandtl"] = PRANDTL_VERSION;
    versions["boost"] = BOOST_LIB_VERSION;
    versions["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    versions["compiler"] = __VERSION__;
    meta["versions"] = versions;
    nlohmann::ordered_json solvers = nlohmann::ordered_json::array();
    for (const auto* o : {sum.physical ? &*sum.physical : nullptr, sum.crocco ? &*sum.crocco : nullptr}) {
        if (!o) continue;
        nlohmann::ordered_json j;
        j["source"] = o->source;
        j["steps"] = o->steps;
        j["records"] = o->series.records.size();
        j["event"] = o->event.has_value();
        solvers.push_back(j);
    }
    meta["solvers"] = solvers;
    write_json(out_dir / "meta.json", meta);
}

int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
    const auto sum = execute_run(cfg);
    write_run_outputs(cfg, sum, out_dir);
    for (const auto* o : {sum.physical ? &*sum.physical : nullptr, sum.crocco ? &*sum.crocco : nullptr}) {
        if (!o) continue;
        log << o->source << ": " << o->steps << " steps";
        if (o->event) {
            log << ", back-flow at t*=" << format_real(o->event->t_star) << " x*=" << format_real(o->event->x_star);
        } else {
            log << ", no back-flow up to t=" << format_real(sum.resolved.t_end);
        }
        log << '\n';
    }
    for (const auto& c : sum.checks) {
        log << (c.pass ? "  ok   " : (c.gating ? "  FAIL " : "  warn ")) << c.name << " = " << format_real(c.value);
        if (!c.detail.empty()) log << " (" << c.detail << ")";
        log << '\n';
    }
    return sum.passed() ? 0 : 1;
}

}  // namespace prandtl::app
