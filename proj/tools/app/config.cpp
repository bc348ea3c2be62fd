#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "prandtl/errors.hpp"

namespace prandtl::app {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view key, const std::string& what) {
    throw ConfigError(std::string(key) + ": " + what);
}

double parse_real(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        fail(key, "expected a real number, got '" + std::string(v) + "'");
    }
    return out;
}

long long parse_integer(std::string_view key, std::string_view v) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        fail(key, "expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view v) {
    const long long n = parse_integer(key, v);
    if (n < 8) fail(key, "must be >= 8, got " + std::string(v));
    return static_cast<std::size_t>(n);
}

double parse_positive(std::string_view key, std::string_view v) {
    const double x = parse_real(key, v);
    if (!(x > 0.0)) fail(key, "must be > 0, got " + std::string(v));
    return x;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"scenario",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             if (v.empty()) fail(k, "must not be empty");
             c.scenario = std::string(v);
         }},
        {"L", [](RunConfig& c, std::string_view k, std::string_view v) { c.params["L"] = parse_positive(k, v); }},
        {"M", [](RunConfig& c, std::string_view k, std::string_view v) { c.params["M"] = parse_real(k, v); }},
        {"alpha",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.params["alpha"] = parse_positive(k, v); }},
        {"t0", [](RunConfig& c, std::string_view k, std::string_view v) { c.params["t0"] = parse_positive(k, v); }},
        {"T", [](RunConfig& c, std::string_view k, std::string_view v) { c.params["T"] = parse_positive(k, v); }},
        {"n_x", [](RunConfig& c, std::string_view k, std::string_view v) { c.n_x = parse_count(k, v); }},
        {"n_y", [](RunConfig& c, std::string_view k, std::string_view v) { c.n_y = parse_count(k, v); }},
        {"n_xi", [](RunConfig& c, std::string_view k, std::string_view v) { c.n_xi = parse_count(k, v); }},
        {"n_eta", [](RunConfig& c, std::string_view k, std::string_view v) { c.n_eta = parse_count(k, v); }},
        {"n_eta_diag",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.n_eta_diag = parse_count(k, v); }},
        {"y_max", [](RunConfig& c, std::string_view k, std::string_view v) { c.y_max = parse_positive(k, v); }},
        {"stretch",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const double s = parse_real(k, v);
             if (!(s > 0.0 && s <= 1.0)) fail(k, "must lie in (0, 1], got " + std::string(v));
             c.stretch = s;
         }},
        {"eta_power",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const double p = parse_real(k, v);
             if (!(p >= 1.0)) fail(k, "must be >= 1, got " + std::string(v));
             c.eta_power = p;
         }},
        {"dt", [](RunConfig& c, std::string_view k, std::string_view v) { c.dt = parse_positive(k, v); }},
        {"cfl",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const double f = parse_real(k, v);
             if (!(f > 0.0 && f <= 1.0)) fail(k, "must lie in (0, 1], got " + std::string(v));
             c.cfl = f;
         }},
        {"t_end", [](RunConfig& c, std::string_view k, std::string_view v) { c.t_end = parse_positive(k, v); }},
        {"solver",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             if (v != "physical" && v != "crocco" && v != "both") {
                 fail(k, "must be physical, crocco or both, got '" + std::string(v) + "'");
             }
             c.solver = std::string(v);
         }},
        {"wall_order",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const long long o = parse_integer(k, v);
             if (o != 1 && o != 2) fail(k, "must be 1 or 2");
             c.wall_order = static_cast<int>(o);
         }},
        {"snapshot_every",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const long long n = parse_integer(k, v);
             if (n < 0) fail(k, "must be >= 0");
             c.snapshot_every = static_cast<std::size_t>(n);
         }},
        {"far_field_tol",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.far_field_tol = parse_positive(k, v); }},
        {"max_bisections",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const long long n = parse_integer(k, v);
             if (n < 0 || n > 60) fail(k, "must lie in [0, 60]");
             c.max_bisections = static_cast<int>(n);
         }},
        {"lemma21_allowance",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.lemma21_allowance = parse_positive(k, v); }},
        {"inequality_tol",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.inequality_tol = parse_positive(k, v); }},
        {"inequality_exclude",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             const long long n = parse_integer(k, v);
             if (n < 0) fail(k, "must be >= 0");
             c.inequality_exclude = static_cast<std::size_t>(n);
         }},
        {"clamp_tol",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.clamp_tol = parse_positive(k, v); }},
    };
    return table;
}

const std::map<std::string, std::set<std::string>>& scenario_params() {
    static const std::map<std::string, std::set<std::string>> m = {
        {"example4.1", {"L"}},
        {"example4.2", {"M", "alpha", "T"}},
        {"favourable", {}},
        {"heat-oracle", {"t0"}},
    };
    return m;
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key.empty()) throw ConfigError("empty key");
    const auto& table = setters();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == key; });
    if (it == table.end()) throw ConfigError(std::string(key) + ": unknown key");
    it->second(cfg, key, value);
    cfg.keys_set.emplace_back(key);
}

std::pair<std::string, std::string> split_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(trim(text)) + ": expected key=value");
    }
    return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

RunConfig parse_config_text(std::string_view text, const std::string& origin) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key=value, got '" +
                              std::string(line) + "'");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (!seen.insert(key).second) throw ConfigError(key + ": duplicate key");
        apply_setting(cfg, key, line.substr(eq + 1));
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void validate(const RunConfig& cfg) {
    if (cfg.scenario.empty()) throw ConfigError("scenario: required key missing");
    const auto& table = scenario_params();
    const auto it = table.find(cfg.scenario);
    if (it == table.end()) throw ConfigError("scenario: unknown name '" + cfg.scenario + "'");
    for (const auto& [k, _] : cfg.params) {
        if (!it->second.contains(k)) throw ConfigError(k + ": not a parameter of scenario " + cfg.scenario);
    }
}

ResolvedRun resolve(const RunConfig& cfg) {
    validate(cfg);
    Scenario s = make_scenario(cfg.scenario, cfg.params);
    GridDefaults g = s.grid;
    if (cfg.n_x) g.n_x = *cfg.n_x;
    if (cfg.n_y) g.n_y = *cfg.n_y;
    if (cfg.n_xi) g.n_xi = *cfg.n_xi;
    if (cfg.n_eta) g.n_eta = *cfg.n_eta;
    if (cfg.n_eta_diag) g.n_eta_diag = *cfg.n_eta_diag;
    if (cfg.y_max) g.y_max = *cfg.y_max;
    if (cfg.stretch) g.stretch = *cfg.stretch;
    if (cfg.eta_power) g.eta_power = *cfg.eta_power;
    if (cfg.dt) g.dt = *cfg.dt;
    if (cfg.solver) g.solver = *cfg.solver;
    const double horizon = s.model.horizon();
    double t_end = cfg.t_end.value_or(g.t_end);
    if (t_end > horizon * (1.0 + 1e-12)) {
        throw ConfigError("t_end: exceeds the scenario horizon " + format_real(horizon));
    }
    t_end = std::min(t_end, horizon);
    g.t_end = t_end;
    return {std::move(s), g, t_end};
}

std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg, const ResolvedRun& run) {
    const auto& g = run.grid;
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("scenario", cfg.scenario);
    for (const auto& k : scenario_params().at(cfg.scenario)) {
        const auto it = run.scenario.parameters.find(k);
        if (it != run.scenario.parameters.end()) out.emplace_back(k, format_real(it->second));
    }
    out.emplace_back("n_x", std::to_string(g.n_x));
    out.emplace_back("n_y", std::to_string(g.n_y));
    out.emplace_back("n_xi", std::to_string(g.n_xi));
    out.emplace_back("n_eta", std::to_string(g.n_eta));
    out.emplace_back("n_eta_diag", std::to_string(g.n_eta_diag));
    out.emplace_back("y_max", format_real(g.y_max));
    out.emplace_back("stretch", format_real(g.stretch));
    out.emplace_back("eta_power", format_real(g.eta_power));
    out.emplace_back("dt", format_real(g.dt));
    out.emplace_back("cfl", format_real(cfg.cfl));
    out.emplace_back("t_end", format_real(run.t_end));
    out.emplace_back("solver", g.solver);
    out.emplace_back("wall_order", std::to_string(cfg.wall_order));
    out.emplace_back("snapshot_every", std::to_string(cfg.snapshot_every));
    out.emplace_back("far_field_tol", format_real(cfg.far_field_tol));
    out.emplace_back("max_bisections", std::to_string(cfg.max_bisections));
    out.emplace_back("lemma21_allowance", format_real(cfg.lemma21_allowance));
    out.emplace_back("inequality_tol", format_real(cfg.inequality_tol));
    out.emplace_back("inequality_exclude", std::to_string(cfg.inequality_exclude));
    out.emplace_back("clamp_tol", format_real(cfg.clamp_tol));
    return out;
}

}  // namespace prandtl::app
