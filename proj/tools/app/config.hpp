#pragma once

// Run configuration: flat `key = value` text, `#` starts a comment.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prandtl/scenarios.hpp"

namespace prandtl::app {

struct RunConfig {
    std::string scenario;
    /// Scenario parameters (L, M, alpha, t0, T).
    std::map<std::string, double> params;

    std::optional<std::size_t> n_x, n_y, n_xi, n_eta, n_eta_diag;
    std::optional<double> y_max, stretch, eta_power, dt, t_end;
    std::optional<std::string> solver;

    double cfl = 1.0;
    int wall_order = 2;
    std::size_t snapshot_every = 0;  // 0: first and last state only
    double far_field_tol = 1e-3;
    int max_bisections = 20;
    double lemma21_allowance = 0.05;
    double inequality_tol = 0.05;
    std::size_t inequality_exclude = 10;
    double clamp_tol = 1e-10;

    /// Keys in the order they were set, for error context.
    std::vector<std::string> keys_set;
};

/// Known keys, in echo order.
const std::vector<std::string>& config_keys();

/// Applies one `key=value` assignment.  Throws ConfigError naming the key on
/// unknown keys, malformed values or invariant violations.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key=value` lines.  `origin` prefixes line numbers in messages.
RunConfig parse_config_text(std::string_view text, const std::string& origin = "config");

/// Reads and parses a file.  Throws ConfigError if it cannot be read.
RunConfig parse_config_file(const std::string& path);

/// Splits "key=value" (used for --override).
std::pair<std::string, std::string> split_assignment(std::string_view text);

/// Checks required keys and cross-key invariants.
void validate(const RunConfig& cfg);

/// Scenario with the config's grid and parameter overrides applied.
struct ResolvedRun {
    Scenario scenario;
    GridDefaults grid;
    double t_end;
};

ResolvedRun resolve(const RunConfig& cfg);

/// (key, value) pairs of the fully resolved configuration, fixed order.
std::vector<std::pair<std::string, std::string>> echo(const RunConfig& cfg, const ResolvedRun& run);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

}  // namespace prandtl::app
