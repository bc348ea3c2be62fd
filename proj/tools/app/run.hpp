#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "prandtl/crocco_solver.hpp"
#include "prandtl/physical_solver.hpp"
#include "prandtl/run_types.hpp"

namespace prandtl::app {

struct CheckResult {
    std::string name;
    bool pass = true;
    /// Gating checks decide the exit status; the others are reported only.
    bool gating = true;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> first;   // x or ξ
    std::vector<double> second;  // y or η
    Field2D values;
};

struct SolverOutcome {
    std::string source;
    DiagnosticSeries series;
    std::optional<BackFlowEvent> event;
    std::size_t steps = 0;
    std::vector<Snapshot> u_snapshots;
    std::vector<Snapshot> w_snapshots;
    std::vector<CheckResult> checks;
    double dx = 0.0;  // Δx or Δξ
};

struct RunSummary {
    ResolvedRun resolved;
    std::optional<SolverOutcome> physical;
    std::optional<SolverOutcome> crocco;
    std::vector<CheckResult> checks;  // every check, solver checks first
    bool passed() const;
};

/// Runs the configured solver(s) and all runtime checks; no files written.
RunSummary execute_run(const RunConfig& cfg);

/// Writes diagnostics, snapshots, event, checks and meta files into `out_dir`.
void write_run_outputs(const RunConfig& cfg, const RunSummary& summary, const std::filesystem::path& out_dir);

/// Full `run` command.  Returns 0 on a clean finish or clean event and 1 when
/// a gating check failed; library errors propagate.
int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace prandtl::app
