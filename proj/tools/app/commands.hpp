#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "prandtl/diagnostics.hpp"

namespace prandtl::app {

struct BoundReport {
    std::string scenario;
    double T = 0.0;
    LyapunovConstants constants;
    OdeCoefficients coefficients;
    ConditionValue condition;
    ThresholdResult threshold;
    OdeBound trajectory;  // comparison ODE started from the condition value
    std::optional<double> closed_form_lower_bound;
    std::optional<double> reference_threshold;
    std::string verdict;  // "backflow-expected" or "condition not met"
};

/// Throws PreconditionError ("adverse classification required") unless the
/// scenario's gradient is adverse.
BoundReport compute_bound(const RunConfig& cfg);

/// Prints a summary and writes bound.json; always returns 0.
int cmd_blowup_bound(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

struct ValidationOptions {
    /// Multiplies the wall-shear stencil (fault injection).
    double shear_scale = 1.0;
};

struct ValidationCheck {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool pass = false;
};

std::vector<ValidationCheck> run_validation(const ValidationOptions& opts = {});

/// Prints one line per oracle; returns 0 iff all pass.
int cmd_validate(std::ostream& log, const ValidationOptions& opts = {});

int cmd_scenarios(std::ostream& log);

}  // namespace prandtl::app
