#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace prandtl {

/// One row of the per-step time series.
struct DiagnosticRecord {
    std::size_t step = 0;
    double t = 0.0;
    double min_wall_shear = 0.0;  // min over x of ∂_y u(t, x, 0)
    double argmin_x = 0.0;
    double G_value = 0.0;         // Lyapunov functional; +inf once the wall shear vanishes
    std::optional<double> lemma21_margin;
    std::optional<double> inequality_margin;
};

struct DiagnosticSeries {
    std::string source;
    std::vector<DiagnosticRecord> records;

    bool empty() const noexcept { return records.empty(); }
};

/// First back-flow point located by a solver.
struct BackFlowEvent {
    double t_star = 0.0;
    double x_star = 0.0;
    std::size_t x_index = 0;
    /// Discrete ∂²_y u(t*, x*, 0).
    double wall_curvature = 0.0;
    std::string source;
    /// Final bisection bracket: every wall shear is positive at t_before and
    /// some column has crossed zero at t_after.
    double t_before = 0.0;
    double t_after = 0.0;
    /// max(|shear(t_before, x*)|, |shear(t_after, x*)|): how well the zero is resolved.
    double shear_floor = 0.0;
    int bisections = 0;
};

struct RunStop {
    double t_end = 0.0;
    bool detect_backflow = true;
    int max_bisections = 20;
};

}  // namespace prandtl
