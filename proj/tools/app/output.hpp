#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "prandtl/errors.hpp"
#include "prandtl/numerics.hpp"
#include "prandtl/run_types.hpp"

namespace prandtl::app {

class IoError : public Error {
public:
    using Error::Error;
};

/// One record per line: t, min_wall_shear, argmin_x, G_value, lemma21_margin,
/// inequality_margin (null where not available or not finite).
nlohmann::ordered_json record_json(const DiagnosticRecord& r);
void write_ndjson(const std::filesystem::path& path, const DiagnosticSeries& series);

/// Header rows `<time_name>,t`, `<first_name>,a…`, `<second_name>,b…`, then one
/// row per first-axis node holding the field over the second axis.
void write_field_csv(const std::filesystem::path& path, const char* time_name, double t, const char* first_name,
                     std::span<const double> first, const char* second_name, std::span<const double> second,
                     const Field2D& values);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

nlohmann::ordered_json event_json(const BackFlowEvent& e);

/// "u_1.000000000e-03.csv" style names.
std::string snapshot_name(const char* prefix, double t);

}  // namespace prandtl::app
