#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "config.hpp"

namespace prandtl::app {

namespace {

nlohmann::ordered_json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::ordered_json number_or_null(const std::optional<double>& v) {
    if (!v) return nullptr;
    return number_or_null(*v);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

nlohmann::ordered_json record_json(const DiagnosticRecord& r) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["min_wall_shear"] = number_or_null(r.min_wall_shear);
    j["argmin_x"] = r.argmin_x;
    j["G_value"] = number_or_null(r.G_value);
    j["lemma21_margin"] = number_or_null(r.lemma21_margin);
    j["inequality_margin"] = number_or_null(r.inequality_margin);
    return j;
}

void write_ndjson(const std::filesystem::path& path, const DiagnosticSeries& series) {
    auto out = open_for_write(path);
    for (const auto& r : series.records) out << record_json(r).dump() << '\n';
    finish(out, path);
}

void write_field_csv(const std::filesystem::path& path, const char* time_name, double t, const char* first_name,
                     std::span<const double> first, const char* second_name, std::span<const double> second,
                     const Field2D& values) {
    auto out = open_for_write(path);
    out << time_name << ',' << format_real(t) << '\n';
    out << first_name;
    for (const double a : first) out << ',' << format_real(a);
    out << '\n' << second_name;
    for (const double b : second) out << ',' << format_real(b);
    out << '\n';
    for (std::size_t i = 0; i < values.n0(); ++i) {
        const auto col = values.column(i);
        for (std::size_t j = 0; j < col.size(); ++j) out << (j ? "," : "") << format_real(col[j]);
        out << '\n';
    }
    finish(out, path);
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

nlohmann::ordered_json event_json(const BackFlowEvent& e) {
    nlohmann::ordered_json j;
    j["t_star"] = e.t_star;
    j["x_star"] = e.x_star;
    j["wall_curvature"] = number_or_null(e.wall_curvature);
    j["source"] = e.source;
    j["x_index"] = e.x_index;
    j["t_before"] = e.t_before;
    j["t_after"] = e.t_after;
    j["shear_floor"] = number_or_null(e.shear_floor);
    j["bisections"] = e.bisections;
    return j;
}

std::string snapshot_name(const char* prefix, double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%.9e.csv", prefix, t);
    return buf;
}

}  // namespace prandtl::app
