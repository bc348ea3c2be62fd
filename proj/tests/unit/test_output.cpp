#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "app/output.hpp"

using namespace prandtl;
using namespace prandtl::app;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const char* name) {
    const auto dir = fs::temp_directory_path() / "prandtl_output_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("diagnostic records keep a fixed field order") {
    DiagnosticRecord r;
    r.t = 0.5;
    r.min_wall_shear = 1.25;
    r.argmin_x = 2.0;
    r.G_value = std::numeric_limits<double>::infinity();
    r.lemma21_margin = 0.01;
    CHECK(record_json(r).dump() ==
          R"({"t":0.5,"min_wall_shear":1.25,"argmin_x":2.0,"G_value":null,"lemma21_margin":0.01,"inequality_margin":null})");

    DiagnosticSeries s;
    s.records = {r, r};
    const auto p = scratch("d.ndjson");
    write_ndjson(p, s);
    const auto text = slurp(p);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("field csv carries the grid in header rows") {
    Field2D f(2, 3);
    f(1, 2) = 7.0;
    const std::vector<double> x{0.0, 1.0}, y{0.0, 0.5, 1.0};
    const auto p = scratch("u.csv");
    write_field_csv(p, "t", 0.25, "x", x, "y", y, f);
    std::istringstream in(slurp(p));
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,0.25");
    std::getline(in, line);
    CHECK(line == "x,0,1");
    std::getline(in, line);
    CHECK(line == "y,0,0.5,1");
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line.substr(line.rfind(',') + 1) == "7");
}

TEST_CASE("snapshot names and event json") {
    CHECK(snapshot_name("u", 1e-3) == "u_1.000000000e-03.csv");
    BackFlowEvent e;
    e.t_star = 0.1;
    e.x_star = 0.2;
    e.wall_curvature = 3.0;
    e.source = "crocco";
    const auto j = event_json(e);
    CHECK(j.begin().key() == "t_star");
    CHECK(j["x_star"] == 0.2);
    CHECK(j["wall_curvature"] == 3.0);
    CHECK(j["source"] == "crocco");
}

TEST_CASE("unwritable paths raise an i/o error") {
    CHECK_THROWS_AS(write_json("/nonexistent-dir/x/y.json", nlohmann::ordered_json::object()), IoError);
}
