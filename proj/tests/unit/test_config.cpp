#include <doctest.h>

#include <string>

#include "app/config.hpp"
#include "prandtl/errors.hpp"

using namespace prandtl;
using namespace prandtl::app;

namespace {

std::string config_error(const std::string& text) {
    try {
        validate(parse_config_text(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("comments, blank lines and whitespace") {
    const auto cfg = parse_config_text("# header\n\nscenario = example4.1   # trailing\n  L=2.5\nn_y = 65\n");
    CHECK(cfg.scenario == "example4.1");
    CHECK(cfg.params.at("L") == 2.5);
    CHECK(cfg.n_y == 65u);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("errors name the offending key") {
    CHECK(config_error("scenario=example4.1\nn_y=4\n").find("n_y") != std::string::npos);
    CHECK(config_error("scenario=example4.1\nfoo=1\n").find("foo: unknown key") != std::string::npos);
    CHECK(config_error("n_x=16\n").find("scenario") != std::string::npos);
    CHECK(config_error("scenario=example4.1\nL=abc\n").find("L") != std::string::npos);
    CHECK(config_error("scenario=example4.1\nsolver=spectral\n").find("solver") != std::string::npos);
    CHECK(config_error("scenario=example4.1\nL=1\nL=2\n").find("L") != std::string::npos);
    CHECK(config_error("scenario=heat-oracle\nL=2\n").find("L") != std::string::npos);
    CHECK(config_error("scenario=nowhere\n").find("scenario") != std::string::npos);
    CHECK(config_error("scenario example4.1\n") != "");
}

TEST_CASE("counts below eight are rejected") {
    for (const char* key : {"n_x", "n_y", "n_xi", "n_eta", "n_eta_diag"}) {
        RunConfig cfg;
        CHECK_THROWS_AS(apply_setting(cfg, key, "7"), ConfigError);
        CHECK_NOTHROW(apply_setting(cfg, key, "8"));
    }
}

TEST_CASE("overrides apply after the file") {
    auto cfg = parse_config_text("scenario=example4.1\nn_x=32\n");
    const auto [k, v] = split_assignment("n_x = 48");
    CHECK(k == "n_x");
    apply_setting(cfg, k, v);
    CHECK(cfg.n_x == 48u);
    CHECK_THROWS_AS(split_assignment("n_x"), ConfigError);
}

TEST_CASE("resolve applies defaults and overrides") {
    auto cfg = parse_config_text("scenario=example4.1\nL=2\nn_xi=32\n");
    validate(cfg);
    const auto rr = resolve(cfg);
    CHECK(rr.grid.n_xi == 32);
    CHECK(rr.grid.n_x == rr.scenario.grid.n_x);
    CHECK(rr.t_end == doctest::Approx(4.0 / 32.0));

    apply_setting(cfg, "t_end", "1");
    CHECK_THROWS_AS(resolve(cfg), ConfigError);
}

TEST_CASE("echo round-trips through the parser") {
    auto cfg = parse_config_text("scenario=example4.2\nM=20\nalpha=0.01\nsolver=both\n");
    validate(cfg);
    const auto rr = resolve(cfg);
    std::string text;
    for (const auto& [k, v] : echo(cfg, rr)) text += k + "=" + v + "\n";
    auto again = parse_config_text(text);
    CHECK_NOTHROW(validate(again));
    const auto rr2 = resolve(again);
    CHECK(rr2.grid.n_y == rr.grid.n_y);
    CHECK(rr2.grid.y_max == rr.grid.y_max);
    CHECK(rr2.scenario.parameters == rr.scenario.parameters);
    CHECK(format_real(0.1) == "0.1");
}
