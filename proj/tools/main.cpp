#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/output.hpp"
#include "app/run.hpp"
#include "prandtl/errors.hpp"

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kConfig = 2, kSolver = 3, kIo = 4 };

prandtl::app::RunConfig load(const std::string& config_path, const std::string& scenario,
                             const std::vector<std::string>& overrides) {
    prandtl::app::RunConfig cfg;
    if (!config_path.empty()) cfg = prandtl::app::parse_config_file(config_path);
    if (!scenario.empty()) prandtl::app::apply_setting(cfg, "scenario", scenario);
    for (const auto& o : overrides) {
        const auto [k, v] = prandtl::app::split_assignment(o);
        prandtl::app::apply_setting(cfg, k, v);
    }
    prandtl::app::validate(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsteady Prandtl boundary layers: back-flow detection and Lyapunov blow-up checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string scenario;
    std::string out_dir = "prandtl-out";
    std::vector<std::string> overrides;
    double fault_shear_scale = 1.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--scenario", scenario, "built-in scenario name");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--override", overrides, "key=value, applied after the config file")->take_all();
    };
    auto* run = app.add_subcommand("run", "run the solver(s) and write diagnostics");
    add_common(run);
    auto* bound = app.add_subcommand("blowup-bound", "Lyapunov constants, condition value and critical threshold");
    add_common(bound);
    auto* validate = app.add_subcommand("validate", "built-in oracle suite");
    validate->add_option("--fault-shear-scale", fault_shear_scale, "multiply the wall-shear stencil (fault injection)");
    auto* list = app.add_subcommand("scenarios", "list built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return prandtl::app::cmd_scenarios(std::cout);
        if (validate->parsed()) {
            return prandtl::app::cmd_validate(std::cout, prandtl::app::ValidationOptions{fault_shear_scale});
        }
        const auto cfg = load(config_path, scenario, overrides);
        if (run->parsed()) return prandtl::app::cmd_run(cfg, out_dir, std::cout);
        if (bound->parsed()) return prandtl::app::cmd_blowup_bound(cfg, out_dir, std::cout);
    } catch (const prandtl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const prandtl::PreconditionError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kConfig;
    } catch (const prandtl::app::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const prandtl::Error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolver;
    }
    return kOk;
}
