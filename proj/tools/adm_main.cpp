#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "adm/io.hpp"
#include "adm/runner.hpp"
#include "adm/version.hpp"

namespace {

// Exit codes: 0 success, 1 failing verdict (returned by run_config),
// 2 configuration error, 3 numerical failure (NaN / CFL violation).
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_error_record(const std::string& out_dir, const std::string& kind,
                        const std::string& message, int exit_code) {
    if (out_dir.empty()) return;
    try {
        nlohmann::json j;
        j["adm_version"] = adm::kVersion;
        j["error"] = message;
        j["kind"] = kind;
        j["exit_code"] = exit_code;
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (!ec)
            adm::write_text_file(
                (std::filesystem::path(out_dir) / "error.json").string(),
                j.dump(2) + "\n");
    } catch (...) {
        // best effort; the exit code and stderr line carry the failure
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deconvolved Boussinesq spectral laboratory"};
    app.set_version_flag("--version", std::string("adm ") + adm::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    const char* const names[] = {"simulate", "gap", "squeeze", "verify-ops"};
    const char* const blurbs[] = {
        "integrate the configured system and record diagnostics",
        "report the spectral gap, cone and squeezing rate",
        "run the seeded two-trajectory cone ensemble",
        "run the operator and identity verification suite"};
    for (int i = 0; i < 4; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", config_path, "run configuration file")
            ->required();
        sub->add_option("--out", out_dir, "output directory")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    const std::string experiment = app.get_subcommands().front()->get_name();

    try {
        adm::RunConfig cfg = adm::parse_config_file(config_path);
        if (cfg.experiment != experiment)
            throw adm::ConfigError("config sets experiment = " + cfg.experiment +
                                       " but the '" + experiment +
                                       "' subcommand was invoked",
                                   "experiment");
        return adm::run_config(cfg, out_dir);
    } catch (const adm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        write_error_record(out_dir, "config", e.what(), kExitConfig);
        return kExitConfig;
    } catch (const adm::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        write_error_record(out_dir, "numerical", e.what(), kExitNumerical);
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        write_error_record(out_dir, "internal", e.what(), kExitNumerical);
        return kExitNumerical;
    }
}
