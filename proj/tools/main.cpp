// dbar-akns: command line front end for the Dbar/AKNS solver pipeline.
//
// Subcommands: cauchy, solve, reconstruct, verify. Each reads a JSON config,
// writes CSV/JSON artifacts into --out, and exits 0 on success, 2 on a
// small-norm violation (divergent iteration), 3 on non-convergence with
// partial output kept, 4 on a config error.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "dbar/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Dbar problem solver for the AKNS spectral problem"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    bool deterministic = false;

    for (const char* name : {"cauchy", "solve", "reconstruct", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_flag("--deterministic", deterministic,
                      "Force single-threaded, byte-stable output");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        dbar::RunConfig cfg = dbar::load_config(config_path);
        if (deterministic) cfg.deterministic = true;
        if (cfg.deterministic) {
#ifdef _WIN32
            _putenv_s("DBAR_AKNS_THREADS", "1");
#else
            setenv("DBAR_AKNS_THREADS", "1", 1);
#endif
        }
        const dbar::PipelineResult res = dbar::run_pipeline(command, cfg, out_dir);
        std::printf("%s\n", res.message.c_str());
        for (const std::string& f : res.outputs)
            std::printf("wrote %s/%s\n", out_dir.c_str(), f.c_str());
        return res.exit_code;
    } catch (const dbar::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return dbar::kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return dbar::kExitConfigError;
    }
}
