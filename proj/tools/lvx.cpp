// lvx — three-level atoms (lambda, vee, ladder) in a two-mode quantized
// field, with and without the counter-rotating terms.

#include <CLI11.hpp>
#include <iostream>

#include "lvx/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"three-level atom / two-mode field simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool svg = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "run configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides config)");
        return cmd;
    };
    CLI::App* validate = add_common(app.add_subcommand(
        "validate", "check parameters and report diagnostics"));
    CLI::App* spectrum = add_common(app.add_subcommand(
        "spectrum", "write per-block eigenvalues and deformations (spectrum.csv)"));
    CLI::App* dynamics = add_common(app.add_subcommand(
        "dynamics", "write W, Mandel Q and norm time series (series.csv)"));
    dynamics->add_flag("--svg", svg, "also emit w.svg and q.svg");
    CLI::App* compare = add_common(app.add_subcommand(
        "compare", "analytic spectra vs exact diagonalization (compare.csv)"));

    CLI11_PARSE(app, argc, argv);

    try {
        lvx::cli::RunConfig cfg = lvx::cli::load_config_file(config_path);
        if (!out_dir.empty()) cfg.outputs = out_dir;
        if (svg) cfg.emit_svg = true;

        if (validate->parsed()) return lvx::cli::run_validate(cfg, std::cout);
        if (spectrum->parsed()) return lvx::cli::run_spectrum(cfg, std::cout);
        if (dynamics->parsed()) return lvx::cli::run_dynamics(cfg, std::cout);
        if (compare->parsed()) return lvx::cli::run_compare(cfg, std::cout);
    } catch (const lvx::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return lvx::cli::kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lvx::cli::kExitNumeric;
    }
    return lvx::cli::kExitOk;
}
