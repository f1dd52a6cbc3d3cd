// doughslit: command-line driver for the wave-packet solver, the dough Monte
// Carlo model, dataset sweeps and the analysis primitives.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "doughslit/analysis/peaks.hpp"
#include "doughslit/cli/commands.hpp"

using namespace doughslit;
using namespace doughslit::cli;

namespace {

void add_common(CLI::App* cmd, CommonOptions& o, const char* config_help = "key = value configuration file") {
    cmd->add_option("--config", o.config, config_help)->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--set", o.sets, "override as key=value (repeatable)");
    cmd->add_flag("--dry-run", o.dry_run, "print the resolved configuration and write nothing");
    cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"doughslit: double-slit wave packets, dough-model Monte Carlo and analysis tools"};
    app.require_subcommand(1);

    CommonOptions evolve_opt;
    auto* evolve = app.add_subcommand("evolve", "evolve a Gaussian packet through the double slit");
    add_common(evolve, evolve_opt);

    CommonOptions dough_opt;
    DoughFlags dough_flags;
    auto* dough_cmd = app.add_subcommand("dough", "run the dough-model Monte Carlo");
    add_common(dough_cmd, dough_opt);
    dough_cmd->add_option("--mode", dough_flags.mode, "interference | no-interference")
        ->check(CLI::IsMember({"interference", "no-interference"}));
    dough_cmd->add_option("--trials", dough_flags.trials, "number of Monte Carlo trials");
    dough_cmd->add_option("--seed", dough_flags.seed, "master seed (falls back to DOUGHSLIT_SEED)");
    dough_cmd->add_option("--t-interact", dough_flags.t_interact, "interaction steps");
    dough_cmd->add_option("--force-levels", dough_flags.force_levels, "force level count");
    dough_cmd->add_option("--weight-levels", dough_flags.weight_levels, "mass weight level count");
    dough_cmd->add_option("--total-steps", dough_flags.total_steps, "total steps until detection");
    dough_cmd->add_option("--bin", dough_flags.bin, "histogram bin size");
    dough_cmd->add_option("--smooth-window", dough_flags.smooth_window, "moving-average window in bins");

    CommonOptions sweep_opt;
    std::optional<std::uint64_t> sweep_seed;
    auto* sweep = app.add_subcommand("sweep", "run a dataset or dough-model parameter sweep");
    add_common(sweep, sweep_opt, "sweep specification file (kind = simulation | dough)");
    sweep->add_option("--spec", sweep_opt.config, "alias of --config")->check(CLI::ExistingFile);
    sweep->add_option("--seed", sweep_seed, "master seed for dough sweeps (falls back to DOUGHSLIT_SEED)");

    auto* analyze = app.add_subcommand("analyze", "analysis primitives");
    analyze->require_subcommand(1);
    std::vector<std::string> sim_files;
    auto* sim = analyze->add_subcommand("similarity", "overlap similarity of two distributions (percent)");
    sim->add_option("files", sim_files, "two CSV files; the last column is used")->required()->expected(2)->check(CLI::ExistingFile);

    std::string fr_file, fr_out;
    analysis::FringeOptions fr_opt;
    auto* fr = analyze->add_subcommand("fringes", "peak and fringe report for a histogram CSV");
    fr->add_option("file", fr_file, "histogram CSV (bin_left,bin_right,count)")->required()->check(CLI::ExistingFile);
    fr->add_option("--smooth-window", fr_opt.smooth_window, "moving-average window in bins")->capture_default_str();
    fr->add_option("--min-prominence", fr_opt.min_prominence, "minimum prominence as a fraction of the maximum")
        ->capture_default_str();
    fr->add_option("--cv-threshold", fr_opt.cv_threshold, "spacing CV below which a pattern counts as fringed")
        ->capture_default_str();
    fr->add_option("--out", fr_out, "write peak_center,height CSV here");

    std::string ce_file, ce_radii, ce_metric = "hops", ce_out;
    auto* ce = analyze->add_subcommand("centrality", "closeness centrality over proximity graphs");
    ce->add_option("file", ce_file, "points CSV (x,y)")->required()->check(CLI::ExistingFile);
    ce->add_option("--radius,--radii", ce_radii, "radius or comma list / linspace(a, b, n) of radii")->required();
    ce->add_option("--metric", ce_metric, "hops | euclidean")->capture_default_str();
    ce->add_option("--out", ce_out, "write node,x,y,closeness,is_max CSV here");

    std::string render_in, render_out;
    auto* render = app.add_subcommand("render", "render a QF2/QM2 file as a PGM heatmap");
    render->add_option("input", render_in, "QF2 or QM2 file")->required()->check(CLI::ExistingFile);
    render->add_option("--out", render_out, "output PGM path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*evolve) return cmd_evolve(evolve_opt);
        if (*dough_cmd) return cmd_dough(dough_opt, dough_flags);
        if (*sweep) return cmd_sweep(sweep_opt, sweep_seed);
        if (*sim) return cmd_similarity(sim_files[0], sim_files[1]);
        if (*fr) return cmd_fringes(fr_file, fr_opt, fr_out);
        if (*ce) return cmd_centrality(ce_file, ce_radii, ce_metric, ce_out);
        if (*render) return cmd_render(render_in, render_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
