#ifndef DOUGHSLIT_CLI_COMMANDS_HPP
#define DOUGHSLIT_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doughslit/analysis/peaks.hpp"
#include "doughslit/parallel.hpp"

/**
 * Subcommand bodies of the doughslit tool. Each returns the process exit code
 * and throws doughslit::Error (or a std::exception) on failure; argument
 * parsing stays in the tool itself.
 */
namespace doughslit::cli {

/// Options shared by evolve, dough and sweep.
struct CommonOptions {
    std::string config;
    std::string out = "out";
    std::vector<std::string> sets;  ///< key=value overrides
    bool dry_run = false;
    std::size_t jobs = default_jobs();
};

/// Dedicated dough flags; each overrides the corresponding config key when given.
struct DoughFlags {
    std::optional<std::string> mode;
    std::optional<std::uint64_t> trials, seed;
    std::optional<int> t_interact, force_levels, weight_levels, total_steps;
    std::optional<double> bin;
    std::optional<std::size_t> smooth_window;
};

int cmd_evolve(const CommonOptions& o);
int cmd_dough(const CommonOptions& o, const DoughFlags& flags);
int cmd_sweep(const CommonOptions& o, const std::optional<std::uint64_t>& seed);
int cmd_similarity(const std::string& a, const std::string& b);
int cmd_fringes(const std::string& path, const analysis::FringeOptions& fo, const std::string& out);
int cmd_centrality(const std::string& path, const std::string& radii_text, const std::string& metric_name,
                   const std::string& out);
int cmd_render(const std::string& in, const std::string& out);

}  // namespace doughslit::cli

#endif  // DOUGHSLIT_CLI_COMMANDS_HPP
