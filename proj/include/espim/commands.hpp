#pragma once

// Subcommand implementations behind the `espim` executable. Each returns a
// process exit status and writes only to the given streams, so they can be
// exercised in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "espim/collector.hpp"
#include "espim/report.hpp"

namespace espim::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1, // well-formed input that violates the schema or an invariant; bad arguments
    kExitIo = 2,      // unreadable, unwritable or syntactically broken files
};

/// Validates each file. Exit status is the worst over all files.
int cmd_validate(const std::vector<std::filesystem::path>& paths, std::ostream& out, std::ostream& err);

/// Directories expand to their *.json entries in name order.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& paths);

struct AnalyzeArgs {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out_dir = "espim-report";
    report::AnalyzeOptions options;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

/// One design for `estimate`. Target geometry is "circle:<diameter>" or
/// "rect:<w>x<h>"; width defaults to the target width.
struct DesignArgs {
    std::string screen;
    std::string target;
    double distance = 0.0;
    std::optional<double> width;
    double td_s = 0.0;
};

int cmd_estimate(const std::vector<DesignArgs>& designs, std::ostream& out, std::ostream& err);

struct ClusterArgs {
    std::vector<std::filesystem::path> inputs;
    std::optional<std::filesystem::path> out_dir;
    std::size_t k = 4;
    std::uint64_t seed = cluster::kDefaultSeed;
    FixationParams fixation;
    bool skip_invalid = false;
};

int cmd_cluster(const ClusterArgs& args, std::ostream& out, std::ostream& err);

/// Inputs are either one CSV with `resolution,espim` rows (kept in file
/// order) or session files, averaged per resolution and ordered by pixels.
struct ResolutionDiffArgs {
    std::vector<std::filesystem::path> inputs;
    std::optional<std::filesystem::path> out_file;
    FixationParams fixation;
    bool skip_invalid = false;
};

int cmd_resolution_diff(const ResolutionDiffArgs& args, std::ostream& out, std::ostream& err);

struct ServeArgs {
    std::string bind = "127.0.0.1:8080";
    collector::Config config;
};

/// Blocks until SIGINT or SIGTERM.
int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err);

/// `t_ms,x,y` gaze CSV in, fixation table out.
int cmd_fixations(const std::filesystem::path& gaze_csv, const FixationParams& params, std::ostream& out,
    std::ostream& err);

} // namespace espim::cli
