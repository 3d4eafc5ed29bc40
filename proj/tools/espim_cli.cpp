// espim: eye-strain analysis toolkit and session collector.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "espim/commands.hpp"
#include "espim/version.hpp"

namespace {

void add_fixation_flags(CLI::App& cmd, espim::FixationParams& p)
{
    cmd.add_option("--dispersion-px", p.dispersion_px, "I-DT dispersion threshold, px")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--min-fixation-ms", p.min_duration_ms, "minimum fixation duration, ms")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    using namespace espim;
    namespace fs = std::filesystem;

    CLI::App app{"Eye-strain estimation from on-screen target tasks", kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    int status = cli::kExitOk;

    // validate
    std::vector<fs::path> validate_paths;
    auto* validate = app.add_subcommand("validate", "check session logs against the schema");
    validate->add_option("files", validate_paths, "session JSON files")->required();
    validate->callback([&] { status = cli::cmd_validate(validate_paths, std::cout, std::cerr); });

    // analyze
    cli::AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "compute metrics and group statistics for a corpus");
    analyze->add_option("inputs", analyze_args.inputs, "session files or directories")->required();
    analyze->add_option("--out", analyze_args.out_dir, "report directory")->capture_default_str();
    add_fixation_flags(*analyze, analyze_args.options.metrics.fixation);
    analyze->add_option("--seed", analyze_args.options.seed, "k-means seed")->capture_default_str();
    analyze->add_option("--clusters", analyze_args.options.clusters, "number of screen regions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze->add_flag("--skip-invalid", analyze_args.options.skip_invalid, "skip invalid sessions instead of failing");
    analyze->callback([&] { status = cli::cmd_analyze(analyze_args, std::cout, std::cerr); });

    // estimate
    std::vector<std::string> screens;
    std::vector<std::string> targets;
    std::vector<double> distances;
    std::vector<double> widths;
    std::vector<double> durations;
    auto* estimate = app.add_subcommand("estimate",
        "score interval for a design without eye tracking; repeat options to compare designs");
    estimate->add_option("--screen", screens, "screen WxH in px")->required();
    estimate->add_option("--target", targets, "circle:D or rect:WxH in px")->required();
    estimate->add_option("-d,--distance", distances, "target distance, px")->required();
    estimate->add_option("-w,--width", widths, "target width, px (default: from --target)");
    estimate->add_option("--td", durations, "task duration, s")->required();
    estimate->callback([&] {
        const std::size_t n = std::max({screens.size(), targets.size(), distances.size(), widths.size(),
            durations.size()});
        const auto pick = [n](const auto& v, std::size_t i, const char* name) {
            if (v.size() != 1 && v.size() != n)
                throw CLI::ValidationError(name, "give it once or once per design");
            return v[v.size() == 1 ? 0 : i];
        };
        std::vector<cli::DesignArgs> designs;
        for (std::size_t i = 0; i < n; ++i) {
            cli::DesignArgs d;
            d.screen = pick(screens, i, "--screen");
            d.target = pick(targets, i, "--target");
            d.distance = pick(distances, i, "--distance");
            if (!widths.empty())
                d.width = pick(widths, i, "--width");
            d.td_s = pick(durations, i, "--td");
            designs.push_back(d);
        }
        status = cli::cmd_estimate(designs, std::cout, std::cerr);
    });

    // cluster
    cli::ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "k-means screen regions over targets, gaze and clicks");
    cluster->add_option("inputs", cluster_args.inputs, "session files or directories")->required();
    cluster->add_option("-k,--clusters", cluster_args.k, "number of regions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cluster->add_option("--seed", cluster_args.seed, "k-means seed")->capture_default_str();
    cluster->add_option("--out", cluster_args.out_dir, "also write clusters, quadrants and scatter CSVs here");
    add_fixation_flags(*cluster, cluster_args.fixation);
    cluster->add_flag("--skip-invalid", cluster_args.skip_invalid, "skip invalid sessions instead of failing");
    cluster->callback([&] { status = cli::cmd_cluster(cluster_args, std::cout, std::cerr); });

    // resolution-diff
    cli::ResolutionDiffArgs res_args;
    auto* resdiff = app.add_subcommand("resolution-diff", "score change between consecutive screen resolutions");
    resdiff->add_option("inputs", res_args.inputs, "resolution,espim CSV or session files/directories")->required();
    resdiff->add_option("--out", res_args.out_file, "also write the table to this file");
    add_fixation_flags(*resdiff, res_args.fixation);
    resdiff->add_flag("--skip-invalid", res_args.skip_invalid, "skip invalid sessions instead of failing");
    resdiff->callback([&] { status = cli::cmd_resolution_diff(res_args, std::cout, std::cerr); });

    // serve
    cli::ServeArgs serve_args;
    auto* serve = app.add_subcommand("serve", "accept session uploads over HTTP");
    serve->add_option("--bind", serve_args.bind, "host:port")->capture_default_str();
    serve->add_option("--out", serve_args.config.out_dir, "directory for received sessions")->required();
    serve->add_option("--token", serve_args.config.token, "bearer token required from clients")
        ->envname(collector::kTokenEnv);
    serve->add_option("--max-body-bytes", serve_args.config.max_body_bytes, "largest accepted upload")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    serve->callback([&] { status = cli::cmd_serve(serve_args, std::cout, std::cerr); });

    // fixations
    fs::path gaze_csv;
    FixationParams fixation_params;
    auto* fixations = app.add_subcommand("fixations", "detect fixations in a t_ms,x,y gaze CSV");
    fixations->add_option("gaze", gaze_csv, "gaze CSV file")->required();
    add_fixation_flags(*fixations, fixation_params);
    fixations->callback([&] { status = cli::cmd_fixations(gaze_csv, fixation_params, std::cout, std::cerr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }
    return status;
}
