#pragma once

// Whole-corpus analysis: per-session metrics, group comparisons,
// correlations, resolution differences, region clusters and symptom tallies,
// rendered as a canonical JSON report plus one CSV per table.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "espim/cluster.hpp"
#include "espim/error.hpp"
#include "espim/metrics.hpp"
#include "espim/session.hpp"

namespace espim::report {

struct AnalyzeOptions {
    MetricsParams metrics;
    std::uint64_t seed = cluster::kDefaultSeed;
    std::size_t clusters = 4;
    double gameplay_threshold = 2.5;
    bool skip_invalid = false;
};

/// One input document: a display name (file name) and its raw bytes.
struct SessionSource {
    std::string name;
    std::string bytes;
};

struct SkippedSession {
    std::string name;
    std::vector<Violation> violations;
};

struct SessionRecord {
    std::string name;
    std::string sha256;
    SessionLog log;
    std::vector<Fixation> fixations;
    SessionMetrics metrics;
};

/// Raised when an input fails and skipping is disabled.
class InvalidSessionError : public Error {
public:
    InvalidSessionError(std::string name, std::vector<Violation> violations);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::string name_;
    std::vector<Violation> violations_;
};

struct LoadResult {
    std::vector<SessionRecord> sessions;
    std::vector<SkippedSession> skipped;
};

/// Parses every source and computes its metrics (fixation detection runs in
/// parallel across sessions). Sessions keep their input order.
LoadResult load_sessions(std::span<const SessionSource> sources, const AnalyzeOptions& options);

struct ReportFile {
    std::string name;
    std::string content;
};

struct AnalysisReport {
    std::string json; // report.json
    std::vector<ReportFile> tables;
};

AnalysisReport build_report(const LoadResult& loaded, const AnalyzeOptions& options);

/// Region analysis over the given sessions (targets, fixation centroids,
/// selection points and stray clicks, each tagged with its session's screen).
cluster::RegionSummary cluster_sessions(
    std::span<const SessionRecord> sessions, std::size_t k, std::uint64_t seed);

/// Cluster summary table, one row per region, with a leading `group` column.
std::string clusters_csv(std::span<const std::pair<std::string, cluster::RegionSummary>> groups);
std::string quadrants_csv(std::span<const std::pair<std::string, cluster::RegionSummary>> groups);
std::string scatter_csv(std::span<const std::pair<std::string, cluster::RegionSummary>> groups);

/// Writes report.json and the tables into `dir` (created if needed), each
/// file atomically.
void write_report(const AnalysisReport& report, const std::filesystem::path& dir);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

} // namespace espim::report
