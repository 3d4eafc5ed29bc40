#pragma once

// K-means over screen positions and region-level summaries of fixation,
// click and error locations around the clustered target centers.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "espim/geometry.hpp"

namespace espim::cluster {

inline constexpr std::uint64_t kDefaultSeed = 20210901;

struct Clustering {
    std::vector<Point> centroids;
    std::vector<std::size_t> assignments; // point index -> cluster index
    double inertia = 0.0;                 // px^2
    std::size_t iterations = 0;
    std::size_t restart = 0; // index of the winning restart
};

struct KMeansOptions {
    std::size_t restarts = 10;
    std::size_t max_iterations = 300;
};

/// Index of the nearest centroid; ties go to the lowest index.
std::size_t nearest(std::span<const Point> centroids, Point p) noexcept;

/// Sum of squared distances from each point to its assigned centroid.
double inertia_of(std::span<const Point> points, std::span<const Point> centroids,
    std::span<const std::size_t> assignments);

/// One Lloyd run from seeded D^2 (k-means++) initialisation. Empty clusters
/// are reseeded at the point farthest from its current centroid. Stops at an
/// assignment fixpoint or after `max_iterations`. If `inertia_trace` is given,
/// the inertia after every assignment step is appended to it.
Clustering lloyd_run(std::span<const Point> points, std::size_t k, std::uint64_t seed, std::size_t restart,
    std::size_t max_iterations, std::vector<double>* inertia_trace = nullptr);

/// Best of `options.restarts` Lloyd runs by inertia (ties: lowest restart
/// index). Restarts run concurrently under OpenMP; each is seeded by
/// (seed, restart index), so the result does not depend on scheduling.
/// Throws InfeasibleError if k exceeds the number of distinct points.
Clustering kmeans(std::span<const Point> points, std::size_t k, std::uint64_t seed = kDefaultSeed,
    const KMeansOptions& options = {});

/// Serial reference for kmeans; returns an identical Clustering.
Clustering kmeans_serial(std::span<const Point> points, std::size_t k, std::uint64_t seed = kDefaultSeed,
    const KMeansOptions& options = {});

struct DriftResult {
    std::vector<double> distances;
    double mean = 0.0;
};

/// Straight-line distance of each point to its paired center.
DriftResult euclidean_drift(std::span<const Point> points, std::span<const Point> centers);

/// A location together with the size of the display it was recorded on.
/// A zero-sized screen excludes the observation from the quadrant view.
struct Observation {
    Point position;
    double screen_width = 0.0;
    double screen_height = 0.0;
};

struct RegionInput {
    std::vector<Observation> targets;
    std::vector<Observation> fixations;
    std::vector<Observation> clicks;
    std::vector<Observation> errors;
};

struct Region {
    std::string label; // C1..Ck, ordered by centroid y then x
    Point centroid;
    std::size_t targets = 0;
    std::size_t fixations = 0;
    std::optional<double> mean_fixation_distance;
    std::size_t clicks = 0;
    std::optional<double> mean_click_distance;
    std::size_t errors = 0;
};

enum class Quadrant { UpperLeft, UpperRight, LowerLeft, LowerRight };

const char* to_string(Quadrant q) noexcept;

/// Screen-half view of the same observations: distances are to the nearest
/// target centroid, membership by the quadrant of the observation's screen.
struct QuadrantRegion {
    Quadrant quadrant = Quadrant::UpperLeft;
    std::size_t fixations = 0;
    std::optional<double> mean_fixation_distance;
    std::size_t clicks = 0;
    std::optional<double> mean_click_distance;
    std::size_t errors = 0;
};

enum class PointKind { Target, Fixation, Click, Error };

const char* to_string(PointKind k) noexcept;

struct ScatterPoint {
    Point position;
    PointKind kind = PointKind::Target;
    std::size_t region = 0; // index into RegionSummary::regions
};

struct RegionSummary {
    std::vector<Region> regions;
    std::array<QuadrantRegion, 4> quadrants{};
    std::vector<ScatterPoint> scatter;
    double inertia = 0.0;
};

/// Clusters target centers and attributes every fixation, click and error
/// to the nearest target-centroid cluster. Throws EmptyInputError without
/// targets; kmeans errors propagate.
RegionSummary region_analysis(const RegionInput& input, std::size_t k = 4, std::uint64_t seed = kDefaultSeed);

} // namespace espim::cluster
