#include <random>

#include <gtest/gtest.h>

#include "espim/cluster.hpp"
#include "espim/error.hpp"

#include "support.hpp"

using namespace espim;
using namespace espim::cluster;

namespace {

std::vector<Point> blobs(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 50.0);
    const Point centers[] = {{200, 200}, {1700, 250}, {300, 900}, {1600, 850}, {960, 540}};
    std::vector<Point> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back({centers[i % 5].x + z(rng), centers[i % 5].y + z(rng)});
    return v;
}

// Four target groups: two upper (y = 200) and two lower (y = 800).
RegionInput drift_layout(double upper_px, double lower_px)
{
    RegionInput in;
    const Point centers[] = {{300, 200}, {1600, 200}, {300, 800}, {1600, 800}};
    const Point dirs[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0.6, 0.8}, {-0.6, -0.8}};
    for (const auto& c : centers) {
        for (const auto& d : dirs)
            in.targets.push_back({{c.x + 30 * d.x, c.y + 30 * d.y}, 1920, 1080});
        const double r = c.y < 500 ? upper_px : lower_px;
        for (const auto& d : dirs)
            in.fixations.push_back({{c.x + r * d.x, c.y + r * d.y}, 1920, 1080});
    }
    return in;
}

} // namespace

TEST(KMeans, DistinctPointsBecomeCentroids)
{
    const std::vector<Point> pts{{0, 0}, {10, 0}, {0, 10}, {10, 10}};
    const auto c = kmeans(pts, 4);
    EXPECT_EQ(c.inertia, 0.0);
    for (const auto& p : pts)
        EXPECT_EQ(c.centroids[c.assignments[&p - pts.data()]], p);
}

TEST(KMeans, IdenticalPointsSingleCluster)
{
    const std::vector<Point> pts(7, Point{3, 4});
    const auto c = kmeans(pts, 1);
    EXPECT_EQ(c.centroids[0], (Point{3, 4}));
    EXPECT_EQ(c.inertia, 0.0);
    EXPECT_THROW(kmeans(pts, 2), InfeasibleError);
}

TEST(KMeans, InvalidArguments)
{
    EXPECT_THROW(kmeans({}, 1), Error);
    const std::vector<Point> pts{{0, 0}, {1, 1}};
    EXPECT_THROW(kmeans(pts, 0), Error);
    EXPECT_THROW(kmeans(pts, 3), InfeasibleError);
}

TEST(KMeans, MatchesExhaustiveOptimum)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto pts = fixtures::four_pairs(seed);
        const auto best = fixtures::brute_force_partition(pts, 4);
        const auto c = kmeans(pts, 4, seed);
        EXPECT_NEAR(c.inertia, best.inertia, 1e-9) << seed;
        EXPECT_EQ(fixtures::canonical_labels(c.assignments), best.labels) << seed;
    }
}

TEST(KMeans, ParallelMatchesSerialAndIsDeterministic)
{
    const auto pts = blobs(4, 2000);
    for (std::size_t k : {1u, 3u, 5u, 8u}) {
        const auto a = kmeans(pts, k, 99);
        const auto b = kmeans(pts, k, 99);
        const auto s = kmeans_serial(pts, k, 99);
        EXPECT_EQ(a.assignments, b.assignments);
        EXPECT_EQ(a.centroids, s.centroids);
        EXPECT_EQ(a.assignments, s.assignments);
        EXPECT_EQ(a.inertia, s.inertia);
        EXPECT_EQ(a.restart, s.restart);
    }
}

TEST(KMeans, InertiaNeverIncreases)
{
    const auto pts = blobs(8, 500);
    for (std::size_t restart = 0; restart < 10; ++restart) {
        std::vector<double> trace;
        const auto c = lloyd_run(pts, 6, 5, restart, 300, &trace);
        ASSERT_FALSE(trace.empty());
        for (std::size_t i = 1; i < trace.size(); ++i)
            EXPECT_LE(trace[i], trace[i - 1] * (1 + 1e-12)) << "restart " << restart << " step " << i;
        EXPECT_NEAR(c.inertia, inertia_of(pts, c.centroids, c.assignments), 1e-6 * c.inertia);
    }
}

TEST(KMeans, BestRestartIsMinimal)
{
    const auto pts = blobs(12, 300);
    KMeansOptions opt;
    const auto best = kmeans(pts, 5, 7, opt);
    for (std::size_t r = 0; r < opt.restarts; ++r)
        EXPECT_LE(best.inertia, lloyd_run(pts, 5, 7, r, opt.max_iterations).inertia);
}

TEST(Nearest, TiesGoToLowestIndex)
{
    const std::vector<Point> c{{0, 0}, {2, 0}};
    EXPECT_EQ(nearest(c, {1, 0}), 0u);
    EXPECT_EQ(nearest(c, {1.5, 0}), 1u);
}

TEST(Drift, EuclideanDistances)
{
    const std::vector<Point> p{{3, 4}, {10, 10}};
    const std::vector<Point> c{{0, 0}, {10, 10}};
    const auto d = euclidean_drift(p, c);
    EXPECT_EQ(d.distances, (std::vector<double>{5, 0}));
    EXPECT_DOUBLE_EQ(d.mean, 2.5);
    EXPECT_THROW(euclidean_drift(p, std::vector<Point>{{0, 0}}), LengthMismatchError);
    EXPECT_THROW(euclidean_drift({}, {}), EmptyInputError);
}

TEST(Regions, PlantedDrifts)
{
    const auto s = region_analysis(drift_layout(10, 40));
    ASSERT_EQ(s.regions.size(), 4u);
    // Labels run top to bottom, then left to right.
    const Point expected[] = {{300, 200}, {1600, 200}, {300, 800}, {1600, 800}};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& r = s.regions[i];
        EXPECT_EQ(r.label, "C" + std::to_string(i + 1));
        EXPECT_NEAR(r.centroid.x, expected[i].x, 1e-9);
        EXPECT_NEAR(r.centroid.y, expected[i].y, 1e-9);
        EXPECT_EQ(r.targets, 6u);
        EXPECT_EQ(r.fixations, 6u);
        ASSERT_TRUE(r.mean_fixation_distance);
        EXPECT_NEAR(*r.mean_fixation_distance, i < 2 ? 10.0 : 40.0, 1e-6);
        EXPECT_FALSE(r.mean_click_distance);
    }
}

TEST(Regions, FixationsAtCentroidsHaveZeroDistance)
{
    auto in = drift_layout(0, 0);
    const auto first = region_analysis(in);
    in.fixations.clear();
    for (const auto& r : first.regions)
        in.fixations.push_back({r.centroid, 1920, 1080});
    const auto s = region_analysis(in);
    for (const auto& r : s.regions) {
        ASSERT_TRUE(r.mean_fixation_distance);
        EXPECT_DOUBLE_EQ(*r.mean_fixation_distance, 0.0);
    }
}

TEST(Regions, SingleErrorLandsInOneRegion)
{
    auto in = drift_layout(10, 10);
    in.errors.push_back({{1590, 790}, 1920, 1080});
    const auto s = region_analysis(in);
    std::size_t total = 0;
    for (const auto& r : s.regions)
        total += r.errors;
    EXPECT_EQ(total, 1u);
    EXPECT_EQ(s.regions[3].errors, 1u);
    EXPECT_EQ(s.quadrants[static_cast<std::size_t>(Quadrant::LowerRight)].errors, 1u);
}

TEST(Regions, RequiresTargets)
{
    EXPECT_THROW(region_analysis({}), EmptyInputError);
}
