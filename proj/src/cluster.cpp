#include "espim/cluster.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <random>

#include "espim/error.hpp"

namespace espim::cluster {

namespace {

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t distinct_count(std::span<const Point> points)
{
    std::vector<Point> copy(points.begin(), points.end());
    const auto less = [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
    std::sort(copy.begin(), copy.end(), less);
    return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
}

void check_feasible(std::span<const Point> points, std::size_t k)
{
    if (k == 0)
        throw DomainError("k", "must be >= 1");
    if (points.empty())
        throw EmptyInputError("kmeans: no points");
    const std::size_t distinct = distinct_count(points);
    if (k > distinct)
        throw InfeasibleError("kmeans: k = " + std::to_string(k) + " exceeds the " + std::to_string(distinct)
            + " distinct points");
}

std::vector<Point> seed_centroids(std::span<const Point> points, std::size_t k, std::mt19937_64& rng)
{
    const std::size_t n = points.size();
    std::vector<Point> centroids;
    centroids.reserve(k);
    centroids.push_back(points[std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)))]);

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i)
        d2[i] = squared_distance(points[i], centroids.front());
    while (centroids.size() < k) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = uniform01(rng) * total;
            double cumulative = 0.0;
            pick = n;
            for (std::size_t i = 0; i < n; ++i) {
                cumulative += d2[i];
                if (cumulative > target && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) // rounding at the tail
                pick = static_cast<std::size_t>(std::max_element(d2.begin(), d2.end()) - d2.begin());
        } else {
            pick = static_cast<std::size_t>(std::max_element(d2.begin(), d2.end()) - d2.begin());
        }
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
    }
    return centroids;
}

// Returns true if any assignment changed.
bool assign(std::span<const Point> points, std::span<const Point> centroids, std::vector<std::size_t>& assignments)
{
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t c = nearest(centroids, points[i]);
        if (c != assignments[i]) {
            assignments[i] = c;
            changed = true;
        }
    }
    return changed;
}

void update(std::span<const Point> points, std::vector<Point>& centroids, const std::vector<std::size_t>& assignments)
{
    const std::size_t k = centroids.size();
    std::vector<double> sx(k, 0.0);
    std::vector<double> sy(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        sx[assignments[i]] += points[i].x;
        sy[assignments[i]] += points[i].y;
        ++count[assignments[i]];
    }
    std::vector<bool> taken(points.size(), false);
    for (std::size_t c = 0; c < k; ++c) {
        if (count[c] > 0)
            centroids[c] = {sx[c] / static_cast<double>(count[c]), sy[c] / static_cast<double>(count[c])};
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (count[c] > 0)
            continue;
        // Reseed at the point farthest from its current centroid.
        std::size_t far = points.size();
        double best = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (taken[i])
                continue;
            const double d = squared_distance(points[i], centroids[assignments[i]]);
            if (d > best) {
                best = d;
                far = i;
            }
        }
        if (far < points.size()) {
            centroids[c] = points[far];
            taken[far] = true;
        }
    }
}

Clustering best_of(std::vector<Clustering>& runs)
{
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].inertia < runs[best].inertia)
            best = r;
    }
    return std::move(runs[best]);
}

std::optional<double> mean_or_none(double sum, std::size_t n)
{
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

Quadrant quadrant_of(const Observation& o)
{
    const bool left = o.position.x < o.screen_width / 2.0;
    const bool upper = o.position.y < o.screen_height / 2.0;
    if (upper)
        return left ? Quadrant::UpperLeft : Quadrant::UpperRight;
    return left ? Quadrant::LowerLeft : Quadrant::LowerRight;
}

} // namespace

std::size_t nearest(std::span<const Point> centroids, Point p) noexcept
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(p, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double inertia_of(std::span<const Point> points, std::span<const Point> centroids,
    std::span<const std::size_t> assignments)
{
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        total += squared_distance(points[i], centroids[assignments[i]]);
    return total;
}

namespace {

Clustering run_restart(std::span<const Point> points, std::size_t k, std::uint64_t seed, std::size_t restart,
    std::size_t max_iterations, std::vector<double>* inertia_trace)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);

    Clustering c;
    c.restart = restart;
    c.centroids = seed_centroids(points, k, rng);
    c.assignments.assign(points.size(), 0);
    assign(points, c.centroids, c.assignments);

    [[maybe_unused]] double previous = inertia_of(points, c.centroids, c.assignments);
    if (inertia_trace != nullptr)
        inertia_trace->push_back(previous);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        update(points, c.centroids, c.assignments);
        const bool changed = assign(points, c.centroids, c.assignments);
        ++c.iterations;
        const double current = inertia_of(points, c.centroids, c.assignments);
        assert(current <= previous * (1.0 + 1e-12) + 1e-9);
        if (inertia_trace != nullptr)
            inertia_trace->push_back(current);
        previous = current;
        if (!changed)
            break;
    }
    c.inertia = inertia_of(points, c.centroids, c.assignments);
    return c;
}

} // namespace

Clustering lloyd_run(std::span<const Point> points, std::size_t k, std::uint64_t seed, std::size_t restart,
    std::size_t max_iterations, std::vector<double>* inertia_trace)
{
    check_feasible(points, k);
    return run_restart(points, k, seed, restart, max_iterations, inertia_trace);
}

Clustering kmeans(std::span<const Point> points, std::size_t k, std::uint64_t seed, const KMeansOptions& options)
{
    check_feasible(points, k);
    const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
    std::vector<Clustering> runs(restarts);
    const auto n = static_cast<std::ptrdiff_t>(restarts);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        const auto idx = static_cast<std::size_t>(r);
        runs[idx] = run_restart(points, k, seed, idx, options.max_iterations, nullptr);
    }
    return best_of(runs);
}

Clustering kmeans_serial(std::span<const Point> points, std::size_t k, std::uint64_t seed, const KMeansOptions& options)
{
    check_feasible(points, k);
    const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
    std::vector<Clustering> runs;
    runs.reserve(restarts);
    for (std::size_t r = 0; r < restarts; ++r)
        runs.push_back(run_restart(points, k, seed, r, options.max_iterations, nullptr));
    return best_of(runs);
}

DriftResult euclidean_drift(std::span<const Point> points, std::span<const Point> centers)
{
    if (points.size() != centers.size())
        throw LengthMismatchError("euclidean_drift: points and centers differ in length");
    if (points.empty())
        throw EmptyInputError("euclidean_drift: no pairs");
    DriftResult r;
    r.distances.reserve(points.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        r.distances.push_back(distance(points[i], centers[i]));
        sum += r.distances.back();
    }
    r.mean = sum / static_cast<double>(points.size());
    return r;
}

const char* to_string(Quadrant q) noexcept
{
    switch (q) {
    case Quadrant::UpperLeft: return "upper_left";
    case Quadrant::UpperRight: return "upper_right";
    case Quadrant::LowerLeft: return "lower_left";
    case Quadrant::LowerRight: return "lower_right";
    }
    return "?";
}

const char* to_string(PointKind k) noexcept
{
    switch (k) {
    case PointKind::Target: return "target";
    case PointKind::Fixation: return "fixation";
    case PointKind::Click: return "click";
    case PointKind::Error: return "error";
    }
    return "?";
}

RegionSummary region_analysis(const RegionInput& input, std::size_t k, std::uint64_t seed)
{
    if (input.targets.empty())
        throw EmptyInputError("region_analysis: no targets");

    std::vector<Point> target_points;
    target_points.reserve(input.targets.size());
    for (const auto& t : input.targets)
        target_points.push_back(t.position);
    const Clustering clustering = kmeans(target_points, k, seed);

    // Stable labels: sort clusters by centroid y, then x.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Point pa = clustering.centroids[a];
        const Point pb = clustering.centroids[b];
        return pa.y < pb.y || (pa.y == pb.y && (pa.x < pb.x || (pa.x == pb.x && a < b)));
    });
    std::vector<std::size_t> rank(k);
    std::vector<Point> centroids(k);
    for (std::size_t r = 0; r < k; ++r) {
        rank[order[r]] = r;
        centroids[r] = clustering.centroids[order[r]];
    }

    RegionSummary summary;
    summary.inertia = clustering.inertia;
    summary.regions.resize(k);
    for (std::size_t r = 0; r < k; ++r) {
        summary.regions[r].label = "C" + std::to_string(r + 1);
        summary.regions[r].centroid = centroids[r];
    }
    for (std::size_t q = 0; q < 4; ++q)
        summary.quadrants[q].quadrant = static_cast<Quadrant>(q);

    for (std::size_t i = 0; i < input.targets.size(); ++i) {
        const std::size_t r = rank[clustering.assignments[i]];
        ++summary.regions[r].targets;
        summary.scatter.push_back({input.targets[i].position, PointKind::Target, r});
    }

    std::vector<double> fix_sum(k, 0.0);
    std::vector<double> click_sum(k, 0.0);
    std::array<double, 4> q_fix_sum{};
    std::array<double, 4> q_click_sum{};

    const auto visit = [&](const std::vector<Observation>& obs, PointKind kind) {
        for (const auto& o : obs) {
            const std::size_t r = nearest(centroids, o.position);
            const double d = distance(o.position, centroids[r]);
            Region& region = summary.regions[r];
            const bool has_screen = o.screen_width > 0.0 && o.screen_height > 0.0;
            QuadrantRegion* quad = has_screen ? &summary.quadrants[static_cast<std::size_t>(quadrant_of(o))] : nullptr;
            switch (kind) {
            case PointKind::Fixation:
                ++region.fixations;
                fix_sum[r] += d;
                if (quad) {
                    ++quad->fixations;
                    q_fix_sum[static_cast<std::size_t>(quad->quadrant)] += d;
                }
                break;
            case PointKind::Click:
                ++region.clicks;
                click_sum[r] += d;
                if (quad) {
                    ++quad->clicks;
                    q_click_sum[static_cast<std::size_t>(quad->quadrant)] += d;
                }
                break;
            case PointKind::Error:
                ++region.errors;
                if (quad)
                    ++quad->errors;
                break;
            case PointKind::Target:
                break;
            }
            summary.scatter.push_back({o.position, kind, r});
        }
    };
    visit(input.fixations, PointKind::Fixation);
    visit(input.clicks, PointKind::Click);
    visit(input.errors, PointKind::Error);

    for (std::size_t r = 0; r < k; ++r) {
        summary.regions[r].mean_fixation_distance = mean_or_none(fix_sum[r], summary.regions[r].fixations);
        summary.regions[r].mean_click_distance = mean_or_none(click_sum[r], summary.regions[r].clicks);
    }
    for (std::size_t q = 0; q < 4; ++q) {
        summary.quadrants[q].mean_fixation_distance = mean_or_none(q_fix_sum[q], summary.quadrants[q].fixations);
        summary.quadrants[q].mean_click_distance = mean_or_none(q_click_sum[q], summary.quadrants[q].clicks);
    }
    return summary;
}

} // namespace espim::cluster
