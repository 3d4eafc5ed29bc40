#pragma once

// Shared fixtures and brute-force references for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "espim/geometry.hpp"
#include "espim/session.hpp"

namespace espim::fixtures {

inline std::filesystem::path data_dir()
{
    return ESPIM_TEST_DATA_DIR;
}

inline std::filesystem::path fresh_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("espim-test-" + name + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Minimal valid session document: three circle targets on a 1920x1080
// screen, steady gaze on each target, one mouse trail.
inline nlohmann::json minimal_session(const std::string& id = "s-001")
{
    using nlohmann::json;
    json trials = json::array();
    const double cx[] = {300, 1500, 900};
    const double cy[] = {200, 300, 800};
    json gaze = json::array();
    json mouse = json::array();
    for (int i = 0; i < 3; ++i) {
        const double appear = 1000.0 * i + 100.0;
        trials.push_back(json{{"target", json{{"cx", cx[i]}, {"cy", cy[i]}, {"width", 80}, {"shape", "circle"}}},
            {"appear_ms", appear}, {"select_ms", appear + 800.0}, {"select_x", cx[i] + 5}, {"select_y", cy[i]},
            {"error_clicks", 0}});
        for (int k = 0; k < 60; ++k) {
            const double t = appear + 100.0 + k * 10.0;
            gaze.push_back(json{{"t_ms", t}, {"x", cx[i] + (k % 3)}, {"y", cy[i] - (k % 2)}});
        }
        mouse.push_back(json{{"t_ms", appear}, {"x", cx[i] / 2}, {"y", cy[i] / 2}});
        mouse.push_back(json{{"t_ms", appear + 300}, {"x", cx[i]}, {"y", cy[i]}});
    }
    return json{{"version", 1}, {"session_id", id}, {"participant", json{{"id", "p1"}, {"gameplay_rating", 3}}},
        {"screen", json{{"width", 1920}, {"height", 1080}}}, {"started_at", "2021-03-01T10:15:00+01:00"},
        {"duration_ms", 3500}, {"pre", json{{"display_hours", 6}}}, {"trials", trials}, {"gaze", gaze},
        {"mouse", mouse}, {"post", json{{"strain_rating", 3}, {"symptoms", json::array({"dry eyes"})}}}};
}

struct PlantedFixation {
    Point center;
    std::size_t samples = 0;
    double onset_ms = 0.0;
    double duration_ms = 0.0;
};

struct PlantedTrace {
    std::vector<GazeSample> samples;
    std::vector<PlantedFixation> fixations;
};

// 90 Hz trace of dwells (20..54 samples, jitter within +-5 px) separated by
// saccades whose samples are more than 60 px from each other and from the
// neighbouring dwells, so an I-DT pass at 60 px / 200 ms recovers every
// dwell exactly.
inline PlantedTrace planted_trace(std::uint64_t seed, std::size_t count)
{
    constexpr double kPeriod = 1000.0 / 90.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-5.0, 5.0);
    std::uniform_int_distribution<std::size_t> length(20, 54);
    std::uniform_int_distribution<int> saccade_len(2, 5);
    PlantedTrace out;
    std::size_t i = 0;
    double x = 200.0;
    const auto emit = [&](double px, double py) { out.samples.push_back({static_cast<double>(i++) * kPeriod, px, py}); };
    for (std::size_t f = 0; f < count; ++f) {
        // Saccade: each step moves 100 px to the right.
        const int steps = saccade_len(rng);
        for (int s = 0; s < steps; ++s) {
            x += 100.0;
            emit(x, 500.0 + 30.0 * s);
        }
        x += 100.0;
        const Point c{x, 500.0 + 40.0 * static_cast<double>(f % 5)};
        const std::size_t n = length(rng);
        PlantedFixation p;
        p.onset_ms = static_cast<double>(i) * kPeriod;
        p.samples = n;
        double sx = 0.0;
        double sy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double px = c.x + jitter(rng);
            const double py = c.y + jitter(rng);
            sx += px;
            sy += py;
            emit(px, py);
        }
        p.center = {sx / static_cast<double>(n), sy / static_cast<double>(n)};
        p.duration_ms = out.samples.back().t_ms - p.onset_ms;
        out.fixations.push_back(p);
    }
    x += 100.0;
    emit(x, 500.0);
    return out;
}

// Exhaustive optimum of the k-means objective: every partition of the points
// into exactly k non-empty groups, enumerated as restricted growth strings.
struct BruteForcePartition {
    double inertia = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> labels; // canonical: first point in group 0, ...
};

inline BruteForcePartition brute_force_partition(const std::vector<Point>& pts, std::size_t k)
{
    BruteForcePartition best;
    std::vector<std::size_t> a(pts.size(), 0);
    const auto score = [&] {
        double total = 0.0;
        for (std::size_t g = 0; g < k; ++g) {
            double sx = 0.0, sy = 0.0;
            std::size_t n = 0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (a[i] == g) {
                    sx += pts[i].x;
                    sy += pts[i].y;
                    ++n;
                }
            }
            const Point m{sx / n, sy / n};
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (a[i] == g)
                    total += squared_distance(pts[i], m);
            }
        }
        return total;
    };
    const auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
        if (i == pts.size()) {
            if (used == k) {
                const double s = score();
                if (s < best.inertia) {
                    best.inertia = s;
                    best.labels = a;
                }
            }
            return;
        }
        if (used + (pts.size() - i) < k)
            return;
        for (std::size_t g = 0; g < std::min(used + 1, k); ++g) {
            a[i] = g;
            self(self, i + 1, std::max(used, g + 1));
        }
    };
    rec(rec, 0, 0);
    return best;
}

// Relabels assignments so the first point is in group 0, the next new group
// is 1, and so on; equal partitions compare equal.
inline std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels)
{
    std::vector<std::size_t> map(labels.size() + 1, static_cast<std::size_t>(-1));
    std::vector<std::size_t> out(labels.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (map[labels[i]] == static_cast<std::size_t>(-1))
            map[labels[i]] = next++;
        out[i] = map[labels[i]];
    }
    return out;
}

// Eight points in four tight pairs, randomly placed.
inline std::vector<Point> four_pairs(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 1000.0);
    std::uniform_real_distribution<double> off(-3.0, 3.0);
    std::vector<Point> centers;
    while (centers.size() < 4) {
        const Point c{pos(rng), pos(rng)};
        bool far = true;
        for (const auto& o : centers)
            far = far && distance(c, o) > 100.0;
        if (far)
            centers.push_back(c);
    }
    std::vector<Point> pts;
    for (const auto& c : centers) {
        pts.push_back({c.x + off(rng), c.y + off(rng)});
        pts.push_back({c.x + off(rng), c.y + off(rng)});
    }
    std::shuffle(pts.begin(), pts.end(), rng);
    return pts;
}

} // namespace espim::fixtures
