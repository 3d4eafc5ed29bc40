// Serial reference vs OpenMP kernel timings.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "espim/cluster.hpp"
#include "espim/fixation.hpp"
#include "espim/model.hpp"

namespace {

std::vector<espim::EspimInputs> make_espim_inputs(std::size_t n)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<espim::EspimInputs> v(n);
    for (auto& in : v) {
        in.screen_area = 1920.0 * 1080.0;
        in.target_area = 500.0 + 9000.0 * u(rng);
        in.distance = 10.0 + 1500.0 * u(rng);
        in.width = 20.0 + 100.0 * u(rng);
        in.fixations = 1.0 + 300.0 * u(rng);
        in.duration = espim::Seconds(1.0 + 120.0 * u(rng));
    }
    return v;
}

// A 90 Hz trace alternating 300 ms dwells and saccade jumps.
std::vector<espim::GazeSample> make_trace(std::uint64_t seed, std::size_t samples)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 3.0);
    std::uniform_real_distribution<double> pos(100.0, 1800.0);
    std::vector<espim::GazeSample> v;
    v.reserve(samples);
    double cx = pos(rng);
    double cy = pos(rng) / 2.0;
    for (std::size_t i = 0; i < samples; ++i) {
        if (i % 27 == 0) {
            cx = pos(rng);
            cy = pos(rng) / 2.0;
        }
        v.push_back({static_cast<double>(i) * 1000.0 / 90.0, cx + jitter(rng), cy + jitter(rng)});
    }
    return v;
}

std::vector<espim::Point> make_points(std::size_t n)
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> jitter(0.0, 40.0);
    const espim::Point centers[] = {{300, 200}, {1500, 250}, {400, 850}, {1600, 900}, {960, 540}};
    std::vector<espim::Point> v;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = centers[i % 5];
        v.push_back({c.x + jitter(rng), c.y + jitter(rng)});
    }
    return v;
}

void BM_EspimBatch(benchmark::State& state, bool parallel)
{
    const auto inputs = make_espim_inputs(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(inputs.size());
    for (auto _ : state) {
        if (parallel)
            espim::espim_batch(inputs, out);
        else
            espim::espim_batch_serial(inputs, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FixationBatch(benchmark::State& state, bool parallel)
{
    std::vector<std::vector<espim::GazeSample>> streams;
    for (int i = 0; i < state.range(0); ++i)
        streams.push_back(make_trace(static_cast<std::uint64_t>(i), 90 * 120));
    for (auto _ : state) {
        auto r = parallel ? espim::detect_fixations_batch(streams) : espim::detect_fixations_batch_serial(streams);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KMeans(benchmark::State& state, bool parallel)
{
    const auto points = make_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto c = parallel ? espim::cluster::kmeans(points, 4) : espim::cluster::kmeans_serial(points, 4);
        benchmark::DoNotOptimize(c.inertia);
    }
}

} // namespace

BENCHMARK_CAPTURE(BM_EspimBatch, serial, false)->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_EspimBatch, parallel, true)->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_FixationBatch, serial, false)->Arg(32);
BENCHMARK_CAPTURE(BM_FixationBatch, parallel, true)->Arg(32);
BENCHMARK_CAPTURE(BM_KMeans, serial, false)->Arg(5000);
BENCHMARK_CAPTURE(BM_KMeans, parallel, true)->Arg(5000);

BENCHMARK_MAIN();
