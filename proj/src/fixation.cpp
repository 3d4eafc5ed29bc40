#include "espim/fixation.hpp"

#include <algorithm>
#include <cstddef>

#include "espim/error.hpp"

namespace espim {

namespace {

struct Box {
    double min_x, max_x, min_y, max_y;

    explicit Box(const GazeSample& s) : min_x(s.x), max_x(s.x), min_y(s.y), max_y(s.y) {}

    void add(const GazeSample& s)
    {
        min_x = std::min(min_x, s.x);
        max_x = std::max(max_x, s.x);
        min_y = std::min(min_y, s.y);
        max_y = std::max(max_y, s.y);
    }

    double dispersion() const { return (max_x - min_x) + (max_y - min_y); }
};

Fixation make_fixation(std::span<const GazeSample> window)
{
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& s : window) {
        sx += s.x;
        sy += s.y;
    }
    const auto n = static_cast<double>(window.size());
    return Fixation{window.front().t_ms, window.back().t_ms - window.front().t_ms, {sx / n, sy / n}, window.size()};
}

void check_params(const FixationParams& p)
{
    if (!(p.dispersion_px > 0.0))
        throw DomainError("dispersion_px", "must be > 0");
    if (!(p.min_duration_ms > 0.0))
        throw DomainError("min_duration_ms", "must be > 0");
}

} // namespace

std::vector<Fixation> detect_fixations(std::span<const GazeSample> samples, const FixationParams& params)
{
    check_params(params);
    std::vector<Fixation> out;
    const std::size_t n = samples.size();
    std::size_t begin = 0;
    while (begin < n) {
        // Smallest window covering the minimum duration.
        std::size_t end = begin;
        while (end < n && samples[end].t_ms - samples[begin].t_ms < params.min_duration_ms)
            ++end;
        if (end == n)
            break;

        Box box(samples[begin]);
        for (std::size_t i = begin + 1; i <= end; ++i)
            box.add(samples[i]);
        if (box.dispersion() > params.dispersion_px) {
            ++begin;
            continue;
        }
        while (end + 1 < n) {
            Box grown = box;
            grown.add(samples[end + 1]);
            if (grown.dispersion() > params.dispersion_px)
                break;
            box = grown;
            ++end;
        }
        out.push_back(make_fixation(samples.subspan(begin, end - begin + 1)));
        begin = end + 1;
    }
    return out;
}

std::vector<std::vector<Fixation>> detect_fixations_batch(
    std::span<const std::vector<GazeSample>> streams, const FixationParams& params)
{
    check_params(params);
    std::vector<std::vector<Fixation>> out(streams.size());
    const auto n = static_cast<std::ptrdiff_t>(streams.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = detect_fixations(streams[k], params);
    }
    return out;
}

std::vector<std::vector<Fixation>> detect_fixations_batch_serial(
    std::span<const std::vector<GazeSample>> streams, const FixationParams& params)
{
    check_params(params);
    std::vector<std::vector<Fixation>> out;
    out.reserve(streams.size());
    for (const auto& s : streams)
        out.push_back(detect_fixations(s, params));
    return out;
}

} // namespace espim
