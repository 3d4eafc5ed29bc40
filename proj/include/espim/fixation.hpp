#pragma once

#include <span>
#include <vector>

#include "espim/model.hpp"
#include "espim/session.hpp"

namespace espim {

struct FixationParams {
    double dispersion_px = 60.0; // bounding-box width + height
    double min_duration_ms = 200.0;
};

/// Dispersion-threshold (I-DT) fixation detection.
///
/// A window starts at the first remaining sample and spans at least
/// `min_duration_ms` (last minus first timestamp). If its dispersion,
/// (max x - min x) + (max y - min y), is within the threshold it is grown one
/// sample at a time while that still holds and emitted as a fixation whose
/// centroid is the mean of its samples; otherwise the first sample is dropped.
/// Samples must be time-ordered. Empty input yields no fixations.
std::vector<Fixation> detect_fixations(std::span<const GazeSample> samples, const FixationParams& params = {});

/// Detects fixations in many independent streams, one OpenMP task per stream.
/// Element i equals detect_fixations(streams[i], params).
std::vector<std::vector<Fixation>> detect_fixations_batch(
    std::span<const std::vector<GazeSample>> streams, const FixationParams& params = {});

/// Serial reference for detect_fixations_batch.
std::vector<std::vector<Fixation>> detect_fixations_batch_serial(
    std::span<const std::vector<GazeSample>> streams, const FixationParams& params = {});

} // namespace espim
