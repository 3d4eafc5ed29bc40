#pragma once

// Closed-form eye-strain model: Shannon index of difficulty, Fitts movement
// time, the ESPiM score, fixation-count estimation and fixation drift.

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "espim/geometry.hpp"

namespace espim {

using Seconds = std::chrono::duration<double>;

/// Display geometry in pixels. Diagonal and area are derived on construction.
class ScreenSpec {
public:
    /// Throws DomainError unless both dimensions are finite and positive.
    ScreenSpec(double width, double height);

    double width() const noexcept { return width_; }
    double height() const noexcept { return height_; }
    double diagonal() const noexcept { return diagonal_; }
    double area() const noexcept { return area_; }

    bool operator==(const ScreenSpec& o) const noexcept
    {
        return width_ == o.width_ && height_ == o.height_;
    }

private:
    double width_;
    double height_;
    double diagonal_;
    double area_;
};

enum class TargetShape { Circle, Rectangle };

struct TargetSpec {
    Point center;
    double width = 0.0;
    TargetShape shape = TargetShape::Circle;
    double height = 0.0; // rectangle only

    double area() const noexcept;
    /// Inclusive containment test against the target's outline.
    bool contains(Point p) const noexcept;

    bool operator==(const TargetSpec&) const = default;
};

/// Throws DomainError if the target cannot live on `screen`
/// (non-positive or oversized width, area larger than the screen).
void validate_target(const TargetSpec& target, const ScreenSpec& screen);

struct EspimInputs {
    double screen_area = 0.0; // square pixels
    double target_area = 0.0; // square pixels, mean over targets
    double distance = 0.0;    // center-to-center, pixels
    double width = 0.0;       // target width, pixels
    double fixations = 0.0;   // average number of fixations
    Seconds duration{0.0};    // task duration

    /// Bounds for `distance` and `width`. Zero means no concrete screen is
    /// attached and the bound is not checked.
    double screen_diagonal = 0.0;
    double screen_width = 0.0;
};

/// Builds inputs from a screen and a set of targets: target area is the
/// arithmetic mean of all target areas, width the mean target width.
EspimInputs make_inputs(const ScreenSpec& screen, std::span<const TargetSpec> targets,
    double distance, double fixations, Seconds duration);

struct EspimScore {
    double value = 0.0; // nominal bits
};

struct FittsFit {
    double a = 0.0; // intercept, ms
    double b = 0.0; // slope, ms/bit
    double r_squared = 1.0;
};

struct FittsTrial {
    double id = 0.0; // bits
    double mt = 0.0; // ms
};

struct AnfInterval {
    double low = 0.0;
    double mid = 0.0;
    double high = 0.0;
};

struct EspimInterval {
    EspimScore low;
    EspimScore mid;
    EspimScore high;
};

/// log2(1 + d/w). Throws DomainError for non-positive arguments.
double shannon_id(double distance, double width);

double fitts_mt(const FittsFit& fit, double id);

/// Ordinary least-squares fit of mt = a + b*id.
/// Throws DegenerateRegressionError with fewer than two distinct ids.
FittsFit fit_fitts(std::span<const FittsTrial> trials);

/// Validates every field (naming the offender on failure) and evaluates
///   sqrt(((AoS/AoT) * log2(1 + D/W) * ANF + 1) / (TD + 1)).
EspimScore espim(const EspimInputs& in);

/// Fixation-count bounds implied by the 200-600 ms typical fixation duration.
AnfInterval estimate_anf(Seconds duration);

/// Score interval for a design with no fixation data; `in.fixations` is ignored.
EspimInterval espim_estimated(EspimInputs in, Seconds duration);

/// Batch evaluation, parallelised with OpenMP. The result of element i is
/// bit-identical to espim(inputs[i]). Invalid inputs yield NaN instead of
/// throwing so one bad row does not abort the batch.
void espim_batch(std::span<const EspimInputs> inputs, std::span<double> out);

/// Serial reference for espim_batch.
void espim_batch_serial(std::span<const EspimInputs> inputs, std::span<double> out);

// Eye-tracking measures.

struct Fixation {
    double onset_ms = 0.0;
    double duration_ms = 0.0;
    Point centroid;
    std::size_t sample_count = 0;

    double end_ms() const noexcept { return onset_ms + duration_ms; }

    bool operator==(const Fixation&) const = default;
};

struct TimeRange {
    double begin_ms = 0.0;
    double end_ms = 0.0;

    bool contains(double t) const noexcept { return t >= begin_ms && t <= end_ms; }
};

struct Stimulus {
    TargetSpec target;
    TimeRange active;
};

struct FqlsResult {
    double mean_px = 0.0;
    std::size_t qualifying = 0;
    std::size_t skipped = 0;
};

/// Fixation drift: mean distance from each fixation centroid to the center of
/// the stimulus active at its onset. A fixation whose onset falls between
/// stimuli is matched to the first stimulus its interval overlaps; fixations
/// overlapping none are skipped and counted.
/// Throws EmptyInputError when no fixation qualifies.
FqlsResult fqls(std::span<const Fixation> fixations, std::span<const Stimulus> stimuli);

} // namespace espim
