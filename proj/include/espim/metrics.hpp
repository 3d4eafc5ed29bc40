#pragma once

// Per-session behavioural measures and the wiring from a session log to the
// model inputs.

#include <cstddef>
#include <span>
#include <vector>

#include "espim/fixation.hpp"
#include "espim/model.hpp"
#include "espim/session.hpp"

namespace espim {

/// Number of fixations whose onset lies in `task` (inclusive bounds).
double anf(std::span<const Fixation> fixations, TimeRange task);

/// Consecutive-sample displacements longer than `epsilon_px`.
std::size_t mouse_movement_count(std::span<const MouseSample> trail, double epsilon_px = 1.0);

/// Total stray clicks over all trials.
long long extract_errors(const SessionLog& session);

/// Interval from the first target appearance to the last selection.
TimeRange task_interval(const SessionLog& session);

/// One stimulus per trial, active from appearance to selection.
std::vector<Stimulus> stimuli_of(const SessionLog& session);

/// Mean center-to-center distance between consecutive targets. Throws
/// InsufficientDataError for fewer than two trials.
double mean_target_distance(const SessionLog& session);

struct SessionMetrics {
    EspimScore espim;
    double anf = 0.0;
    Seconds td{0.0};
    long long errors = 0;
    std::size_t mouse_moves = 0;
    double fqls = 0.0;    // px
    double mean_id = 0.0; // bits, mean over consecutive-target transitions

    // Supporting values.
    EspimInputs inputs;
    std::size_t fixation_count = 0; // all detected fixations in the session
    std::size_t fqls_skipped = 0;
    double mean_mt_ms = 0.0;     // selection minus appearance, averaged
    double click_drift_px = 0.0; // selection point to target center, averaged
};

struct MetricsParams {
    FixationParams fixation;
    double mouse_epsilon_px = 1.0;
};

/// Errors from the components propagate: a single-trial session has no
/// target distance, a session without fixations in the task has no score.
SessionMetrics session_metrics(const SessionLog& session, const MetricsParams& params = {});

/// Same as session_metrics with fixations already detected.
SessionMetrics session_metrics(
    const SessionLog& session, std::span<const Fixation> fixations, const MetricsParams& params = {});

} // namespace espim
