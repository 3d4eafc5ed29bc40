#include "espim/metrics.hpp"

#include <algorithm>

#include "espim/error.hpp"

namespace espim {

double anf(std::span<const Fixation> fixations, TimeRange task)
{
    return static_cast<double>(std::count_if(
        fixations.begin(), fixations.end(), [&](const Fixation& f) { return task.contains(f.onset_ms); }));
}

std::size_t mouse_movement_count(std::span<const MouseSample> trail, double epsilon_px)
{
    std::size_t moves = 0;
    for (std::size_t i = 1; i < trail.size(); ++i) {
        if (distance(trail[i - 1].position(), trail[i].position()) > epsilon_px)
            ++moves;
    }
    return moves;
}

long long extract_errors(const SessionLog& session)
{
    long long total = 0;
    for (const auto& t : session.trials)
        total += t.error_clicks;
    return total;
}

TimeRange task_interval(const SessionLog& session)
{
    if (session.trials.empty())
        throw EmptyInputError("session has no trials");
    return {session.trials.front().appear_ms, session.trials.back().select_ms};
}

std::vector<Stimulus> stimuli_of(const SessionLog& session)
{
    std::vector<Stimulus> out;
    out.reserve(session.trials.size());
    for (const auto& t : session.trials)
        out.push_back({t.target, {t.appear_ms, t.select_ms}});
    return out;
}

double mean_target_distance(const SessionLog& session)
{
    const auto& trials = session.trials;
    if (trials.size() < 2)
        throw InsufficientDataError("target distance needs at least two consecutive targets");
    double sum = 0.0;
    for (std::size_t i = 1; i < trials.size(); ++i)
        sum += distance(trials[i - 1].target.center, trials[i].target.center);
    return sum / static_cast<double>(trials.size() - 1);
}

SessionMetrics session_metrics(const SessionLog& session, const MetricsParams& params)
{
    const auto fixations = detect_fixations(session.gaze, params.fixation);
    return session_metrics(session, fixations, params);
}

SessionMetrics session_metrics(
    const SessionLog& session, std::span<const Fixation> fixations, const MetricsParams& params)
{
    const auto& trials = session.trials;
    const double d = mean_target_distance(session);
    const TimeRange task = task_interval(session);

    std::vector<TargetSpec> targets;
    targets.reserve(trials.size());
    double id_sum = 0.0;
    double mt_sum = 0.0;
    double drift_sum = 0.0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        targets.push_back(trials[i].target);
        mt_sum += trials[i].select_ms - trials[i].appear_ms;
        drift_sum += distance(trials[i].select_pos, trials[i].target.center);
        if (i > 0) {
            // A repeated position is a zero-difficulty transition.
            const double step = distance(trials[i - 1].target.center, trials[i].target.center);
            id_sum += step > 0.0 ? shannon_id(step, trials[i].target.width) : 0.0;
        }
    }

    SessionMetrics m;
    m.td = Seconds((task.end_ms - task.begin_ms) / 1000.0);
    m.anf = anf(fixations, task);
    m.errors = extract_errors(session);
    m.mouse_moves = mouse_movement_count(session.mouse, params.mouse_epsilon_px);
    m.fixation_count = fixations.size();
    m.mean_id = id_sum / static_cast<double>(trials.size() - 1);
    m.mean_mt_ms = mt_sum / static_cast<double>(trials.size());
    m.click_drift_px = drift_sum / static_cast<double>(trials.size());

    const auto stimuli = stimuli_of(session);
    const FqlsResult drift = fqls(fixations, stimuli);
    m.fqls = drift.mean_px;
    m.fqls_skipped = drift.skipped;

    m.inputs = make_inputs(session.screen, targets, d, m.anf, m.td);
    m.espim = espim(m.inputs);
    return m;
}

} // namespace espim
