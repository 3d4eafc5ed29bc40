#pragma once

// Session-log document model (schema version 1) with a validating parser and
// a canonical serializer.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "espim/geometry.hpp"
#include "espim/model.hpp"

namespace espim {

inline constexpr int kSessionSchemaVersion = 1;

struct GazeSample {
    double t_ms = 0.0;
    double x = 0.0;
    double y = 0.0;

    Point position() const noexcept { return {x, y}; }
    bool operator==(const GazeSample&) const = default;
};

using MouseSample = GazeSample;

struct StrayClick {
    double t_ms = 0.0;
    Point position;

    bool operator==(const StrayClick&) const = default;
};

struct TrialRecord {
    TargetSpec target;
    double appear_ms = 0.0;
    double select_ms = 0.0;
    Point select_pos;
    int error_clicks = 0;
    std::vector<StrayClick> stray_clicks; // optional; when present, size == error_clicks

    bool operator==(const TrialRecord&) const = default;
};

struct Participant {
    std::string id;
    std::optional<int> age;
    std::optional<int> gameplay_rating; // 1..5
    std::optional<std::string> pair_key;

    bool operator==(const Participant&) const = default;
};

/// Wall-clock start time as written by the client, including its UTC offset.
struct WallClock {
    std::string iso;       // canonical "YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM)"
    int minute_of_day = 0; // local time, 0..1439
    double second = 0.0;   // seconds within the minute

    bool operator==(const WallClock&) const = default;
};

/// Parses an ISO 8601 timestamp with an explicit zone designator. Returns
/// nullopt on any format or range error.
std::optional<WallClock> parse_wall_clock(std::string_view text);

struct SessionLog {
    std::string session_id;
    Participant participant;
    ScreenSpec screen{1.0, 1.0};
    WallClock started_at;
    double duration_ms = 0.0;
    double display_hours = 0.0;
    std::vector<TrialRecord> trials;
    std::vector<GazeSample> gaze;
    std::vector<MouseSample> mouse;
    int strain_rating = 1;
    std::vector<std::string> symptoms;
    std::size_t clamped_gaze = 0; // out-of-bounds samples clamped to the screen

    bool operator==(const SessionLog&) const = default;
};

/// Parses and validates a session document. On failure throws SessionError
/// whose kind separates malformed JSON (Syntax), missing or mistyped fields
/// (Schema) and violated invariants (Invariant). All violations of the
/// failing kind are reported, each with a JSON-pointer-style path.
SessionLog parse_session(std::string_view bytes);

/// Canonical UTF-8 JSON form: sorted keys, two-space indent, trailing newline.
std::string serialize_session(const SessionLog& session);

/// Session ids double as file names, so they are restricted to
/// [A-Za-z0-9._-], 1..128 characters, not starting with '.'.
bool valid_session_id(std::string_view id) noexcept;

/// `t_ms,x,y` CSV with a header line, as exported by desktop eye trackers.
/// Throws Error with the offending line number on malformed input.
std::vector<GazeSample> parse_gaze_csv(std::string_view text);

} // namespace espim
