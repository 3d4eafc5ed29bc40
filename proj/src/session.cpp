#include "espim/session.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

#include "espim/error.hpp"

namespace espim {

using nlohmann::json;

SessionError::SessionError(Kind kind, std::vector<Violation> violations)
    : Error([&] {
          std::string msg;
          switch (kind) {
          case Kind::Syntax: msg = "malformed session document"; break;
          case Kind::Schema: msg = "session document does not match the schema"; break;
          case Kind::Invariant: msg = "session document violates an invariant"; break;
          }
          if (!violations.empty())
              msg += ": " + violations.front().path + ": " + violations.front().message;
          return msg;
      }()),
      kind_(kind), violations_(std::move(violations))
{
}

namespace {

bool is_leap(int y)
{
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m)
{
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : days[m - 1];
}

// Collects schema violations while pulling typed values out of a JSON tree.
class Reader {
public:
    std::vector<Violation> violations;

    const json* object(const json& parent, const std::string& path, const char* key, bool required = true)
    {
        const json* v = member(parent, path, key, required);
        if (v != nullptr && !v->is_object()) {
            add(path + "/" + key, "expected an object");
            return nullptr;
        }
        return v;
    }

    const json* array(const json& parent, const std::string& path, const char* key, bool required = true)
    {
        const json* v = member(parent, path, key, required);
        if (v != nullptr && !v->is_array()) {
            add(path + "/" + key, "expected an array");
            return nullptr;
        }
        return v;
    }

    std::optional<double> number(const json& parent, const std::string& path, const char* key, bool required = true)
    {
        const json* v = member(parent, path, key, required);
        if (v == nullptr)
            return std::nullopt;
        if (!v->is_number()) {
            add(path + "/" + key, "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<long long> integer(const json& parent, const std::string& path, const char* key, bool required = true)
    {
        const json* v = member(parent, path, key, required);
        if (v == nullptr)
            return std::nullopt;
        if (!v->is_number_integer()) {
            add(path + "/" + key, "expected an integer");
            return std::nullopt;
        }
        return v->get<long long>();
    }

    std::optional<std::string> string(const json& parent, const std::string& path, const char* key, bool required = true)
    {
        const json* v = member(parent, path, key, required);
        if (v == nullptr)
            return std::nullopt;
        if (!v->is_string()) {
            add(path + "/" + key, "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    void only(const json& obj, const std::string& path, std::initializer_list<const char*> keys)
    {
        for (const auto& [k, _] : obj.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; }))
                add(path + "/" + k, "unknown field");
        }
    }

    void add(std::string path, std::string message)
    {
        violations.push_back({std::move(path), std::move(message)});
    }

private:
    const json* member(const json& parent, const std::string& path, const char* key, bool required)
    {
        auto it = parent.find(key);
        if (it == parent.end()) {
            if (required)
                add(path + "/" + key, "missing required field");
            return nullptr;
        }
        return &*it;
    }
};

std::optional<GazeSample> read_sample(Reader& r, const json& item, const std::string& path)
{
    if (!item.is_object()) {
        r.add(path, "expected an object");
        return std::nullopt;
    }
    r.only(item, path, {"t_ms", "x", "y"});
    auto t = r.number(item, path, "t_ms");
    auto x = r.number(item, path, "x");
    auto y = r.number(item, path, "y");
    if (!t || !x || !y)
        return std::nullopt;
    return GazeSample{*t, *x, *y};
}

std::vector<GazeSample> read_stream(Reader& r, const json& doc, const char* key)
{
    std::vector<GazeSample> out;
    const json* arr = r.array(doc, "", key);
    if (arr == nullptr)
        return out;
    out.reserve(arr->size());
    for (std::size_t i = 0; i < arr->size(); ++i) {
        if (auto s = read_sample(r, (*arr)[i], "/" + std::string(key) + "/" + std::to_string(i)))
            out.push_back(*s);
    }
    return out;
}

struct RawScreen {
    double width = 0.0;
    double height = 0.0;
};

void check_stream(std::vector<Violation>& out, const std::vector<GazeSample>& s, const char* name, double duration)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string path = "/" + std::string(name) + "/" + std::to_string(i) + "/t_ms";
        if (s[i].t_ms < 0.0 || s[i].t_ms > duration)
            out.push_back({path, "timestamp outside [0, duration_ms]"});
        if (i > 0 && s[i].t_ms < s[i - 1].t_ms)
            out.push_back({path, "timestamps must be non-decreasing"});
    }
}

json sample_json(const GazeSample& s)
{
    return json{{"t_ms", s.t_ms}, {"x", s.x}, {"y", s.y}};
}

} // namespace

std::optional<WallClock> parse_wall_clock(std::string_view text)
{
    static const std::regex re(R"(^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2}(?:\.\d{1,9})?)(Z|[+-](\d{2}):(\d{2}))$)");
    std::cmatch m;
    if (!std::regex_match(text.begin(), text.end(), m, re))
        return std::nullopt;
    const int year = std::stoi(m[1].str());
    const int month = std::stoi(m[2].str());
    const int day = std::stoi(m[3].str());
    const int hour = std::stoi(m[4].str());
    const int minute = std::stoi(m[5].str());
    const double second = std::stod(m[6].str());
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        return std::nullopt;
    if (hour > 23 || minute > 59 || second >= 61.0)
        return std::nullopt;
    if (m[8].matched && (std::stoi(m[8].str()) > 14 || std::stoi(m[9].str()) > 59))
        return std::nullopt;
    return WallClock{std::string(text), hour * 60 + minute, second};
}

bool valid_session_id(std::string_view id) noexcept
{
    if (id.empty() || id.size() > 128 || id.front() == '.')
        return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_'
            || c == '-';
    });
}

SessionLog parse_session(std::string_view bytes)
{
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw SessionError(SessionError::Kind::Syntax, {{"", e.what()}});
    }
    if (!doc.is_object())
        throw SessionError(SessionError::Kind::Schema, {{"", "expected a JSON object"}});

    Reader r;
    r.only(doc, "",
        {"version", "session_id", "participant", "screen", "started_at", "duration_ms", "pre", "trials", "gaze",
            "mouse", "post", "quality"});

    if (auto v = r.integer(doc, "", "version"); v && *v != kSessionSchemaVersion)
        r.add("/version", "unsupported schema version " + std::to_string(*v));

    SessionLog s;
    auto session_id = r.string(doc, "", "session_id");

    Participant participant;
    std::optional<long long> age;
    std::optional<long long> gameplay;
    if (const json* p = r.object(doc, "", "participant")) {
        r.only(*p, "/participant", {"id", "age", "gameplay_rating", "pair_key"});
        if (auto id = r.string(*p, "/participant", "id"))
            participant.id = *id;
        age = r.integer(*p, "/participant", "age", false);
        gameplay = r.integer(*p, "/participant", "gameplay_rating", false);
        participant.pair_key = r.string(*p, "/participant", "pair_key", false);
    }

    RawScreen screen;
    if (const json* sc = r.object(doc, "", "screen")) {
        r.only(*sc, "/screen", {"width", "height"});
        screen.width = r.number(*sc, "/screen", "width").value_or(0.0);
        screen.height = r.number(*sc, "/screen", "height").value_or(0.0);
    }

    auto started = r.string(doc, "", "started_at");
    auto duration = r.number(doc, "", "duration_ms");

    double display_hours = 0.0;
    if (const json* pre = r.object(doc, "", "pre")) {
        r.only(*pre, "/pre", {"display_hours"});
        display_hours = r.number(*pre, "/pre", "display_hours").value_or(0.0);
    }

    std::vector<TrialRecord> trials;
    std::vector<bool> has_stray_list;
    if (const json* arr = r.array(doc, "", "trials")) {
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const std::string path = "/trials/" + std::to_string(i);
            const json& item = (*arr)[i];
            if (!item.is_object()) {
                r.add(path, "expected an object");
                continue;
            }
            r.only(item, path,
                {"target", "appear_ms", "select_ms", "select_x", "select_y", "error_clicks", "stray_clicks"});
            TrialRecord t;
            if (const json* tg = r.object(item, path, "target")) {
                const std::string tpath = path + "/target";
                r.only(*tg, tpath, {"cx", "cy", "width", "height", "shape"});
                t.target.center.x = r.number(*tg, tpath, "cx").value_or(0.0);
                t.target.center.y = r.number(*tg, tpath, "cy").value_or(0.0);
                t.target.width = r.number(*tg, tpath, "width").value_or(0.0);
                const auto shape = r.string(*tg, tpath, "shape");
                if (shape == "circle") {
                    t.target.shape = TargetShape::Circle;
                    if (tg->contains("height"))
                        r.add(tpath + "/height", "circle targets have no height");
                } else if (shape == "rectangle") {
                    t.target.shape = TargetShape::Rectangle;
                    t.target.height = r.number(*tg, tpath, "height").value_or(0.0);
                } else if (shape) {
                    r.add(tpath + "/shape", "expected \"circle\" or \"rectangle\"");
                }
            }
            t.appear_ms = r.number(item, path, "appear_ms").value_or(0.0);
            t.select_ms = r.number(item, path, "select_ms").value_or(0.0);
            t.select_pos.x = r.number(item, path, "select_x").value_or(0.0);
            t.select_pos.y = r.number(item, path, "select_y").value_or(0.0);
            const auto errors = r.integer(item, path, "error_clicks");
            t.error_clicks = errors ? static_cast<int>(std::clamp<long long>(*errors, -1, 1'000'000)) : 0;
            const json* stray = r.array(item, path, "stray_clicks", false);
            if (stray != nullptr) {
                for (std::size_t j = 0; j < stray->size(); ++j) {
                    if (auto c = read_sample(r, (*stray)[j], path + "/stray_clicks/" + std::to_string(j)))
                        t.stray_clicks.push_back({c->t_ms, c->position()});
                }
            }
            has_stray_list.push_back(stray != nullptr);
            trials.push_back(std::move(t));
        }
    }

    auto gaze = read_stream(r, doc, "gaze");
    auto mouse = read_stream(r, doc, "mouse");

    std::optional<long long> strain;
    std::vector<std::string> symptoms;
    if (const json* post = r.object(doc, "", "post")) {
        r.only(*post, "/post", {"strain_rating", "symptoms"});
        strain = r.integer(*post, "/post", "strain_rating");
        if (const json* sy = r.array(*post, "/post", "symptoms")) {
            for (std::size_t i = 0; i < sy->size(); ++i) {
                if ((*sy)[i].is_string())
                    symptoms.push_back((*sy)[i].get<std::string>());
                else
                    r.add("/post/symptoms/" + std::to_string(i), "expected a string");
            }
        }
    }

    std::optional<long long> clamped;
    if (const json* q = r.object(doc, "", "quality", false)) {
        r.only(*q, "/quality", {"clamped_gaze"});
        clamped = r.integer(*q, "/quality", "clamped_gaze");
    }

    if (!r.violations.empty())
        throw SessionError(SessionError::Kind::Schema, std::move(r.violations));

    // Invariants.
    std::vector<Violation> bad;
    if (!valid_session_id(*session_id))
        bad.push_back({"/session_id", "must be 1-128 characters of [A-Za-z0-9._-] not starting with '.'"});
    if (participant.id.empty())
        bad.push_back({"/participant/id", "must not be empty"});
    if (age && (*age < 0 || *age > 150))
        bad.push_back({"/participant/age", "must be in 0..150"});
    if (gameplay && (*gameplay < 1 || *gameplay > 5))
        bad.push_back({"/participant/gameplay_rating", "must be an integer in 1..5"});
    if (participant.pair_key && participant.pair_key->empty())
        bad.push_back({"/participant/pair_key", "must not be empty"});
    if (!(screen.width > 0.0))
        bad.push_back({"/screen/width", "must be > 0"});
    if (!(screen.height > 0.0))
        bad.push_back({"/screen/height", "must be > 0"});
    auto wall = parse_wall_clock(*started);
    if (!wall)
        bad.push_back({"/started_at", "expected an ISO 8601 timestamp with zone, e.g. 2021-03-01T10:15:00+01:00"});
    if (!(*duration > 0.0))
        bad.push_back({"/duration_ms", "must be > 0"});
    if (!(display_hours >= 0.0 && display_hours <= 24.0))
        bad.push_back({"/pre/display_hours", "must be in [0, 24]"});
    if (!strain || *strain < 1 || *strain > 5)
        bad.push_back({"/post/strain_rating", "must be an integer in 1..5"});
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < symptoms.size(); ++i) {
            const std::string path = "/post/symptoms/" + std::to_string(i);
            if (symptoms[i].empty())
                bad.push_back({path, "must not be empty"});
            else if (!seen.insert(symptoms[i]).second)
                bad.push_back({path, "duplicate symptom tag"});
        }
    }
    if (clamped && *clamped < 0)
        bad.push_back({"/quality/clamped_gaze", "must be >= 0"});

    const bool screen_ok = screen.width > 0.0 && screen.height > 0.0;
    if (trials.empty())
        bad.push_back({"/trials", "must contain at least one trial"});
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        const std::string path = "/trials/" + std::to_string(i);
        const bool width_ok = t.target.width > 0.0 && (!screen_ok || t.target.width <= screen.width);
        if (!width_ok)
            bad.push_back({path + "/target/width", "must satisfy 0 < width <= screen width"});
        if (t.target.shape == TargetShape::Rectangle && !(t.target.height > 0.0))
            bad.push_back({path + "/target/height", "must be > 0"});
        if (screen_ok && width_ok && t.target.area() > screen.width * screen.height)
            bad.push_back({path + "/target", "target area exceeds screen area"});
        if (screen_ok
            && (t.target.center.x < 0.0 || t.target.center.x > screen.width || t.target.center.y < 0.0
                || t.target.center.y > screen.height))
            bad.push_back({path + "/target", "target center lies outside the screen"});
        if (t.appear_ms < 0.0)
            bad.push_back({path + "/appear_ms", "must be >= 0"});
        if (!(t.select_ms > t.appear_ms))
            bad.push_back({path + "/select_ms", "must be greater than appear_ms"});
        if (*duration > 0.0 && t.select_ms > *duration)
            bad.push_back({path + "/select_ms", "timestamp outside [0, duration_ms]"});
        if (width_ok && !t.target.contains(t.select_pos))
            bad.push_back({path + "/select_x", "selection point lies outside the target"});
        if (t.error_clicks < 0)
            bad.push_back({path + "/error_clicks", "must be >= 0"});
        if (has_stray_list[i]) {
            if (static_cast<long long>(t.stray_clicks.size()) != t.error_clicks)
                bad.push_back({path + "/stray_clicks", "length must equal error_clicks"});
            for (std::size_t j = 0; j < t.stray_clicks.size(); ++j) {
                const double ts = t.stray_clicks[j].t_ms;
                if (ts < t.appear_ms || ts > t.select_ms)
                    bad.push_back({path + "/stray_clicks/" + std::to_string(j) + "/t_ms",
                        "stray click outside the trial interval"});
            }
        }
        if (i > 0 && t.appear_ms < trials[i - 1].select_ms)
            bad.push_back({path + "/appear_ms", "trial appears before the previous one was selected"});
    }
    check_stream(bad, gaze, "gaze", *duration);
    check_stream(bad, mouse, "mouse", *duration);

    if (!bad.empty())
        throw SessionError(SessionError::Kind::Invariant, std::move(bad));

    s.session_id = std::move(*session_id);
    s.participant = std::move(participant);
    if (age)
        s.participant.age = static_cast<int>(*age);
    if (gameplay)
        s.participant.gameplay_rating = static_cast<int>(*gameplay);
    s.screen = ScreenSpec(screen.width, screen.height);
    s.started_at = std::move(*wall);
    s.duration_ms = *duration;
    s.display_hours = display_hours;
    s.trials = std::move(trials);
    s.mouse = std::move(mouse);
    s.strain_rating = static_cast<int>(*strain);
    s.symptoms = std::move(symptoms);
    s.clamped_gaze = clamped ? static_cast<std::size_t>(*clamped) : 0;

    for (auto& g : gaze) {
        const double x = std::clamp(g.x, 0.0, screen.width);
        const double y = std::clamp(g.y, 0.0, screen.height);
        if (x != g.x || y != g.y) {
            ++s.clamped_gaze;
            g.x = x;
            g.y = y;
        }
    }
    s.gaze = std::move(gaze);
    return s;
}

std::string serialize_session(const SessionLog& s)
{
    json participant{{"id", s.participant.id}};
    if (s.participant.age)
        participant["age"] = *s.participant.age;
    if (s.participant.gameplay_rating)
        participant["gameplay_rating"] = *s.participant.gameplay_rating;
    if (s.participant.pair_key)
        participant["pair_key"] = *s.participant.pair_key;

    json trials = json::array();
    for (const auto& t : s.trials) {
        json target{{"cx", t.target.center.x}, {"cy", t.target.center.y}, {"width", t.target.width}};
        if (t.target.shape == TargetShape::Circle) {
            target["shape"] = "circle";
        } else {
            target["shape"] = "rectangle";
            target["height"] = t.target.height;
        }
        json trial{{"target", std::move(target)}, {"appear_ms", t.appear_ms}, {"select_ms", t.select_ms},
            {"select_x", t.select_pos.x}, {"select_y", t.select_pos.y}, {"error_clicks", t.error_clicks}};
        if (!t.stray_clicks.empty()) {
            json stray = json::array();
            for (const auto& c : t.stray_clicks)
                stray.push_back(json{{"t_ms", c.t_ms}, {"x", c.position.x}, {"y", c.position.y}});
            trial["stray_clicks"] = std::move(stray);
        }
        trials.push_back(std::move(trial));
    }

    json gaze = json::array();
    for (const auto& g : s.gaze)
        gaze.push_back(sample_json(g));
    json mouse = json::array();
    for (const auto& m : s.mouse)
        mouse.push_back(sample_json(m));

    json doc{
        {"version", kSessionSchemaVersion},
        {"session_id", s.session_id},
        {"participant", std::move(participant)},
        {"screen", json{{"width", s.screen.width()}, {"height", s.screen.height()}}},
        {"started_at", s.started_at.iso},
        {"duration_ms", s.duration_ms},
        {"pre", json{{"display_hours", s.display_hours}}},
        {"trials", std::move(trials)},
        {"gaze", std::move(gaze)},
        {"mouse", std::move(mouse)},
        {"post", json{{"strain_rating", s.strain_rating}, {"symptoms", s.symptoms}}},
        {"quality", json{{"clamped_gaze", s.clamped_gaze}}},
    };
    return doc.dump(2) + "\n";
}

std::vector<GazeSample> parse_gaze_csv(std::string_view text)
{
    std::vector<GazeSample> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty()) {
            if (pos > text.size())
                break;
            continue;
        }
        if (!header_seen) {
            if (line != "t_ms,x,y")
                throw Error("gaze csv line " + std::to_string(line_no) + ": expected header \"t_ms,x,y\"");
            header_seen = true;
            continue;
        }
        double values[3];
        std::size_t field = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto token = line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
            if (field >= 3)
                throw Error("gaze csv line " + std::to_string(line_no) + ": expected 3 fields");
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), values[field]);
            if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(values[field]))
                throw Error("gaze csv line " + std::to_string(line_no) + ": invalid number \"" + std::string(token) + "\"");
            ++field;
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (field != 3)
            throw Error("gaze csv line " + std::to_string(line_no) + ": expected 3 fields");
        if (!out.empty() && values[0] < out.back().t_ms)
            throw Error("gaze csv line " + std::to_string(line_no) + ": timestamps must be non-decreasing");
        out.push_back({values[0], values[1], values[2]});
        if (pos > text.size())
            break;
    }
    if (!header_seen)
        throw Error("gaze csv: missing header \"t_ms,x,y\"");
    return out;
}

} // namespace espim
