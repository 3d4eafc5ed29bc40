#include "espim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "espim/io.hpp"
#include "espim/stats.hpp"
#include "espim/version.hpp"

namespace espim::report {

using nlohmann::json;

namespace {

using Records = std::vector<const SessionRecord*>;

json violations_json(const std::vector<Violation>& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(json{{"path", x.path}, {"message", x.message}});
    return out;
}

json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

std::string optional_cell(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string();
}

// Quotes a CSV cell when needed.
std::string cell(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    return out + "\"";
}

class Csv {
public:
    explicit Csv(std::initializer_list<std::string_view> header) { row(header); }

    void row(std::initializer_list<std::string_view> cells)
    {
        bool first = true;
        for (auto c : cells) {
            if (!first)
                out_ << ',';
            out_ << cell(c);
            first = false;
        }
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string num(double v)
{
    return format_number(v);
}

std::string num(long long v)
{
    return std::to_string(v);
}

std::string num(std::size_t v)
{
    return std::to_string(v);
}

stats::Schedule schedule_of(const SessionRecord& r)
{
    return stats::classify_schedule(r.log.started_at);
}

stats::Resolution resolution_of(const SessionLog& s)
{
    return {static_cast<int>(std::lround(s.screen.width())), static_cast<int>(std::lround(s.screen.height()))};
}

json descriptives_json(const stats::Descriptives& d)
{
    return json{{"n", d.n}, {"mean", d.mean}, {"median", d.median}, {"sd", d.sd}, {"sd_defined", d.sd_defined},
        {"iqr", d.iqr}, {"range", d.range}, {"min", d.min}, {"max", d.max}};
}

struct Measure {
    const char* name;
    std::function<double(const SessionRecord&)> value;
};

const std::vector<Measure>& measures()
{
    static const std::vector<Measure> m = {
        {"espim", [](const SessionRecord& r) { return r.metrics.espim.value; }},
        {"mean_mt_ms", [](const SessionRecord& r) { return r.metrics.mean_mt_ms; }},
        {"errors", [](const SessionRecord& r) { return static_cast<double>(r.metrics.errors); }},
        {"mouse_moves", [](const SessionRecord& r) { return static_cast<double>(r.metrics.mouse_moves); }},
        {"anf", [](const SessionRecord& r) { return r.metrics.anf; }},
        {"fqls_px", [](const SessionRecord& r) { return r.metrics.fqls; }},
        {"click_drift_px", [](const SessionRecord& r) { return r.metrics.click_drift_px; }},
        {"strain_rating", [](const SessionRecord& r) { return static_cast<double>(r.log.strain_rating); }},
        {"display_hours", [](const SessionRecord& r) { return r.log.display_hours; }},
    };
    return m;
}

std::vector<double> values_of(const Records& rs, const Measure& m)
{
    std::vector<double> out;
    out.reserve(rs.size());
    for (const auto* r : rs)
        out.push_back(m.value(*r));
    return out;
}

// Paired comparison of one measure between two groups.
json compare(const char* split, const char* first_label, const char* second_label, const Records& first,
    const Records& second, const std::function<std::optional<std::string>(const SessionRecord&)>& key_of,
    const Measure& m, Csv& csv)
{
    std::vector<std::pair<std::string, double>> a;
    std::vector<std::pair<std::string, double>> b;
    for (const auto* r : first) {
        if (auto k = key_of(*r))
            a.emplace_back(*k, m.value(*r));
    }
    for (const auto* r : second) {
        if (auto k = key_of(*r))
            b.emplace_back(*k, m.value(*r));
    }
    const auto paired = stats::pair_by_key(a, b);
    json out{{"measure", m.name}, {"pairs", paired.keys.size()}};
    std::string mean_a;
    std::string mean_b;
    if (!paired.keys.empty()) {
        const double ma = stats::descriptives(paired.first).mean;
        const double mb = stats::descriptives(paired.second).mean;
        out["mean_" + std::string(first_label)] = ma;
        out["mean_" + std::string(second_label)] = mb;
        mean_a = num(ma);
        mean_b = num(mb);
    }
    try {
        const auto t = stats::paired_t_test(paired.first, paired.second);
        out["t"] = t.t;
        out["df"] = t.df;
        out["p"] = t.p;
        csv.row({split, m.name, first_label, second_label, num(paired.keys.size()), mean_a, mean_b, num(t.t),
            std::to_string(t.df), num(t.p), ""});
    } catch (const Error& e) {
        out["omitted"] = e.what();
        csv.row({split, m.name, first_label, second_label, num(paired.keys.size()), mean_a, mean_b, "", "", "",
            e.what()});
    }
    return out;
}

json correlate(const char* name, const char* group, const std::vector<double>& xs, const std::vector<double>& ys,
    Csv& csv)
{
    json out{{"name", name}, {"group", group}, {"n", xs.size()}};
    try {
        const auto c = stats::pearson(xs, ys);
        out["r"] = c.r;
        out["p"] = c.p;
        csv.row({name, group, num(xs.size()), num(c.r), num(c.p), ""});
    } catch (const Error& e) {
        out["omitted"] = e.what();
        csv.row({name, group, num(xs.size()), "", "", e.what()});
    }
    return out;
}

json resolution_table(const char* group, const Records& rs, Csv& csv)
{
    std::map<std::pair<long long, std::pair<int, int>>, std::pair<double, int>> acc;
    for (const auto* r : rs) {
        const auto res = resolution_of(r->log);
        auto& slot = acc[{res.pixels(), {res.width, res.height}}];
        slot.first += r->metrics.espim.value;
        ++slot.second;
    }
    std::vector<stats::ResolutionPoint> points;
    for (const auto& [key, v] : acc)
        points.push_back({{key.second.first, key.second.second}, v.first / v.second});
    json out;
    try {
        const auto table = stats::resolution_diff(points);
        json rows = json::array();
        for (const auto& row : table.rows) {
            rows.push_back(json{{"resolution", row.resolution.label()}, {"pixels", row.resolution.pixels()},
                {"espim", row.value}, {"diff", row.diff}});
            csv.row({group, row.resolution.label(), num(static_cast<long long>(row.resolution.pixels())),
                num(row.value), num(row.diff)});
        }
        csv.row({group, "total", "", "", num(table.total)});
        out = json{{"rows", std::move(rows)}, {"total", table.total}};
    } catch (const Error& e) {
        out = json{{"omitted", e.what()}};
    }
    return out;
}

json region_json(const cluster::RegionSummary& s)
{
    json regions = json::array();
    for (const auto& r : s.regions) {
        regions.push_back(json{{"label", r.label}, {"centroid", json{{"x", r.centroid.x}, {"y", r.centroid.y}}},
            {"targets", r.targets}, {"fixations", r.fixations},
            {"mean_fixation_distance", optional_number(r.mean_fixation_distance)}, {"clicks", r.clicks},
            {"mean_click_distance", optional_number(r.mean_click_distance)}, {"errors", r.errors}});
    }
    json quads = json::array();
    for (const auto& q : s.quadrants) {
        quads.push_back(json{{"quadrant", cluster::to_string(q.quadrant)}, {"fixations", q.fixations},
            {"mean_fixation_distance", optional_number(q.mean_fixation_distance)}, {"clicks", q.clicks},
            {"mean_click_distance", optional_number(q.mean_click_distance)}, {"errors", q.errors}});
    }
    return json{{"regions", std::move(regions)}, {"quadrants", std::move(quads)}, {"inertia", s.inertia}};
}

json session_json(const SessionRecord& r)
{
    const auto& m = r.metrics;
    json j{
        {"source", r.name},
        {"session_id", r.log.session_id},
        {"participant_id", r.log.participant.id},
        {"schedule", stats::to_string(schedule_of(r))},
        {"started_at", r.log.started_at.iso},
        {"resolution", resolution_of(r.log).label()},
        {"espim", m.espim.value},
        {"anf", m.anf},
        {"td_s", m.td.count()},
        {"errors", m.errors},
        {"mouse_moves", m.mouse_moves},
        {"fqls_px", m.fqls},
        {"fqls_skipped", m.fqls_skipped},
        {"mean_id_bits", m.mean_id},
        {"mean_mt_ms", m.mean_mt_ms},
        {"click_drift_px", m.click_drift_px},
        {"fixation_count", m.fixation_count},
        {"clamped_gaze", r.log.clamped_gaze},
        {"display_hours", r.log.display_hours},
        {"strain_rating", r.log.strain_rating},
        {"symptoms", r.log.symptoms},
        {"inputs",
            json{{"aos", m.inputs.screen_area}, {"aot", m.inputs.target_area}, {"d", m.inputs.distance},
                {"w", m.inputs.width}}},
    };
    j["gameplay_rating"] = r.log.participant.gameplay_rating ? json(*r.log.participant.gameplay_rating) : json(nullptr);
    return j;
}

} // namespace

InvalidSessionError::InvalidSessionError(std::string name, std::vector<Violation> violations)
    : Error(name + ": invalid session"
          + (violations.empty() ? std::string() : ": " + violations.front().path + ": " + violations.front().message)),
      name_(std::move(name)), violations_(std::move(violations))
{
}

std::string format_number(double v)
{
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

LoadResult load_sessions(std::span<const SessionSource> sources, const AnalyzeOptions& options)
{
    // Parse serially (cheap, and keeps error order stable), detect in parallel.
    struct Parsed {
        std::size_t index;
        SessionLog log;
    };
    std::vector<Parsed> parsed;
    std::vector<std::optional<SkippedSession>> failures(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        try {
            parsed.push_back({i, parse_session(sources[i].bytes)});
        } catch (const SessionError& e) {
            if (!options.skip_invalid)
                throw InvalidSessionError(sources[i].name, e.violations());
            failures[i] = SkippedSession{sources[i].name, e.violations()};
        }
    }

    std::vector<std::vector<GazeSample>> streams;
    streams.reserve(parsed.size());
    for (const auto& p : parsed)
        streams.push_back(p.log.gaze);
    auto fixations = detect_fixations_batch(streams, options.metrics.fixation);

    std::vector<std::optional<SessionRecord>> records(sources.size());
    for (std::size_t j = 0; j < parsed.size(); ++j) {
        const std::size_t i = parsed[j].index;
        try {
            SessionRecord r;
            r.name = sources[i].name;
            r.sha256 = io::sha256_hex(sources[i].bytes);
            r.metrics = session_metrics(parsed[j].log, fixations[j], options.metrics);
            r.log = std::move(parsed[j].log);
            r.fixations = std::move(fixations[j]);
            records[i] = std::move(r);
        } catch (const Error& e) {
            std::vector<Violation> v{{"", std::string("metrics: ") + e.what()}};
            if (!options.skip_invalid)
                throw InvalidSessionError(sources[i].name, std::move(v));
            failures[i] = SkippedSession{sources[i].name, std::move(v)};
        }
    }

    LoadResult out;
    std::map<std::string, std::string> seen_ids;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (records[i]) {
            const auto& id = records[i]->log.session_id;
            if (auto it = seen_ids.find(id); it != seen_ids.end()) {
                std::vector<Violation> v{{"/session_id", "duplicate session id (also in " + it->second + ")"}};
                if (!options.skip_invalid)
                    throw InvalidSessionError(sources[i].name, std::move(v));
                out.skipped.push_back({sources[i].name, std::move(v)});
                continue;
            }
            seen_ids.emplace(id, sources[i].name);
            out.sessions.push_back(std::move(*records[i]));
        } else if (failures[i]) {
            out.skipped.push_back(std::move(*failures[i]));
        }
    }
    return out;
}

cluster::RegionSummary cluster_sessions(std::span<const SessionRecord> sessions, std::size_t k, std::uint64_t seed)
{
    cluster::RegionInput in;
    for (const auto& s : sessions) {
        const double w = s.log.screen.width();
        const double h = s.log.screen.height();
        for (const auto& t : s.log.trials) {
            in.targets.push_back({t.target.center, w, h});
            in.clicks.push_back({t.select_pos, w, h});
            for (const auto& c : t.stray_clicks)
                in.errors.push_back({c.position, w, h});
        }
        for (const auto& f : s.fixations)
            in.fixations.push_back({f.centroid, w, h});
    }
    return cluster::region_analysis(in, k, seed);
}

std::string clusters_csv(std::span<const std::pair<std::string, cluster::RegionSummary>> groups)
{
    Csv csv({"group", "cluster", "centroid_x", "centroid_y", "targets", "fixations", "mean_fixation_distance_px",
        "clicks", "mean_click_distance_px", "errors"});
    for (const auto& [group, s] : groups) {
        for (const auto& r : s.regions) {
            csv.row({group, r.label, num(r.centroid.x), num(r.centroid.y), num(r.targets), num(r.fixations),
                optional_cell(r.mean_fixation_distance), num(r.clicks), optional_cell(r.mean_click_distance),
                num(r.errors)});
        }
    }
    return csv.str();
}

std::string quadrants_csv(std::span<const std::pair<std::string, cluster::RegionSummary>> groups)
{
    Csv csv({"group", "quadrant", "fixations", "mean_fixation_distance_px", "clicks", "mean_click_distance_px",
        "errors"});
    for (const auto& [group, s] : groups) {
        for (const auto& q : s.quadrants) {
            csv.row({group, cluster::to_string(q.quadrant), num(q.fixations), optional_cell(q.mean_fixation_distance),
                num(q.clicks), optional_cell(q.mean_click_distance), num(q.errors)});
        }
    }
    return csv.str();
}

std::string scatter_csv(std::span<const std::pair<std::string, cluster::RegionSummary>> groups)
{
    Csv csv({"group", "x", "y", "kind", "cluster"});
    for (const auto& [group, s] : groups) {
        for (const auto& p : s.scatter) {
            csv.row({group, num(p.position.x), num(p.position.y), cluster::to_string(p.kind),
                s.regions[p.region].label});
        }
    }
    return csv.str();
}

AnalysisReport build_report(const LoadResult& loaded, const AnalyzeOptions& options)
{
    const auto& sessions = loaded.sessions;
    if (sessions.empty())
        throw EmptyInputError("analyze: no valid sessions");

    json report;
    report["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
    report["parameters"] = json{{"dispersion_px", options.metrics.fixation.dispersion_px},
        {"min_fixation_ms", options.metrics.fixation.min_duration_ms},
        {"mouse_epsilon_px", options.metrics.mouse_epsilon_px}, {"seed", options.seed}, {"k", options.clusters},
        {"gameplay_threshold", options.gameplay_threshold}};

    json inputs = json::array();
    for (const auto& s : sessions)
        inputs.push_back(json{{"source", s.name}, {"session_id", s.log.session_id}, {"sha256", s.sha256}});
    report["inputs"] = std::move(inputs);
    json skipped = json::array();
    for (const auto& s : loaded.skipped)
        skipped.push_back(json{{"source", s.name}, {"violations", violations_json(s.violations)}});
    report["skipped"] = std::move(skipped);

    Csv metrics_csv({"session_id", "participant_id", "schedule", "resolution", "espim", "anf", "td_s", "errors",
        "mouse_moves", "fqls_px", "mean_id_bits", "mean_mt_ms", "click_drift_px", "display_hours",
        "strain_rating"});
    json per_session = json::array();
    for (const auto& s : sessions) {
        per_session.push_back(session_json(s));
        const auto& m = s.metrics;
        metrics_csv.row({s.log.session_id, s.log.participant.id, stats::to_string(schedule_of(s)),
            resolution_of(s.log).label(), num(m.espim.value), num(m.anf), num(m.td.count()), num(m.errors),
            num(m.mouse_moves), num(m.fqls), num(m.mean_id), num(m.mean_mt_ms), num(m.click_drift_px),
            num(s.log.display_hours), std::to_string(s.log.strain_rating)});
    }
    report["sessions"] = std::move(per_session);

    AnalysisReport out;
    out.tables.push_back({"session_metrics.csv", metrics_csv.str()});

    if (sessions.size() < 2) {
        report["notes"] = json::array({"group analyses omitted: fewer than 2 sessions"});
        out.json = report.dump(2) + "\n";
        return out;
    }
    report["notes"] = json::array();

    Records all;
    for (const auto& s : sessions)
        all.push_back(&s);
    Records nine;
    Records flex;
    {
        const auto part = stats::split_by_schedule<const SessionRecord*>(
            all, [](const SessionRecord* r) { return std::optional<WallClock>(r->log.started_at); });
        nine = part.first;
        flex = part.second;
    }

    // Gameplay split over sessions that carry a rating.
    Records rated;
    for (const auto* r : all) {
        if (r->log.participant.gameplay_rating)
            rated.push_back(r);
    }
    const auto gameplay = stats::split_by_threshold<const SessionRecord*>(
        rated,
        [](const SessionRecord* r) { return std::optional<double>(*r->log.participant.gameplay_rating); },
        options.gameplay_threshold);

    // Group comparisons.
    Csv cmp_csv({"split", "measure", "first_group", "second_group", "pairs", "mean_first", "mean_second", "t", "df",
        "p", "note"});
    json schedule_cmp = json::array();
    json gameplay_cmp = json::array();
    const auto by_participant = [](const SessionRecord& r) { return std::optional<std::string>(r.log.participant.id); };
    const auto by_pair_key = [](const SessionRecord& r) { return r.log.participant.pair_key; };
    for (const auto& m : measures()) {
        schedule_cmp.push_back(compare("schedule", "nine_to_five", "flexible", nine, flex, by_participant, m, cmp_csv));
        gameplay_cmp.push_back(compare("gameplay", "low", "high", gameplay.first, gameplay.second, by_pair_key, m, cmp_csv));
    }
    report["groups"] = json{
        {"schedule",
            json{{"nine_to_five", nine.size()}, {"flexible", flex.size()}, {"pairing_key", "participant.id"},
                {"comparisons", std::move(schedule_cmp)}}},
        {"gameplay",
            json{{"low", gameplay.first.size()}, {"high", gameplay.second.size()},
                {"unrated", all.size() - rated.size()}, {"threshold", options.gameplay_threshold},
                {"pairing_key", "participant.pair_key"}, {"comparisons", std::move(gameplay_cmp)}}},
    };
    out.tables.push_back({"group_comparisons.csv", cmp_csv.str()});

    // Descriptives (mouse movements and subjective rating per schedule group).
    Csv desc_csv({"measure", "group", "n", "mean", "median", "sd", "iqr", "range", "min", "max"});
    json desc = json::object();
    for (const char* name : {"mouse_moves", "strain_rating"}) {
        const auto& m = *std::find_if(
            measures().begin(), measures().end(), [&](const Measure& x) { return std::string_view(x.name) == name; });
        for (const auto& [label, group] : {std::pair{"nine_to_five", &nine}, std::pair{"flexible", &flex}}) {
            if (group->empty()) {
                desc[name][label] = nullptr;
                continue;
            }
            const auto d = stats::descriptives(values_of(*group, m));
            desc[name][label] = descriptives_json(d);
            desc_csv.row({name, label, num(d.n), num(d.mean), num(d.median), num(d.sd), num(d.iqr), num(d.range),
                num(d.min), num(d.max)});
        }
    }
    report["descriptives"] = std::move(desc);
    out.tables.push_back({"descriptives.csv", desc_csv.str()});

    // Correlations.
    Csv corr_csv({"name", "group", "n", "r", "p", "note"});
    json corr = json::array();
    const auto& espim_m = measures()[0];
    const Measure errors_m = measures()[2];
    const Measure mouse_m = measures()[3];
    for (const auto& [label, group] :
        {std::pair{"all", &all}, std::pair{"nine_to_five", &nine}, std::pair{"flexible", &flex}}) {
        corr.push_back(correlate("espim_errors", label, values_of(*group, espim_m), values_of(*group, errors_m), corr_csv));
        corr.push_back(correlate("espim_mouse_moves", label, values_of(*group, espim_m), values_of(*group, mouse_m), corr_csv));
    }
    {
        std::vector<double> ratings;
        for (const auto* r : rated)
            ratings.push_back(*r->log.participant.gameplay_rating);
        corr.push_back(correlate("gameplay_espim", "rated", ratings, values_of(rated, espim_m), corr_csv));
    }
    report["correlations"] = std::move(corr);
    out.tables.push_back({"correlations.csv", corr_csv.str()});

    // Resolution differences.
    Csv res_csv({"group", "resolution", "pixels", "espim", "diff"});
    json res = json::object();
    for (const auto& [label, group] :
        {std::pair{"all", &all}, std::pair{"nine_to_five", &nine}, std::pair{"flexible", &flex}}) {
        res[label] = group->empty() ? json(nullptr) : resolution_table(label, *group, res_csv);
    }
    report["resolution_diff"] = std::move(res);
    out.tables.push_back({"resolution_diff.csv", res_csv.str()});

    // Region clusters.
    std::vector<std::pair<std::string, cluster::RegionSummary>> regions;
    json clusters = json::object();
    for (const auto& [label, group] :
        {std::pair{"all", &all}, std::pair{"nine_to_five", &nine}, std::pair{"flexible", &flex}}) {
        if (group->empty()) {
            clusters[label] = nullptr;
            continue;
        }
        std::vector<SessionRecord> copies;
        copies.reserve(group->size());
        for (const auto* r : *group)
            copies.push_back(*r);
        try {
            auto summary = cluster_sessions(copies, options.clusters, options.seed);
            clusters[label] = region_json(summary);
            regions.emplace_back(label, std::move(summary));
        } catch (const Error& e) {
            clusters[label] = json{{"omitted", e.what()}};
        }
    }
    report["clusters"] = std::move(clusters);
    out.tables.push_back({"clusters.csv", clusters_csv(regions)});
    out.tables.push_back({"quadrants.csv", quadrants_csv(regions)});
    out.tables.push_back({"cluster_scatter.csv", scatter_csv(regions)});

    // Symptom tallies.
    std::map<std::string, std::vector<std::vector<std::string>>> symptom_groups{{"nine_to_five", {}}, {"flexible", {}}};
    for (const auto* r : nine)
        symptom_groups["nine_to_five"].push_back(r->log.symptoms);
    for (const auto* r : flex)
        symptom_groups["flexible"].push_back(r->log.symptoms);
    Csv sym_csv({"group", "symptom", "count"});
    json symptoms = json::object();
    for (const auto& [label, tally] : stats::symptom_tally(symptom_groups)) {
        symptoms[label] = json{{"counts", tally.counts}, {"total", tally.total}, {"sessions", tally.sessions}};
        for (const auto& [tag, count] : tally.counts)
            sym_csv.row({label, tag, std::to_string(count)});
        sym_csv.row({label, "total", std::to_string(tally.total)});
    }
    report["symptoms"] = std::move(symptoms);
    out.tables.push_back({"symptoms.csv", sym_csv.str()});

    // Pooled Fitts regression over consecutive-target transitions.
    std::vector<FittsTrial> trials;
    for (const auto& s : sessions) {
        for (std::size_t i = 1; i < s.log.trials.size(); ++i) {
            const auto& prev = s.log.trials[i - 1];
            const auto& cur = s.log.trials[i];
            const double d = distance(prev.target.center, cur.target.center);
            if (d > 0.0)
                trials.push_back({shannon_id(d, cur.target.width), cur.select_ms - cur.appear_ms});
        }
    }
    try {
        const auto fit = fit_fitts(trials);
        report["fitts"] = json{{"a_ms", fit.a}, {"b_ms_per_bit", fit.b}, {"r_squared", fit.r_squared}, {"n", trials.size()}};
    } catch (const Error& e) {
        report["fitts"] = json{{"omitted", e.what()}};
    }

    out.json = report.dump(2) + "\n";
    return out;
}

void write_report(const AnalysisReport& report, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw io::IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& t : report.tables)
        io::write_file_atomic(dir / t.name, t.content);
    io::write_file_atomic(dir / "report.json", report.json);
}

} // namespace espim::report
