#include "espim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <csignal>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "espim/fixation.hpp"
#include "espim/io.hpp"
#include "espim/model.hpp"
#include "espim/session.hpp"
#include "espim/stats.hpp"

namespace espim::cli {

namespace fs = std::filesystem;

namespace {

void print_violations(std::ostream& err, const std::string& name, const std::vector<Violation>& violations)
{
    for (const auto& v : violations)
        err << name << ": " << (v.path.empty() ? "/" : v.path) << ": " << v.message << '\n';
}

std::vector<report::SessionSource> read_sources(const std::vector<fs::path>& paths)
{
    std::vector<report::SessionSource> sources;
    for (const auto& p : expand_inputs(paths))
        sources.push_back({p.filename().string(), io::read_file(p)});
    return sources;
}

report::LoadResult load(const std::vector<fs::path>& inputs, const report::AnalyzeOptions& options, std::ostream& err)
{
    const auto sources = read_sources(inputs);
    if (sources.empty())
        throw EmptyInputError("no input sessions");
    auto loaded = report::load_sessions(sources, options);
    for (const auto& s : loaded.skipped) {
        err << "skipped " << s.name << '\n';
        print_violations(err, s.name, s.violations);
    }
    if (loaded.sessions.empty())
        throw EmptyInputError("no valid sessions");
    return loaded;
}

// Shared error mapping for the data-processing commands.
template <typename F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const report::InvalidSessionError& e) {
        err << "error: " << e.name() << " is not a valid session\n";
        print_violations(err, e.name(), e.violations());
        return kExitInvalid;
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

double parse_positive(std::string_view s, const char* field)
{
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !(v > 0.0))
        throw DomainError(field, "expected a positive number, got '" + std::string(s) + "'");
    return v;
}

ScreenSpec parse_screen(const std::string& text)
{
    const auto sep = text.find('x');
    if (sep == std::string::npos)
        throw DomainError("screen", "expected WxH, got '" + text + "'");
    return ScreenSpec(parse_positive(std::string_view(text).substr(0, sep), "screen"),
        parse_positive(std::string_view(text).substr(sep + 1), "screen"));
}

TargetSpec parse_target(const std::string& text, const ScreenSpec& screen)
{
    TargetSpec t;
    t.center = {screen.width() / 2.0, screen.height() / 2.0};
    const std::string_view v(text);
    if (v.rfind("circle:", 0) == 0) {
        t.shape = TargetShape::Circle;
        t.width = parse_positive(v.substr(7), "target");
    } else if (v.rfind("rect:", 0) == 0) {
        const auto dims = v.substr(5);
        const auto sep = dims.find('x');
        if (sep == std::string_view::npos)
            throw DomainError("target", "expected rect:WxH, got '" + text + "'");
        t.shape = TargetShape::Rectangle;
        t.width = parse_positive(dims.substr(0, sep), "target");
        t.height = parse_positive(dims.substr(sep + 1), "target");
    } else {
        throw DomainError("target", "expected circle:D or rect:WxH, got '" + text + "'");
    }
    validate_target(t, screen);
    return t;
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<stats::ResolutionPoint> parse_points_csv(const std::string& text, const std::string& name)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<stats::ResolutionPoint> points;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        if (lineno == 1 && line.rfind("resolution", 0) == 0)
            continue;
        const auto comma = line.find(',');
        const auto where = name + ":" + std::to_string(lineno);
        if (comma == std::string::npos)
            throw DomainError("resolution", where + ": expected 'WxH,espim'");
        const auto res = stats::parse_resolution(trim(line.substr(0, comma)));
        if (!res)
            throw DomainError("resolution", where + ": bad resolution '" + line.substr(0, comma) + "'");
        const auto value_text = trim(line.substr(comma + 1));
        double value = 0.0;
        auto [p, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc() || p != value_text.data() + value_text.size() || !std::isfinite(value))
            throw DomainError("espim", where + ": bad value '" + value_text + "'");
        points.push_back({*res, value});
    }
    return points;
}

std::atomic<bool> g_stop_requested{false};

extern "C" void on_stop_signal(int)
{
    g_stop_requested.store(true);
}

} // namespace

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& paths)
{
    std::vector<fs::path> out;
    for (const auto& p : paths) {
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<fs::path> entries;
            for (const auto& e : fs::directory_iterator(p, ec)) {
                if (e.path().extension() == ".json" && e.is_regular_file())
                    entries.push_back(e.path());
            }
            if (ec)
                throw io::IoError("cannot list " + p.string() + ": " + ec.message());
            std::sort(entries.begin(), entries.end());
            out.insert(out.end(), entries.begin(), entries.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

int cmd_validate(const std::vector<fs::path>& paths, std::ostream& out, std::ostream& err)
{
    int worst = kExitOk;
    for (const auto& path : paths) {
        const auto name = path.string();
        std::string bytes;
        try {
            bytes = io::read_file(path);
        } catch (const io::IoError& e) {
            err << name << ": " << e.what() << '\n';
            worst = std::max<int>(worst, kExitIo);
            continue;
        }
        try {
            const auto log = parse_session(bytes);
            out << name << ": ok (" << log.session_id << ", " << log.trials.size() << " trials, " << log.gaze.size()
                << " gaze samples)\n";
        } catch (const SessionError& e) {
            print_violations(err, name, e.violations());
            // Truncated or otherwise unparsable files are treated like read failures.
            worst = std::max<int>(worst, e.kind() == SessionError::Kind::Syntax ? kExitIo : kExitInvalid);
        }
    }
    return worst;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto loaded = load(args.inputs, args.options, err);
        const auto rep = report::build_report(loaded, args.options);
        report::write_report(rep, args.out_dir);
        out << "analyzed " << loaded.sessions.size() << " session(s)";
        if (!loaded.skipped.empty())
            out << ", skipped " << loaded.skipped.size();
        out << "; report written to " << args.out_dir.string() << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_estimate(const std::vector<DesignArgs>& designs, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (designs.empty())
            throw EmptyInputError("no design given");
        std::vector<EspimInterval> results;
        for (std::size_t i = 0; i < designs.size(); ++i) {
            const auto& d = designs[i];
            const ScreenSpec screen = parse_screen(d.screen);
            const TargetSpec target = parse_target(d.target, screen);
            const double w = d.width.value_or(target.width);
            if (!(d.td_s > 0.0))
                throw DomainError("td", "task duration must be > 0 s");
            const Seconds td(d.td_s);
            const std::vector<TargetSpec> targets{target};
            EspimInputs in = make_inputs(screen, targets, d.distance, 0.0, td);
            in.width = w;
            const auto anf = estimate_anf(td);
            const auto score = espim_estimated(in, td);
            results.push_back(score);

            out << "design " << i + 1 << ": screen " << d.screen << ", target " << d.target << ", d "
                << report::format_number(d.distance) << " px, w " << report::format_number(w) << " px, td "
                << report::format_number(d.td_s) << " s\n";
            out << "  anf    low " << report::format_number(anf.low) << "  mid " << report::format_number(anf.mid)
                << "  high " << report::format_number(anf.high) << '\n';
            out << "  espim  low " << report::format_number(score.low.value) << "  mid "
                << report::format_number(score.mid.value) << "  high " << report::format_number(score.high.value)
                << '\n';
        }
        if (results.size() > 1) {
            std::vector<std::size_t> order(results.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return results[a].mid.value < results[b].mid.value; });
            out << "ordering by mid estimate (lower strain first):";
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i > 0)
                    out << (results[order[i]].mid.value == results[order[i - 1]].mid.value ? " =" : " <");
                out << " design " << order[i] + 1;
            }
            out << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_cluster(const ClusterArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        report::AnalyzeOptions options;
        options.metrics.fixation = args.fixation;
        options.skip_invalid = args.skip_invalid;
        const auto loaded = load(args.inputs, options, err);
        std::vector<std::pair<std::string, cluster::RegionSummary>> groups;
        groups.emplace_back("all", report::cluster_sessions(loaded.sessions, args.k, args.seed));
        const auto table = report::clusters_csv(groups);
        if (args.out_dir) {
            fs::create_directories(*args.out_dir);
            io::write_file_atomic(*args.out_dir / "clusters.csv", table);
            io::write_file_atomic(*args.out_dir / "quadrants.csv", report::quadrants_csv(groups));
            io::write_file_atomic(*args.out_dir / "cluster_scatter.csv", report::scatter_csv(groups));
        }
        out << table;
        return static_cast<int>(kExitOk);
    });
}

int cmd_resolution_diff(const ResolutionDiffArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        std::vector<stats::ResolutionPoint> points;
        const auto files = expand_inputs(args.inputs);
        const bool csv_input = !files.empty()
            && std::all_of(files.begin(), files.end(), [](const fs::path& p) { return p.extension() == ".csv"; });
        if (csv_input) {
            for (const auto& f : files) {
                auto more = parse_points_csv(io::read_file(f), f.filename().string());
                points.insert(points.end(), more.begin(), more.end());
            }
        } else {
            report::AnalyzeOptions options;
            options.metrics.fixation = args.fixation;
            options.skip_invalid = args.skip_invalid;
            const auto loaded = load(args.inputs, options, err);
            std::map<std::pair<long long, std::pair<int, int>>, std::pair<double, int>> acc;
            for (const auto& s : loaded.sessions) {
                const stats::Resolution r{static_cast<int>(std::lround(s.log.screen.width())),
                    static_cast<int>(std::lround(s.log.screen.height()))};
                auto& slot = acc[{r.pixels(), {r.width, r.height}}];
                slot.first += s.metrics.espim.value;
                ++slot.second;
            }
            for (const auto& [key, v] : acc)
                points.push_back({{key.second.first, key.second.second}, v.first / v.second});
        }
        const auto table = stats::resolution_diff(points);
        std::ostringstream csv;
        csv << "resolution,pixels,espim,diff\n";
        for (const auto& row : table.rows) {
            csv << row.resolution.label() << ',' << row.resolution.pixels() << ',' << report::format_number(row.value)
                << ',' << report::format_number(row.diff) << '\n';
        }
        csv << "total,,," << report::format_number(table.total) << '\n';
        if (args.out_file)
            io::write_file_atomic(*args.out_file, csv.str());
        out << csv.str();
        return static_cast<int>(kExitOk);
    });
}

int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto [host, port] = collector::parse_bind(args.bind);
        collector::Server server(args.config);
        const int bound = server.bind(host, port);
        out << "collecting into " << args.config.out_dir.string() << " on " << host << ':' << bound
            << (args.config.token.empty() ? " (no token)" : " (bearer token required)") << std::endl;

        g_stop_requested.store(false);
        std::signal(SIGINT, on_stop_signal);
        std::signal(SIGTERM, on_stop_signal);
        std::thread worker([&server] { server.run(); });
        while (!g_stop_requested.load())
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
        worker.join();
        std::signal(SIGINT, SIG_DFL);
        std::signal(SIGTERM, SIG_DFL);
        out << "stopped" << std::endl;
        return static_cast<int>(kExitOk);
    });
}

int cmd_fixations(const fs::path& gaze_csv, const FixationParams& params, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto samples = parse_gaze_csv(io::read_file(gaze_csv));
        out << "onset_ms,duration_ms,x,y,samples\n";
        for (const auto& f : detect_fixations(samples, params)) {
            out << report::format_number(f.onset_ms) << ',' << report::format_number(f.duration_ms) << ','
                << report::format_number(f.centroid.x) << ',' << report::format_number(f.centroid.y) << ','
                << f.sample_count << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

} // namespace espim::cli
