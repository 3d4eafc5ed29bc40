#include "espim/stats.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <set>

namespace espim::stats {

namespace {

double mean_of(std::span<const double> xs)
{
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x)
{
    constexpr int kMaxIterations = 1000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny)
        d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    return h;
}

} // namespace

double quantile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw EmptyInputError("quantile of empty data");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Descriptives descriptives(std::span<const double> xs)
{
    if (xs.empty())
        throw EmptyInputError("descriptives of empty data");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());

    Descriptives d;
    d.n = sorted.size();
    d.mean = mean_of(sorted);
    d.median = quantile_sorted(sorted, 0.5);
    d.iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    d.min = sorted.front();
    d.max = sorted.back();
    d.range = d.max - d.min;
    if (d.n == 1) {
        d.sd = 0.0;
        d.sd_defined = false;
    } else {
        double ss = 0.0;
        for (double x : sorted)
            ss += (x - d.mean) * (x - d.mean);
        d.sd = std::sqrt(ss / static_cast<double>(d.n - 1));
    }
    return d;
}

double regularized_incomplete_beta(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("a,b", "incomplete beta parameters must be > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("x", "incomplete beta argument must be in [0, 1]");
    if (x == 0.0 || x == 1.0)
        return x;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double df)
{
    if (!(df > 0.0))
        throw DomainError("df", "must be > 0");
    if (std::isnan(t))
        throw DomainError("t", "must not be NaN");
    if (std::isinf(t))
        return std::numeric_limits<double>::min();
    const double x = df / (df + t * t);
    const double p = regularized_incomplete_beta(df / 2.0, 0.5, x);
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

PairedTTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw LengthMismatchError("paired_t_test: inputs differ in length");
    const std::size_t n = xs.size();
    if (n < 2)
        throw InsufficientDataError("paired_t_test: at least two pairs are required");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = xs[i] - ys[i];
    const double md = mean_of(d);
    double ss = 0.0;
    for (double v : d)
        ss += (v - md) * (v - md);
    const bool constant = std::all_of(d.begin(), d.end(), [&](double v) { return v == d.front(); });
    if (constant || !(ss > 0.0))
        throw ZeroVarianceError("paired_t_test: differences have zero variance");

    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    PairedTTestResult r;
    r.mean_difference = md;
    r.t = md / (sd / std::sqrt(static_cast<double>(n)));
    r.df = static_cast<int>(n - 1);
    r.p = student_t_two_tailed(r.t, r.df);
    return r;
}

CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw LengthMismatchError("pearson: inputs differ in length");
    const std::size_t n = xs.size();
    if (n < 3)
        throw InsufficientDataError("pearson: at least three pairs are required");

    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const auto is_constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (is_constant(xs) || is_constant(ys) || !(sxx > 0.0) || !(syy > 0.0))
        throw UndefinedCorrelationError("pearson: correlation with a constant variable is undefined");

    CorrelationResult c;
    c.n = n;
    c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    const double one_minus = 1.0 - c.r * c.r;
    if (one_minus <= 0.0) {
        c.p = std::numeric_limits<double>::min();
    } else {
        c.p = student_t_two_tailed(c.r * std::sqrt(df / one_minus), df);
    }
    return c;
}

const char* to_string(Schedule s) noexcept
{
    return s == Schedule::NineToFive ? "nine_to_five" : "flexible";
}

Schedule classify_schedule(const WallClock& started_at) noexcept
{
    constexpr int kStart = 9 * 60;
    constexpr int kEnd = 17 * 60;
    return started_at.minute_of_day >= kStart && started_at.minute_of_day < kEnd ? Schedule::NineToFive
                                                                                 : Schedule::Flexible;
}

PairedSamples pair_by_key(std::span<const std::pair<std::string, double>> first,
    std::span<const std::pair<std::string, double>> second)
{
    const auto average = [](std::span<const std::pair<std::string, double>> g) {
        std::map<std::string, std::pair<double, int>> acc;
        for (const auto& [k, v] : g) {
            auto& slot = acc[k];
            slot.first += v;
            ++slot.second;
        }
        std::map<std::string, double> out;
        for (const auto& [k, s] : acc)
            out[k] = s.first / s.second;
        return out;
    };
    const auto a = average(first);
    const auto b = average(second);
    PairedSamples out;
    for (const auto& [k, v] : a) {
        if (auto it = b.find(k); it != b.end()) {
            out.keys.push_back(k);
            out.first.push_back(v);
            out.second.push_back(it->second);
        }
    }
    return out;
}

std::string Resolution::label() const
{
    return std::to_string(width) + "x" + std::to_string(height);
}

std::optional<Resolution> parse_resolution(std::string_view text)
{
    const auto sep = text.find('x');
    if (sep == std::string_view::npos)
        return std::nullopt;
    Resolution r;
    const auto parse = [](std::string_view s, int& v) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc() && p == s.data() + s.size() && v > 0;
    };
    if (!parse(text.substr(0, sep), r.width) || !parse(text.substr(sep + 1), r.height))
        return std::nullopt;
    return r;
}

ResolutionDiffTable resolution_diff(std::span<const ResolutionPoint> points)
{
    if (points.empty())
        throw EmptyInputError("resolution_diff: no points");
    ResolutionDiffTable table;
    double previous = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && points[i].resolution.pixels() <= points[i - 1].resolution.pixels())
            throw OrderingError("resolution_diff: " + points[i].resolution.label()
                + " does not increase the pixel count over " + points[i - 1].resolution.label());
        const double diff = points[i].value - previous;
        table.rows.push_back({points[i].resolution, points[i].value, diff});
        table.total += diff;
        previous = points[i].value;
    }
    return table;
}

std::map<std::string, SymptomTally> symptom_tally(
    const std::map<std::string, std::vector<std::vector<std::string>>>& groups)
{
    std::map<std::string, SymptomTally> out;
    for (const auto& [label, sessions] : groups) {
        SymptomTally& t = out[label];
        for (const auto& tags : sessions) {
            ++t.sessions;
            const std::set<std::string> unique(tags.begin(), tags.end());
            for (const auto& tag : unique) {
                ++t.counts[tag];
                ++t.total;
            }
        }
    }
    return out;
}

} // namespace espim::stats
