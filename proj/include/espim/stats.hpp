#pragma once

// Descriptive statistics, paired t-tests, Pearson correlation and the group
// constructions used by the analyses.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "espim/error.hpp"
#include "espim/session.hpp"

namespace espim::stats {

struct Descriptives {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0; // sample (n - 1); 0 when n == 1
    double iqr = 0.0;
    double range = 0.0;
    double min = 0.0;
    double max = 0.0;
    bool sd_defined = true; // false for n == 1
};

/// Quantiles use linear interpolation between order statistics
/// (h = (n - 1) p). Throws EmptyInputError on empty input.
Descriptives descriptives(std::span<const double> xs);

/// Linear-interpolation quantile of already sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

struct PairedTTestResult {
    double t = 0.0;
    int df = 0;
    double p = 1.0; // two-tailed
    double mean_difference = 0.0;
};

/// Paired-sample t-test on d = x - y. Throws InsufficientDataError for n < 2,
/// ZeroVarianceError when all differences are equal and LengthMismatchError
/// for unequal lengths.
PairedTTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys);

struct CorrelationResult {
    double r = 0.0;
    double p = 1.0;
    std::size_t n = 0;
};

/// Pearson product-moment correlation with a two-tailed p-value from
/// t = r sqrt((n - 2) / (1 - r^2)). Throws InsufficientDataError for n < 3
/// and UndefinedCorrelationError when either input is constant.
CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys);

/// I_x(a, b), evaluated with a modified-Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-tailed P(|T| >= |t|) for Student's t with `df` degrees of freedom.
/// Results are kept strictly positive (underflow maps to the smallest normal
/// double).
double student_t_two_tailed(double t, double df);

// Groups.

enum class Schedule { NineToFive, Flexible };

const char* to_string(Schedule s) noexcept;

/// NineToFive iff the local wall-clock time is in [09:00, 17:00).
Schedule classify_schedule(const WallClock& started_at) noexcept;

template <typename T>
struct Partition {
    std::vector<T> first;
    std::vector<T> second;
};

/// Splits items by start time: `first` is NineToFive, `second` Flexible.
/// `time_of` returns std::optional<WallClock>; a missing value throws
/// MissingKeyError.
template <typename T, typename TimeOf>
Partition<T> split_by_schedule(std::span<const T> items, TimeOf time_of)
{
    Partition<T> out;
    for (const auto& item : items) {
        const std::optional<WallClock> when = std::invoke(time_of, item);
        if (!when)
            throw MissingKeyError("split_by_schedule: item has no start timestamp");
        (classify_schedule(*when) == Schedule::NineToFive ? out.first : out.second).push_back(item);
    }
    return out;
}

/// value < threshold goes to `first` (low), value >= threshold to `second`
/// (high). `key_of` returns std::optional<double>; a missing value throws
/// MissingKeyError.
template <typename T, typename KeyOf>
Partition<T> split_by_threshold(std::span<const T> items, KeyOf key_of, double threshold)
{
    Partition<T> out;
    for (const auto& item : items) {
        const std::optional<double> v = std::invoke(key_of, item);
        if (!v)
            throw MissingKeyError("split_by_threshold: item lacks the rating key");
        (*v < threshold ? out.first : out.second).push_back(item);
    }
    return out;
}

/// Pairs two groups by an explicit key. Values sharing a key inside one
/// group are averaged; only keys present in both groups are kept, in key
/// order. Nothing is paired by position.
struct PairedSamples {
    std::vector<std::string> keys;
    std::vector<double> first;
    std::vector<double> second;
};

PairedSamples pair_by_key(std::span<const std::pair<std::string, double>> first,
    std::span<const std::pair<std::string, double>> second);

// Resolution differences.

struct Resolution {
    int width = 0;
    int height = 0;

    long long pixels() const noexcept { return static_cast<long long>(width) * height; }
    std::string label() const;
    bool operator==(const Resolution&) const = default;
};

/// Parses "1920x1080".
std::optional<Resolution> parse_resolution(std::string_view text);

struct ResolutionPoint {
    Resolution resolution;
    double value = 0.0; // ESPiM, bits
};

struct ResolutionDiffRow {
    Resolution resolution;
    double value = 0.0;
    double diff = 0.0; // P_n - P_{n-1}, P_0 = 0
};

struct ResolutionDiffTable {
    std::vector<ResolutionDiffRow> rows;
    double total = 0.0;
};

/// Points must be strictly increasing by pixel count; otherwise throws
/// OrderingError. Throws EmptyInputError on empty input.
ResolutionDiffTable resolution_diff(std::span<const ResolutionPoint> points);

// Symptom tallies.

struct SymptomTally {
    std::map<std::string, int> counts; // sessions reporting each tag
    int total = 0;                     // sum of counts
    int sessions = 0;
};

/// `groups` maps a group label to the symptom lists of its sessions.
std::map<std::string, SymptomTally> symptom_tally(
    const std::map<std::string, std::vector<std::vector<std::string>>>& groups);

} // namespace espim::stats
