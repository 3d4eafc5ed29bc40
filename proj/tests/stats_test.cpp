#include <cmath>
#include <random>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "espim/error.hpp"
#include "espim/stats.hpp"

using namespace espim;
using namespace espim::stats;

namespace {

// Reference values from tests/oracle/stats_oracle.py (scipy).
const std::vector<double> kX = {47.888, 44.823, 51.496, 32.101, 52.845, 46.783, 42.739, 50.985, 30.485, 48.416,
    42.687, 54.097, 54.424, 40.721, 40.668, 35.3, 42.123, 53.194, 58.573, 52.288};
const std::vector<double> kY = {28.942, 21.689, 32.072, 14.366, 33.145, 26.854, 30.78, 31.806, 26.504, 26.6,
    30.148, 33.809, 42.834, 12.66, 29.646, 15.038, 20.062, 31.806, 26.08, 24.205};

WallClock at(int hh, int mm)
{
    WallClock w;
    w.minute_of_day = hh * 60 + mm;
    return w;
}

} // namespace

TEST(Descriptives, SmallSample)
{
    const std::vector<double> xs{4, 1, 3, 2};
    const auto d = descriptives(xs);
    EXPECT_EQ(d.n, 4u);
    EXPECT_DOUBLE_EQ(d.mean, 2.5);
    EXPECT_DOUBLE_EQ(d.median, 2.5);
    EXPECT_NEAR(d.sd, 1.2909944487358056, 1e-15);
    EXPECT_DOUBLE_EQ(d.iqr, 1.5);
    EXPECT_DOUBLE_EQ(d.range, 3.0);
    EXPECT_TRUE(d.sd_defined);
}

TEST(Descriptives, SingleValueAndEmpty)
{
    const std::vector<double> one{7};
    const auto d = descriptives(one);
    EXPECT_FALSE(d.sd_defined);
    EXPECT_EQ(d.sd, 0.0);
    EXPECT_EQ(d.iqr, 0.0);
    EXPECT_THROW(descriptives({}), EmptyInputError);
}

TEST(Descriptives, LinearInterpolationQuantiles)
{
    const std::vector<double> s{10, 20, 30, 40, 50};
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.0), 10);
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.1), 14);
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.25), 20);
    EXPECT_DOUBLE_EQ(quantile_sorted(s, 1.0), 50);
}

TEST(PairedT, HandCase)
{
    const std::vector<double> d{1, 2, 3};
    const std::vector<double> z{0, 0, 0};
    const auto r = paired_t_test(d, z);
    EXPECT_NEAR(r.t, 3.464101615137755, 1e-12);
    EXPECT_EQ(r.df, 2);
    EXPECT_NEAR(r.p, 0.07417990022744853, 1e-12);
    EXPECT_DOUBLE_EQ(r.mean_difference, 2.0);
}

TEST(PairedT, ScipyFixture)
{
    const auto r = paired_t_test(kX, kY);
    EXPECT_NEAR(r.t, 12.993305917409257, 1e-9);
    EXPECT_EQ(r.df, 19);
    EXPECT_NEAR(r.p, 6.686357120683535e-11, 1e-16);
}

TEST(PairedT, Errors)
{
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{1, 2};
    const std::vector<double> shifted{2, 3, 4};
    EXPECT_THROW(paired_t_test(a, b), LengthMismatchError);
    EXPECT_THROW(paired_t_test(std::vector<double>{1}, std::vector<double>{2}), InsufficientDataError);
    EXPECT_THROW(paired_t_test(a, shifted), ZeroVarianceError);
}

TEST(Pearson, ScipyFixture)
{
    const auto c = pearson(kX, kY);
    EXPECT_NEAR(c.r, 0.6201520578056932, 1e-12);
    EXPECT_NEAR(c.p, 0.003534220208467675, 1e-10);
    EXPECT_EQ(c.n, 20u);
}

TEST(Pearson, PerfectAndUndefined)
{
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{2, 4, 6, 8};
    const std::vector<double> flat{5, 5, 5, 5};
    const auto c = pearson(x, y);
    EXPECT_DOUBLE_EQ(c.r, 1.0);
    EXPECT_GT(c.p, 0.0);
    EXPECT_LT(c.p, 1e-300);
    EXPECT_THROW(pearson(x, flat), UndefinedCorrelationError);
    EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{2, 1}), InsufficientDataError);
}

TEST(Pearson, RecoversSyntheticCorrelation)
{
    std::mt19937_64 rng(80);
    std::normal_distribution<double> z(0.0, 1.0);
    const double rho = 0.8;
    std::vector<double> x(200), y(200);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = z(rng);
        y[i] = rho * x[i] + std::sqrt(1 - rho * rho) * z(rng);
    }
    EXPECT_NEAR(pearson(x, y).r, rho, 0.05);
}

TEST(IncompleteBeta, AgreesWithBoost)
{
    for (double a : {0.5, 1.0, 2.5, 10.0, 60.0}) {
        for (double b : {0.5, 1.0, 3.0, 25.0}) {
            for (double x : {0.0, 1e-6, 0.1, 0.35, 0.5, 0.9, 0.999, 1.0}) {
                EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-13)
                    << a << ' ' << b << ' ' << x;
            }
        }
    }
    EXPECT_THROW(regularized_incomplete_beta(0, 1, 0.5), DomainError);
    EXPECT_THROW(regularized_incomplete_beta(1, 1, 1.5), DomainError);
}

TEST(StudentT, TwoTailedAgreesWithBoost)
{
    for (double df : {1.0, 2.0, 5.0, 19.0, 100.0}) {
        const boost::math::students_t dist(df);
        for (double t : {0.0, 0.3, -1.0, 2.0, 4.5, -12.0}) {
            const double want = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
            EXPECT_NEAR(student_t_two_tailed(t, df), want, 1e-12 * std::max(1.0, want)) << df << ' ' << t;
        }
    }
    EXPECT_DOUBLE_EQ(student_t_two_tailed(0.0, 3.0), 1.0);
    EXPECT_GT(student_t_two_tailed(1e10, 3.0), 0.0);
}

TEST(Schedule, HalfOpenWorkingHours)
{
    EXPECT_EQ(classify_schedule(at(8, 59)), Schedule::Flexible);
    EXPECT_EQ(classify_schedule(at(9, 0)), Schedule::NineToFive);
    EXPECT_EQ(classify_schedule(at(16, 59)), Schedule::NineToFive);
    EXPECT_EQ(classify_schedule(at(17, 0)), Schedule::Flexible);
    EXPECT_EQ(classify_schedule(at(0, 0)), Schedule::Flexible);
}

TEST(Schedule, SplitAndMissingKey)
{
    const std::vector<int> items{0, 1, 2};
    const auto part = split_by_schedule<int>(items, [](int i) {
        return std::optional<WallClock>(at(i == 1 ? 20 : 10, 0));
    });
    EXPECT_EQ(part.first, (std::vector<int>{0, 2}));
    EXPECT_EQ(part.second, (std::vector<int>{1}));
    EXPECT_THROW(split_by_schedule<int>(items, [](int) { return std::optional<WallClock>(); }), MissingKeyError);
}

TEST(Threshold, BelowIsLow)
{
    const std::vector<double> ratings{1, 2, 2.5, 3, 5};
    const auto part = split_by_threshold<double>(ratings, [](double r) { return std::optional<double>(r); }, 2.5);
    EXPECT_EQ(part.first, (std::vector<double>{1, 2}));
    EXPECT_EQ(part.second, (std::vector<double>{2.5, 3, 5}));
    EXPECT_THROW(split_by_threshold<double>(ratings, [](double) { return std::optional<double>(); }, 2.5),
        MissingKeyError);
}

TEST(PairByKey, AveragesAndIntersects)
{
    const std::vector<std::pair<std::string, double>> a{{"p1", 1}, {"p1", 3}, {"p2", 5}, {"p3", 7}};
    const std::vector<std::pair<std::string, double>> b{{"p3", 1}, {"p1", 4}, {"p9", 0}};
    const auto p = pair_by_key(a, b);
    EXPECT_EQ(p.keys, (std::vector<std::string>{"p1", "p3"}));
    EXPECT_EQ(p.first, (std::vector<double>{2, 7}));
    EXPECT_EQ(p.second, (std::vector<double>{4, 1}));
}

TEST(ResolutionDiff, TelescopesAndOrders)
{
    const std::vector<ResolutionPoint> one{{{800, 600}, 5.0}};
    const auto t = resolution_diff(one);
    EXPECT_EQ(t.rows[0].diff, 5.0);
    EXPECT_EQ(t.total, 5.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> v(0, 60);
    std::vector<ResolutionPoint> series;
    for (int i = 1; i <= 9; ++i)
        series.push_back({{640 * i, 360 * i}, v(rng)});
    EXPECT_NEAR(resolution_diff(series).total, series.back().value, 1e-12);

    const std::vector<ResolutionPoint> unsorted{{{1920, 1080}, 1}, {{1280, 720}, 2}};
    EXPECT_THROW(resolution_diff(unsorted), OrderingError);
    const std::vector<ResolutionPoint> duplicate{{{1280, 720}, 1}, {{1280, 720}, 2}};
    EXPECT_THROW(resolution_diff(duplicate), OrderingError);
    EXPECT_THROW(resolution_diff({}), EmptyInputError);

    EXPECT_EQ(parse_resolution("1920x1080"), (Resolution{1920, 1080}));
    EXPECT_FALSE(parse_resolution("1920*1080"));
    EXPECT_FALSE(parse_resolution("0x10"));
}

TEST(SymptomTally, GroupTotals)
{
    // Flexible: 10 sessions reporting 29 symptoms; 9-to-5: 8 sessions reporting 15.
    const std::vector<std::string> tags{"tired eyes", "dry eyes", "headache", "blurred vision", "neck pain"};
    std::map<std::string, std::vector<std::vector<std::string>>> groups;
    const int flex_sizes[] = {3, 3, 3, 3, 3, 3, 3, 3, 3, 2};
    const int nine_sizes[] = {2, 2, 2, 2, 2, 2, 2, 1};
    for (int n : flex_sizes)
        groups["flexible"].emplace_back(tags.begin(), tags.begin() + n);
    for (int n : nine_sizes)
        groups["nine_to_five"].emplace_back(tags.begin() + 1, tags.begin() + 1 + n);
    const auto t = symptom_tally(groups);
    EXPECT_EQ(t.at("flexible").total, 29);
    EXPECT_EQ(t.at("nine_to_five").total, 15);
    EXPECT_EQ(t.at("flexible").counts.at("tired eyes"), 10);
    EXPECT_EQ(t.at("flexible").sessions, 10);
}

TEST(SymptomTally, EmptyAndSingle)
{
    std::map<std::string, std::vector<std::vector<std::string>>> none{{"a", {{}, {}}}};
    EXPECT_EQ(symptom_tally(none).at("a").total, 0);
    std::map<std::string, std::vector<std::vector<std::string>>> one{{"a", {{"tired eyes", "dry eyes"}}}};
    const auto t = symptom_tally(one).at("a");
    EXPECT_EQ(t.counts.at("tired eyes"), 1);
    EXPECT_EQ(t.counts.at("dry eyes"), 1);
    EXPECT_EQ(t.total, 2);
}
