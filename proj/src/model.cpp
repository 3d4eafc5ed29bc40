#include "espim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "espim/error.hpp"

namespace espim {

namespace {

bool positive_finite(double v) noexcept
{
    return std::isfinite(v) && v > 0.0;
}

// Name of the first field violating the model's domain, if any.
std::optional<const char*> invalid_field(const EspimInputs& in) noexcept
{
    if (!positive_finite(in.screen_area))
        return "aos";
    if (!positive_finite(in.target_area) || in.target_area > in.screen_area)
        return "aot";
    if (!positive_finite(in.distance) || (in.screen_diagonal > 0.0 && in.distance > in.screen_diagonal))
        return "d";
    if (!positive_finite(in.width) || (in.screen_width > 0.0 && in.width > in.screen_width))
        return "w";
    if (!positive_finite(in.fixations))
        return "anf";
    if (!positive_finite(in.duration.count()))
        return "td";
    return std::nullopt;
}

const char* describe(std::string_view field)
{
    if (field == "aot")
        return "must satisfy 0 < aot <= aos";
    if (field == "d")
        return "must satisfy 0 < d <= screen diagonal";
    if (field == "w")
        return "must satisfy 0 < w <= screen width";
    return "must be finite and > 0";
}

// log2(1 + d/w) without the cancellation of log2(1 + x) for small x.
double index_of_difficulty(double distance, double width) noexcept
{
    return std::log1p(distance / width) / std::numbers::ln2;
}

double evaluate(const EspimInputs& in) noexcept
{
    const double spatial = (in.screen_area / in.target_area) * index_of_difficulty(in.distance, in.width);
    return std::sqrt((spatial * in.fixations + 1.0) / (in.duration.count() + 1.0));
}

} // namespace

ScreenSpec::ScreenSpec(double width, double height)
    : width_(width), height_(height)
{
    if (!positive_finite(width))
        throw DomainError("screen.width", "must be finite and > 0");
    if (!positive_finite(height))
        throw DomainError("screen.height", "must be finite and > 0");
    diagonal_ = std::sqrt(width * width + height * height);
    area_ = width * height;
}

double TargetSpec::area() const noexcept
{
    if (shape == TargetShape::Circle) {
        const double r = width / 2.0;
        return std::numbers::pi * r * r;
    }
    return width * height;
}

bool TargetSpec::contains(Point p) const noexcept
{
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    if (shape == TargetShape::Circle) {
        const double r = width / 2.0;
        return dx * dx + dy * dy <= r * r;
    }
    return std::abs(dx) <= width / 2.0 && std::abs(dy) <= height / 2.0;
}

void validate_target(const TargetSpec& target, const ScreenSpec& screen)
{
    if (!positive_finite(target.width) || target.width > screen.width())
        throw DomainError("target.width", "must satisfy 0 < w <= screen width");
    if (target.shape == TargetShape::Rectangle && !positive_finite(target.height))
        throw DomainError("target.height", "must be finite and > 0");
    if (target.area() > screen.area())
        throw DomainError("target.area", "must not exceed the screen area");
}

EspimInputs make_inputs(const ScreenSpec& screen, std::span<const TargetSpec> targets,
    double distance, double fixations, Seconds duration)
{
    if (targets.empty())
        throw EmptyInputError("at least one target is required");
    double area_sum = 0.0;
    double width_sum = 0.0;
    for (const auto& t : targets) {
        validate_target(t, screen);
        area_sum += t.area();
        width_sum += t.width;
    }
    const auto n = static_cast<double>(targets.size());
    EspimInputs in;
    in.screen_area = screen.area();
    in.target_area = area_sum / n;
    in.distance = distance;
    in.width = width_sum / n;
    in.fixations = fixations;
    in.duration = duration;
    in.screen_diagonal = screen.diagonal();
    in.screen_width = screen.width();
    return in;
}

double shannon_id(double distance, double width)
{
    if (!positive_finite(distance))
        throw DomainError("d", "must be finite and > 0");
    if (!positive_finite(width))
        throw DomainError("w", "must be finite and > 0");
    return index_of_difficulty(distance, width);
}

double fitts_mt(const FittsFit& fit, double id)
{
    if (!(id > 0.0))
        throw DomainError("id", "must be > 0");
    return fit.a + fit.b * id;
}

FittsFit fit_fitts(std::span<const FittsTrial> trials)
{
    if (trials.size() < 2)
        throw DegenerateRegressionError("at least two trials are required");

    const auto n = static_cast<double>(trials.size());
    double mean_id = 0.0;
    double mean_mt = 0.0;
    for (const auto& t : trials) {
        mean_id += t.id;
        mean_mt += t.mt;
    }
    mean_id /= n;
    mean_mt /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& t : trials) {
        const double dx = t.id - mean_id;
        const double dy = t.mt - mean_mt;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw DegenerateRegressionError("at least two distinct index-of-difficulty values are required");

    FittsFit fit;
    fit.b = sxy / sxx;
    fit.a = mean_mt - fit.b * mean_id;
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double sse = 0.0;
        for (const auto& t : trials) {
            const double e = t.mt - (fit.a + fit.b * t.id);
            sse += e * e;
        }
        fit.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
    }
    return fit;
}

EspimScore espim(const EspimInputs& in)
{
    if (auto field = invalid_field(in))
        throw DomainError(*field, describe(*field));
    return EspimScore{evaluate(in)};
}

AnfInterval estimate_anf(Seconds duration)
{
    const double td = duration.count();
    if (!positive_finite(td))
        throw DomainError("td", "must be finite and > 0");
    const double ms = td * 1000.0;
    return AnfInterval{ms / 600.0, ms / 400.0, ms / 200.0};
}

EspimInterval espim_estimated(EspimInputs in, Seconds duration)
{
    const AnfInterval anf = estimate_anf(duration);
    in.duration = duration;
    EspimInterval out;
    in.fixations = anf.low;
    out.low = espim(in);
    in.fixations = anf.mid;
    out.mid = espim(in);
    in.fixations = anf.high;
    out.high = espim(in);
    return out;
}

void espim_batch(std::span<const EspimInputs> inputs, std::span<double> out)
{
    if (out.size() != inputs.size())
        throw LengthMismatchError("espim_batch: output span size differs from input size");
    const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& in = inputs[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] =
            invalid_field(in) ? std::numeric_limits<double>::quiet_NaN() : evaluate(in);
    }
}

void espim_batch_serial(std::span<const EspimInputs> inputs, std::span<double> out)
{
    if (out.size() != inputs.size())
        throw LengthMismatchError("espim_batch_serial: output span size differs from input size");
    for (std::size_t i = 0; i < inputs.size(); ++i)
        out[i] = invalid_field(inputs[i]) ? std::numeric_limits<double>::quiet_NaN() : evaluate(inputs[i]);
}

FqlsResult fqls(std::span<const Fixation> fixations, std::span<const Stimulus> stimuli)
{
    FqlsResult r;
    double sum = 0.0;
    for (const auto& f : fixations) {
        const Stimulus* match = nullptr;
        for (const auto& s : stimuli) {
            if (s.active.contains(f.onset_ms)) {
                match = &s;
                break;
            }
        }
        if (match == nullptr) {
            for (const auto& s : stimuli) {
                if (f.onset_ms <= s.active.end_ms && f.end_ms() >= s.active.begin_ms) {
                    match = &s;
                    break;
                }
            }
        }
        if (match == nullptr) {
            ++r.skipped;
            continue;
        }
        sum += distance(f.centroid, match->target.center);
        ++r.qualifying;
    }
    if (r.qualifying == 0)
        throw EmptyInputError("fqls: no fixation overlaps an active stimulus");
    r.mean_px = sum / static_cast<double>(r.qualifying);
    return r;
}

} // namespace espim
