#include "actimetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

constexpr std::array<std::string_view, 7> kMetricNames = {"PIM", "ZCM", "TAT", "MAD",
                                                          "ENMO", "HFEN", "AI"};

constexpr std::string_view kGravityOnAxis =
    "gravity projects onto a raw axis by an unknown orientation-dependent amount";
constexpr std::string_view kSignedIntegral =
    "integrand oscillates around 0 g; integrate absolute values";
constexpr std::string_view kGravityInMagnitude =
    "subtract the integral of 1 g over the epoch and take the absolute value";
constexpr std::string_view kEnmoNeedsGravity =
    "ENMO removes gravity itself and needs the raw magnitude (UFM)";
constexpr std::string_view kHfenSpecial = "HFEN needs its own high-passed magnitude dataset";
constexpr std::string_view kAiNeedsAxes = "AI needs the three axes separately (UFXYZ or FXYZ)";
constexpr std::string_view kOnlyHfen = "this dataset is reserved for HFEN";
constexpr std::string_view kDirect = "directly applicable";

void require_kind(const Epoch& epoch, DatasetKind kind, MetricId metric) {
    if (epoch.kind != kind || epoch.squared) {
        std::ostringstream os;
        os << to_string(metric) << " is inapplicable on " << series_label(epoch.kind, epoch.squared)
           << ": " << applicability(metric, epoch.kind).reason;
        throw InapplicableMetric(os.str());
    }
}

double simpson38_integral(std::span<const double> v, double ts) {
    const std::size_t intervals = v.size() - 1;
    const std::size_t body = intervals - intervals % 3;
    double sum = 0.0;
    for (std::size_t i = 0; i < body; i += 3) {
        sum += 3.0 * ts / 8.0 * (v[i] + 3.0 * v[i + 1] + 3.0 * v[i + 2] + v[i + 3]);
    }
    for (std::size_t i = body; i < intervals; ++i) {
        sum += ts / 2.0 * (v[i] + v[i + 1]);
    }
    return sum;
}

double integrate(std::span<const double> v, double ts, IntegrationMethod method) {
    if (v.empty()) return 0.0;
    if (method == IntegrationMethod::RiemannSum || v.size() < 2) {
        return ts * std::accumulate(v.begin(), v.end(), 0.0);
    }
    const auto n = static_cast<double>(v.size());
    return simpson38_integral(v, ts) * n / (n - 1.0);
}

}  // namespace

std::string_view to_string(MetricId metric) noexcept {
    return kMetricNames[static_cast<std::size_t>(metric)];
}

std::optional<MetricId> parse_metric(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        if (kMetricNames[i] == name) return static_cast<MetricId>(i);
    }
    return std::nullopt;
}

ThresholdPolicy ThresholdPolicy::fixed(double value_g) {
    if (!(value_g >= 0.0) || !std::isfinite(value_g)) {
        throw ConfigError("fixed threshold must be a finite value >= 0 g");
    }
    return ThresholdPolicy{Mode::Fixed, value_g};
}

ApplicabilityCell applicability(MetricId metric, DatasetKind kind) noexcept {
    using A = Applicability;
    const bool special = kind == DatasetKind::HfenSpecial;
    switch (metric) {
        case MetricId::PIM:
            if (special) return {A::Inapplicable, kOnlyHfen};
            if (is_unfiltered_axis(kind)) return {A::Inapplicable, kGravityOnAxis};
            if (is_filtered_axis(kind) || kind == DatasetKind::FMpost) return {A::Corrected, kSignedIntegral};
            if (kind == DatasetKind::UFM) return {A::Corrected, kGravityInMagnitude};
            return {A::Direct, kDirect};
        case MetricId::ZCM:
        case MetricId::TAT:
            if (special) return {A::Inapplicable, kOnlyHfen};
            if (is_unfiltered_axis(kind)) return {A::Inapplicable, kGravityOnAxis};
            return {A::Direct, kDirect};
        case MetricId::MAD:
            if (special) return {A::Inapplicable, kOnlyHfen};
            return {A::Direct, kDirect};
        case MetricId::ENMO:
            if (kind == DatasetKind::UFM) return {A::Direct, kDirect};
            return {A::Inapplicable, kEnmoNeedsGravity};
        case MetricId::HFEN:
            if (special) return {A::Direct, kDirect};
            return {A::RequiresSpecialDataset, kHfenSpecial};
        case MetricId::AI:
            if (is_axis(kind)) return {A::Direct, kDirect};
            return {A::Inapplicable, kAiNeedsAxes};
    }
    return {A::Inapplicable, "unknown metric"};
}

void require_applicable(MetricId metric, DatasetKind kind) {
    const auto cell = applicability(metric, kind);
    if (!cell.usable()) {
        std::ostringstream os;
        os << to_string(metric) << " is inapplicable on " << to_string(kind) << ": " << cell.reason;
        throw InapplicableMetric(os.str());
    }
}

double pim(const Epoch& epoch, IntegrationMethod method) {
    return integrate(epoch.values, epoch.ts, method);
}

double pim_corrected(const Epoch& epoch, IntegrationMethod method) {
    require_applicable(MetricId::PIM, epoch.kind);
    if (epoch.squared) return pim(epoch, method);
    switch (epoch.kind) {
        case DatasetKind::UFNM:
        case DatasetKind::FMpre:
            return pim(epoch, method);
        case DatasetKind::UFM: {
            const double gravity_integral = static_cast<double>(epoch.size()) * epoch.ts * kGravity;
            return std::abs(pim(epoch, method) - gravity_integral);
        }
        default: {
            std::vector<double> rectified(epoch.values.begin(), epoch.values.end());
            for (double& v : rectified) v = std::abs(v);
            return integrate(rectified, epoch.ts, method);
        }
    }
}

std::size_t zcm(std::span<const double> values, double threshold) {
    std::size_t crossings = 0;
    int side = 0;  // side of the most recent off-threshold sample
    for (const double v : values) {
        const int s = v > threshold ? 1 : (v < threshold ? -1 : 0);
        if (s == 0) continue;
        if (side != 0 && s != side) ++crossings;
        side = s;
    }
    return crossings;
}

std::size_t zcm(const Epoch& epoch, double threshold) { return zcm(epoch.values, threshold); }

std::size_t tat_samples(std::span<const double> values, double threshold) {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [threshold](double v) { return v > threshold; }));
}

double tat(const Epoch& epoch, double threshold) {
    return epoch.ts * static_cast<double>(tat_samples(epoch.values, threshold));
}

double mean(std::span<const double> values) {
    if (values.empty()) throw EmptySeries("mean of an empty sequence");
    const double origin = values.front();
    double acc = 0.0;
    for (const double v : values) acc += v - origin;
    return origin + acc / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
    const double m = mean(values);
    double acc = 0.0;
    for (const double v : values) acc += (v - m) * (v - m);
    return acc / static_cast<double>(values.size());
}

double mad(std::span<const double> values) {
    const double m = mean(values);
    double acc = 0.0;
    for (const double v : values) acc += std::abs(v - m);
    return acc / static_cast<double>(values.size());
}

double mad(const Epoch& epoch) { return mad(epoch.values); }

double enmo(const Epoch& epoch) {
    require_kind(epoch, DatasetKind::UFM, MetricId::ENMO);
    double acc = 0.0;
    for (const double r : epoch.values) acc += std::max(r - kGravity, 0.0);
    return acc / static_cast<double>(epoch.size());
}

double hfen(const Epoch& epoch) {
    require_kind(epoch, DatasetKind::HfenSpecial, MetricId::HFEN);
    return mean(epoch.values);
}

NoiseVarianceEstimate estimate_noise_variance(std::span<const double> x, std::span<const double> y,
                                              std::span<const double> z, double sample_rate_hz,
                                              double window_s) {
    if (x.size() != y.size() || x.size() != z.size()) {
        throw LengthMismatch("noise variance estimation needs equal-length axes");
    }
    const std::size_t window = samples_per_epoch(window_s, sample_rate_hz);
    const std::size_t count = x.size() / window;
    if (count == 0) {
        throw RecordingTooShort("recording of " + std::to_string(x.size()) +
                                " samples is shorter than the noise window of " +
                                std::to_string(window));
    }
    NoiseVarianceEstimate best;
    best.window_length_s = window_s;
    best.sigma_bar_sq = std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t off = w * window;
        const double sum = population_variance(x.subspan(off, window)) +
                           population_variance(y.subspan(off, window)) +
                           population_variance(z.subspan(off, window));
        if (sum < best.sigma_bar_sq) {
            best.sigma_bar_sq = sum;
            best.source_window_index = w;
        }
    }
    return best;
}

NoiseVarianceEstimate estimate_noise_variance(const RawRecording& rec, double window_s) {
    return estimate_noise_variance(rec.x, rec.y, rec.z, rec.sample_rate_hz, window_s);
}

double ai(const Epoch& epoch_x, const Epoch& epoch_y, const Epoch& epoch_z,
          const NoiseVarianceEstimate& noise, AiFormula formula) {
    const bool unfiltered = epoch_x.kind == DatasetKind::UFX && epoch_y.kind == DatasetKind::UFY &&
                            epoch_z.kind == DatasetKind::UFZ;
    const bool filtered = epoch_x.kind == DatasetKind::FX && epoch_y.kind == DatasetKind::FY &&
                          epoch_z.kind == DatasetKind::FZ;
    if (!(unfiltered || filtered) || epoch_x.squared || epoch_y.squared || epoch_z.squared) {
        throw InapplicableMetric(std::string("AI is inapplicable on ") +
                                 series_label(epoch_x.kind, epoch_x.squared) + ": " +
                                 std::string(kAiNeedsAxes));
    }
    if (epoch_x.size() != epoch_y.size() || epoch_x.size() != epoch_z.size()) {
        throw LengthMismatch("AI epochs must have equal length");
    }
    const double total = population_variance(epoch_x.values) + population_variance(epoch_y.values) +
                         population_variance(epoch_z.values);
    const double inner = formula == AiFormula::Typeset ? (total - noise.sigma_bar_sq) / 3.0
                                                       : (total - 3.0 * noise.sigma_bar_sq) / 3.0;
    return std::sqrt(std::max(inner, 0.0));
}

double sd_threshold(const PreprocessedSeries& series) {
    if (series.values.empty()) throw EmptySeries("SD threshold of an empty series");
    const double sd = std::sqrt(population_variance(series.values));
    return series.kind == DatasetKind::UFM && !series.squared ? sd + kGravity : sd;
}

double resolve_threshold(const ThresholdPolicy& policy, const PreprocessedSeries& series) {
    if (policy.mode == ThresholdPolicy::Mode::Fixed) return policy.fixed_value;
    return sd_threshold(series);
}

}  // namespace actimetrics
