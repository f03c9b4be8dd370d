#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "actimetrics/model.hpp"

namespace actimetrics {

enum class MetricId { PIM, ZCM, TAT, MAD, ENMO, HFEN, AI };

inline constexpr std::array<MetricId, 7> kAllMetrics = {
    MetricId::PIM, MetricId::ZCM, MetricId::TAT, MetricId::MAD,
    MetricId::ENMO, MetricId::HFEN, MetricId::AI,
};

std::string_view to_string(MetricId metric) noexcept;
std::optional<MetricId> parse_metric(std::string_view name) noexcept;

/// Metrics that can be applied to a single axis and combined across axes.
constexpr bool is_axial_metric(MetricId m) noexcept {
    return m == MetricId::PIM || m == MetricId::ZCM || m == MetricId::TAT || m == MetricId::MAD;
}

constexpr bool is_threshold_metric(MetricId m) noexcept {
    return m == MetricId::ZCM || m == MetricId::TAT;
}

enum class IntegrationMethod { RiemannSum, Simpson38 };

struct ThresholdPolicy {
    enum class Mode { AdaptiveSD, Fixed };
    Mode mode = Mode::AdaptiveSD;
    double fixed_value = 0.0;  // g, used when mode == Fixed

    static ThresholdPolicy adaptive() { return {}; }
    static ThresholdPolicy fixed(double value_g);
};

/// Which variant of the AI formula to evaluate. `Typeset` subtracts the noise variance
/// once from the axis-variance sum; `PerAxis` subtracts it from each axis.
enum class AiFormula { Typeset, PerAxis };

struct NoiseVarianceEstimate {
    double sigma_bar_sq = 0.0;  // g²
    double window_length_s = 60.0;
    std::size_t source_window_index = 0;
};

/// One cell of the metric x dataset applicability table.
enum class Applicability { Direct, Corrected, Inapplicable, RequiresSpecialDataset };

struct ApplicabilityCell {
    Applicability status;
    std::string_view reason;

    bool usable() const noexcept {
        return status == Applicability::Direct || status == Applicability::Corrected;
    }
};

/// Applicability of `metric` on a single-series dataset kind. AI is evaluated on axis
/// triples: any single axis of UFXYZ/FXYZ reports the family's cell.
ApplicabilityCell applicability(MetricId metric, DatasetKind kind) noexcept;

/// Throws InapplicableMetric with the cell reason unless the pair is usable.
void require_applicable(MetricId metric, DatasetKind kind);

/// Raw epoch integral in g·s. Riemann is Ts·Σx. Simpson38 is the composite 3/8 rule
/// (trapezoid on a 1-2 interval tail) expressed as a weighted mean times the epoch
/// duration n·Ts, so both methods measure the same span and agree on constants.
double pim(const Epoch& epoch, IntegrationMethod method = IntegrationMethod::RiemannSum);

/// PIM with the dataset-specific correction:
///  UFNM, FMpre, squared axes: direct;
///  FX/FY/FZ, FMpost: integral of |x|;
///  UFM: |integral - n·Ts·1 g|.
/// Throws InapplicableMetric on raw axes and other kinds.
double pim_corrected(const Epoch& epoch, IntegrationMethod method = IntegrationMethod::RiemannSum);

/// Threshold crossings. A crossing is counted each time the side of the most recent
/// sample strictly off the threshold differs from the side of the next such sample;
/// samples equal to the threshold have no side.
std::size_t zcm(const Epoch& epoch, double threshold);
std::size_t zcm(std::span<const double> values, double threshold);

/// Number of samples strictly above the threshold.
std::size_t tat_samples(std::span<const double> values, double threshold);

/// Time above threshold in seconds: Ts · tat_samples.
double tat(const Epoch& epoch, double threshold);

/// Mean absolute deviation from the epoch mean, in the series units.
double mad(const Epoch& epoch);
double mad(std::span<const double> values);

/// Mean of max(r - 1 g, 0). UFM only.
double enmo(const Epoch& epoch);

/// Mean of the high-pass-filtered magnitude. HFEN_SPECIAL only.
double hfen(const Epoch& epoch);

/// Minimum over non-overlapping windows of σx² + σy² + σz² (population variances).
NoiseVarianceEstimate estimate_noise_variance(std::span<const double> x, std::span<const double> y,
                                              std::span<const double> z, double sample_rate_hz,
                                              double window_s = 60.0);
NoiseVarianceEstimate estimate_noise_variance(const RawRecording& rec, double window_s = 60.0);

/// sqrt(max((Σσm² - σ̄²)/3, 0)) for the typeset formula, sqrt(max(Σ(σm² - σ̄²)/3, 0))
/// for PerAxis. The three epochs must be the axes of one family and equal length.
double ai(const Epoch& epoch_x, const Epoch& epoch_y, const Epoch& epoch_z,
          const NoiseVarianceEstimate& noise, AiFormula formula = AiFormula::Typeset);

/// Population SD of the whole series; plus 1 g for UFM.
double sd_threshold(const PreprocessedSeries& series);

/// Threshold for ZCM/TAT under `policy` for this series.
double resolve_threshold(const ThresholdPolicy& policy, const PreprocessedSeries& series);

double mean(std::span<const double> values);
double population_variance(std::span<const double> values);

}  // namespace actimetrics
