#pragma once

#include <string>
#include <vector>

#include "actimetrics/variant.hpp"

namespace actimetrics {

/// Euclidean norm of three per-axis activity values.
double vm3(double a_x, double a_y, double a_z) noexcept;

/// Per-epoch reduction of three per-axis activity signals with SumAxes, SqrtOfSumAxes,
/// SumOfSquares or VM3. The inputs must be the x, y, z signals of one metric on one
/// axis family (all plain or all on squared axes) with equal length and epoch length.
ActivitySignal combine_axial(const ActivitySignal& ax, const ActivitySignal& ay,
                             const ActivitySignal& az, CombinationRule rule);

/// Squares each epoch value of a single-axis signal, giving METRIC(AXIS)².
ActivitySignal square_activity(const ActivitySignal& axis_signal);

/// Squares the samples of an axis series, then applies an axial metric. ZCM/TAT
/// adaptive thresholds are the SD of the squared series.
ActivitySignal metric_on_squared_axis(MetricId metric, const PreprocessedSeries& axis_series,
                                      double epoch_s, VariantOptions options = {});

struct CatalogConfig {
    VariantOptions options{};
    /// Emit PIM variants for both integration methods instead of only options.integration.
    bool both_integration_methods = false;
    /// Include the per-axis families on the raw axes as well (MAD is the only axial metric
    /// applicable there). Off by default.
    bool include_unfiltered_axis_families = false;
    std::vector<std::string> include{"*"};  // glob patterns on labels
    std::vector<std::string> exclude{};
};

/// The number of activity signals reported for the original study.
inline constexpr std::size_t kReferenceCatalogSize = 148;

/// Every legal variant in a fixed order: magnitude datasets, ENMO, HFEN, AI, raw-axis MAD,
/// then per-axis families over FXYZ for PIM, ZCM, TAT, MAD. Deterministic.
std::vector<VariantDescriptor> catalog(const CatalogConfig& config = {});

/// fnmatch-style glob on labels.
bool label_matches(const std::string& label, const std::string& pattern);

}  // namespace actimetrics
