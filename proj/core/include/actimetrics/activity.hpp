#pragma once

#include <optional>

#include "actimetrics/preprocess.hpp"
#include "actimetrics/variant.hpp"

namespace actimetrics {

struct ActivityOptions {
    double noise_window_s = 60.0;
    /// Overrides the estimated systematic noise variance for AI.
    std::optional<double> sigma_bar_sq;
};

/// Applies a single-series variant to `series`, whose kind (and squared flag) must match
/// the variant's input. Used for plain and squared-axis variants.
ActivitySignal activity_on_series(const VariantDescriptor& variant, const PreprocessedSeries& series,
                                  double epoch_s);

/// Computes one activity signal. Routes PIM through the dataset corrections, resolves
/// ZCM/TAT thresholds from the variant's policy on the whole series, estimates the AI
/// noise variance on the same axis family, and applies combination rules.
/// Throws MissingDataset when a required kind is absent from `datasets`.
ActivitySignal compute_activity(const VariantDescriptor& variant, const DatasetMap& datasets,
                                double epoch_s, const ActivityOptions& options = {});

}  // namespace actimetrics
