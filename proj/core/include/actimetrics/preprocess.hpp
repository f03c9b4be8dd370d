#pragma once

#include <map>
#include <span>

#include "actimetrics/filter.hpp"
#include "actimetrics/model.hpp"

namespace actimetrics {

using DatasetMap = std::map<DatasetKind, PreprocessedSeries>;

/// Elementwise Euclidean norm of three equal-length series, tagged UFM.
PreprocessedSeries magnitude(std::span<const double> x, std::span<const double> y,
                             std::span<const double> z, double sample_rate_hz);

/// |UFM - 1 g| pointwise, tagged UFNM.
PreprocessedSeries normalize_magnitude(const PreprocessedSeries& ufm);

/// Magnitude of the three band-passed axes, tagged FMpre.
PreprocessedSeries fmpre(const PreprocessedSeries& fx, const PreprocessedSeries& fy,
                         const PreprocessedSeries& fz);

/// Per-axis high-pass followed by the magnitude, tagged HFEN_SPECIAL.
PreprocessedSeries hfen_preprocess(const RawRecording& rec,
                                   const FilterSpec& highpass = FilterSpec::hfen_highpass());

struct PreprocessOptions {
    FilterSpec bandpass = FilterSpec::default_bandpass();
    FilterSpec hfen_highpass = FilterSpec::hfen_highpass();
};

/// Every dataset kind for one recording (11 entries). Filter sample rates are taken
/// from the recording.
DatasetMap preprocess_all(const RawRecording& rec, const PreprocessOptions& options = {});

DatasetMap preprocess_all(const RawRecording& rec, const FilterSpec& bandpass);

}  // namespace actimetrics
