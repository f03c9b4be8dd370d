#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "actimetrics/config.hpp"

namespace actimetrics {

struct SubjectOutcome {
    std::string subject_id;
    bool ok = false;
    std::size_t samples = 0;
    std::size_t epochs = 0;
    std::string error;
};

struct PipelineResult {
    std::vector<std::string> labels;
    std::vector<SubjectOutcome> subjects;
    std::size_t excluded_pairs_time = 0;
    std::size_t excluded_pairs_frequency = 0;
    std::string manifest;  // text written to manifest.json

    std::size_t ok_count() const noexcept;
    std::size_t failed_count() const noexcept;
};

/// Labels of the configured catalog. Throws ConfigError("empty catalog") when the
/// include/exclude filters leave nothing.
std::vector<VariantDescriptor> configured_catalog(const PipelineConfig& config);

/// Full batch run. Writes under `out_dir`:
///   activity/<subject>/<slug>.csv, correlation_{time,frequency}.{csv,json},
///   sweeps/<METRIC>_<KIND>.csv and manifest.json.
/// Subjects run on up to `jobs` threads. A failing subject is reported in the manifest
/// and left out of the matrices; config errors are raised before any work starts.
/// Throws DataError when no subject succeeds.
PipelineResult run_pipeline(const PipelineConfig& config, const std::vector<RawRecording>& recordings,
                            const std::filesystem::path& out_dir, unsigned jobs = 1);

}  // namespace actimetrics
