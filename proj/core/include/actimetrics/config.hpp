#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "actimetrics/activity.hpp"
#include "actimetrics/analysis.hpp"
#include "actimetrics/combine.hpp"
#include "actimetrics/preprocess.hpp"
#include "actimetrics/synth.hpp"

namespace actimetrics {

inline constexpr int kConfigSchemaVersion = 1;

struct SweepRequest {
    MetricId metric = MetricId::ZCM;
    DatasetKind kind = DatasetKind::UFM;
};

/// Every pipeline parameter. Loaded from JSON; unknown keys are rejected at any depth.
struct PipelineConfig {
    double sample_rate_hz = 10.0;
    FilterSpec bandpass = FilterSpec::default_bandpass();
    FilterSpec hfen_highpass = FilterSpec::hfen_highpass();
    double epoch_s = 60.0;
    IntegrationMethod integration = IntegrationMethod::RiemannSum;
    bool both_integration_methods = false;
    ThresholdPolicy threshold{};
    double ai_noise_window_s = 60.0;
    AiFormula ai_formula = AiFormula::Typeset;
    std::optional<double> sigma_bar_sq;
    PsdParams psd{};
    std::vector<std::string> include{"*"};
    std::vector<std::string> exclude{};
    bool include_unfiltered_axis_families = false;
    std::vector<SweepRequest> sweeps{{MetricId::ZCM, DatasetKind::UFM}, {MetricId::TAT, DatasetKind::UFM}};
    SweepOptions sweep{};
    double full_scale_g = kDefaultFullScale;
    std::uint64_t seed = 1;
    std::size_t subjects = 6;
    SyntheticSpec synth{};
    std::filesystem::path output_dir = "out";

    CatalogConfig catalog_config() const;
    PreprocessOptions preprocess_options() const;
    ActivityOptions activity_options() const;
    SweepOptions sweep_options() const;
    /// Synthesis spec with the pipeline's seed, sample rate and full scale applied.
    SyntheticSpec synth_spec() const;
};

/// Throws ConfigError (or a subclass) when any parameter breaks its module invariants.
void validate(const PipelineConfig& config);

PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Canonical JSON of every parameter, keys sorted. parse_config(to_json(c)) == c.
std::string to_json(const PipelineConfig& config);

/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const PipelineConfig& config);

}  // namespace actimetrics
