#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "actimetrics/model.hpp"

namespace actimetrics {

/// Alternating rest and active segments starting with rest. Segment durations are drawn
/// uniformly in mean·[1 - jitter, 1 + jitter]. During activity each axis carries a sum of
/// sinusoids with frequencies inside the active band.
struct SyntheticSpec {
    double duration_s = 86400.0;
    double sample_rate_hz = 10.0;
    double rest_mean_s = 1200.0;
    double active_mean_s = 600.0;
    double duration_jitter = 0.5;
    double active_center_hz = 1.5;
    double active_bandwidth_hz = 1.5;
    double amplitude_g = 0.3;
    double amplitude_spread = 0.3;  // per-bout amplitude is amplitude_g·U[1 - s, 1 + s]
    int components_per_axis = 3;
    double ramp_s = 1.0;
    std::array<double, 3> orientation{0.0, 0.0, 1.0};
    double noise_sd_g = 0.01;
    double full_scale_g = kDefaultFullScale;
    std::uint64_t seed = 1;
};

/// Throws ConfigError on a non-unit orientation, negative amplitudes or noise, or an
/// active band outside 0.5–3 Hz.
void validate(const SyntheticSpec& spec);

/// Deterministic for a fixed spec. Samples are clipped to ±full_scale_g.
RawRecording synthesize(const SyntheticSpec& spec, const std::string& subject_id = "S01");

/// Seed of the given subject derived from a base seed.
std::uint64_t subject_seed(std::uint64_t base_seed, std::size_t subject_index) noexcept;

/// `count` recordings named S01, S02, ... each with its own derived seed.
std::vector<RawRecording> synthesize_corpus(const SyntheticSpec& spec, std::size_t count);

}  // namespace actimetrics
