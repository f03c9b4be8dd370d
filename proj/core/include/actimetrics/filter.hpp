#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "actimetrics/model.hpp"

namespace actimetrics {

enum class FilterTopology { Bandpass, Highpass };

/// Forward-only filtering with zero initial state, or forward-backward (zero phase).
enum class FilterPhase { Causal, ZeroPhase };

/// Butterworth filter parameters. For highpass only `f_low_hz` (the cutoff) is used.
struct FilterSpec {
    FilterTopology topology = FilterTopology::Bandpass;
    int order = 3;
    double f_low_hz = 0.25;
    double f_high_hz = 2.5;
    double sample_rate_hz = 10.0;
    FilterPhase phase = FilterPhase::Causal;

    static FilterSpec default_bandpass(double sample_rate_hz = 10.0);
    static FilterSpec hfen_highpass(double sample_rate_hz = 10.0);

    std::string describe() const;
};

/// Throws InvalidCutoffs unless 0 < f_low < f_high < fs/2 (bandpass) or
/// 0 < cutoff < fs/2 (highpass), and order >= 1.
void validate(const FilterSpec& spec);

/// One biquad: (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2).
struct SecondOrderSection {
    std::array<double, 3> b{};
    std::array<double, 2> a{};
};

/// Cascade of second-order sections plus overall gain, with the poles kept for
/// stability and settling analysis.
struct FilterRealization {
    FilterSpec spec;
    double gain = 1.0;
    std::vector<SecondOrderSection> sections;
    std::vector<std::complex<double>> poles;

    /// Complex frequency response at `freq_hz`.
    std::complex<double> response(double freq_hz) const;
    double magnitude(double freq_hz) const { return std::abs(response(freq_hz)); }
    /// Largest pole radius; the impulse response decays like max_pole_radius()^k.
    double max_pole_radius() const;
};

/// Bilinear transform of the analog Butterworth prototype with prewarped cutoffs,
/// realized as second-order sections. Deterministic: equal specs give bitwise-equal
/// coefficients.
FilterRealization design_filter(const FilterSpec& spec);

/// Runs the cascade over `input` using the realization's phase mode. Fresh state per call.
std::vector<double> filter_samples(std::span<const double> input, const FilterRealization& filt);

/// Filters a raw axis (UFX/UFY/UFZ -> FX/FY/FZ) or the raw magnitude (UFM -> FMpost).
PreprocessedSeries apply_filter(const PreprocessedSeries& series, const FilterRealization& filt);

}  // namespace actimetrics
