#include "actimetrics/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

constexpr double kBandLow = 0.5;
constexpr double kBandHigh = 3.0;

struct Tone {
    double amplitude;
    double frequency;
    double phase;
};

}  // namespace

void validate(const SyntheticSpec& spec) {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string("synth: ") + name + " must be positive");
        }
    };
    positive(spec.duration_s, "duration_s");
    positive(spec.sample_rate_hz, "sample_rate_hz");
    positive(spec.rest_mean_s, "rest_mean_s");
    positive(spec.active_mean_s, "active_mean_s");
    positive(spec.full_scale_g, "full_scale_g");
    if (!(spec.duration_jitter >= 0.0 && spec.duration_jitter < 1.0)) {
        throw ConfigError("synth: duration_jitter must lie in [0, 1)");
    }
    if (!(spec.amplitude_g >= 0.0)) throw ConfigError("synth: amplitude_g must be >= 0");
    if (!(spec.amplitude_spread >= 0.0 && spec.amplitude_spread <= 1.0)) {
        throw ConfigError("synth: amplitude_spread must lie in [0, 1]");
    }
    if (!(spec.noise_sd_g >= 0.0)) throw ConfigError("synth: noise_sd_g must be >= 0");
    if (!(spec.ramp_s >= 0.0)) throw ConfigError("synth: ramp_s must be >= 0");
    if (spec.components_per_axis < 1) throw ConfigError("synth: components_per_axis must be >= 1");
    const double lo = spec.active_center_hz - spec.active_bandwidth_hz / 2.0;
    const double hi = spec.active_center_hz + spec.active_bandwidth_hz / 2.0;
    if (!(spec.active_bandwidth_hz >= 0.0) || lo < kBandLow - 1e-12 || hi > kBandHigh + 1e-12) {
        throw ConfigError("synth: active band must lie within 0.5-3 Hz");
    }
    if (hi >= spec.sample_rate_hz / 2.0) throw ConfigError("synth: active band exceeds Nyquist");
    const auto& o = spec.orientation;
    const double norm = std::sqrt(o[0] * o[0] + o[1] * o[1] + o[2] * o[2]);
    if (std::abs(norm - 1.0) > 1e-9) throw ConfigError("synth: orientation must have unit norm");
}

std::uint64_t subject_seed(std::uint64_t base_seed, std::size_t subject_index) noexcept {
    // splitmix64 finalizer
    std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ull * (subject_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RawRecording synthesize(const SyntheticSpec& spec, const std::string& subject_id) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    const double fs = spec.sample_rate_hz;
    const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * fs));
    RawRecording rec;
    rec.subject_id = subject_id;
    rec.sample_rate_hz = fs;
    rec.x.resize(n);
    rec.y.resize(n);
    rec.z.resize(n);
    std::array<std::vector<double>*, 3> axes{&rec.x, &rec.y, &rec.z};

    const double f_lo = spec.active_center_hz - spec.active_bandwidth_hz / 2.0;
    const double f_hi = spec.active_center_hz + spec.active_bandwidth_hz / 2.0;
    const auto draw_duration = [&](double mean_s) {
        const double j = spec.duration_jitter;
        return mean_s * (1.0 - j + 2.0 * j * unit(rng));
    };

    std::size_t i = 0;
    bool active = false;
    while (i < n) {
        const double seg_s = draw_duration(active ? spec.active_mean_s : spec.rest_mean_s);
        const std::size_t len = std::min<std::size_t>(
            n - i, std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(seg_s * fs))));

        std::array<std::vector<Tone>, 3> tones;
        if (active) {
            const double bout_amp =
                spec.amplitude_g * (1.0 - spec.amplitude_spread + 2.0 * spec.amplitude_spread * unit(rng));
            const double per_tone = bout_amp / std::sqrt(static_cast<double>(spec.components_per_axis));
            for (auto& axis_tones : tones) {
                for (int c = 0; c < spec.components_per_axis; ++c) {
                    const double f = f_lo + (f_hi - f_lo) * unit(rng);
                    const double ph = 2.0 * std::numbers::pi * unit(rng);
                    axis_tones.push_back({per_tone * (0.5 + unit(rng)), f, ph});
                }
            }
        }

        const double seg_len_s = static_cast<double>(len) / fs;
        for (std::size_t k = 0; k < len; ++k) {
            const double t = static_cast<double>(k) / fs;
            double env = 1.0;
            if (active && spec.ramp_s > 0.0) {
                env = std::clamp(std::min(t, seg_len_s - t) / spec.ramp_s, 0.0, 1.0);
            }
            for (std::size_t a = 0; a < 3; ++a) {
                double v = kGravity * spec.orientation[a];
                for (const auto& tone : tones[a]) {
                    v += env * tone.amplitude *
                         std::sin(2.0 * std::numbers::pi * tone.frequency * t + tone.phase);
                }
                if (spec.noise_sd_g > 0.0) v += spec.noise_sd_g * noise(rng);
                (*axes[a])[i + k] = std::clamp(v, -spec.full_scale_g, spec.full_scale_g);
            }
        }
        i += len;
        active = !active;
    }
    return rec;
}

std::vector<RawRecording> synthesize_corpus(const SyntheticSpec& spec, std::size_t count) {
    std::vector<RawRecording> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        SyntheticSpec subject = spec;
        subject.seed = subject_seed(spec.seed, s);
        const std::string id = (s + 1 < 10 ? "S0" : "S") + std::to_string(s + 1);
        out.push_back(synthesize(subject, id));
    }
    return out;
}

}  // namespace actimetrics
