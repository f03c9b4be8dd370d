#include "actimetrics/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "actimetrics/activity.hpp"
#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT.
void fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen = std::polar(1.0, angle);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// |X_k|² for k = 0 .. n/2.
std::vector<double> half_power_spectrum(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const std::size_t bins = n / 2 + 1;
    std::vector<double> out(bins);
    if (is_power_of_two(n)) {
        std::vector<std::complex<double>> a(x.begin(), x.end());
        fft(a);
        for (std::size_t k = 0; k < bins; ++k) out[k] = std::norm(a[k]);
        return out;
    }
    for (std::size_t k = 0; k < bins; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * i % n) /
                                 static_cast<double>(n);
            acc += x[i] * std::polar(1.0, angle);
        }
        out[k] = std::norm(acc);
    }
    return out;
}

std::vector<double> make_window(PsdWindow window, std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (window == PsdWindow::Hann && n > 1) {
        // Periodic Hann, the usual choice for spectral averaging.
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                        static_cast<double>(n));
        }
    }
    return w;
}

double sample_sd(std::span<const double> values, double m) {
    if (values.size() < 2) return 0.0;
    double acc = 0.0;
    for (const double v : values) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

}  // namespace

bool is_constant(std::span<const double> values) noexcept {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("pearson inputs differ in length: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    if (a.size() < 2) throw LengthMismatch("pearson needs at least 2 samples");
    if (is_constant(a) || is_constant(b)) {
        throw DegenerateInput("pearson coefficient undefined for a constant input");
    }
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        throw DegenerateInput("pearson coefficient undefined for a zero-variance input");
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

void validate(const PsdParams& params) {
    if (params.segment_length < 2) throw ConfigError("PSD segment length must be at least 2");
    if (!(params.overlap >= 0.0 && params.overlap < 1.0)) {
        throw ConfigError("PSD overlap must lie in [0, 1)");
    }
}

PsdEstimate psd(std::span<const double> values, double sample_rate_hz, const PsdParams& params) {
    validate(params);
    const std::size_t seg = params.segment_length;
    if (values.size() < seg) {
        throw SignalTooShort("signal of " + std::to_string(values.size()) +
                             " values is shorter than the PSD segment length " +
                             std::to_string(seg));
    }
    const auto overlap = static_cast<std::size_t>(std::llround(params.overlap * static_cast<double>(seg)));
    const std::size_t step = std::max<std::size_t>(1, seg - std::min(overlap, seg - 1));
    const auto window = make_window(params.window, seg);
    const double window_energy = std::inner_product(window.begin(), window.end(), window.begin(), 0.0);

    PsdEstimate out;
    out.params = params;
    const std::size_t bins = seg / 2 + 1;
    out.power.assign(bins, 0.0);
    out.frequencies.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        out.frequencies[k] = static_cast<double>(k) * sample_rate_hz / static_cast<double>(seg);
    }

    std::vector<double> buf(seg);
    for (std::size_t start = 0; start + seg <= values.size(); start += step) {
        const auto slice = values.subspan(start, seg);
        const double m = params.detrend == PsdDetrend::Mean ? mean(slice) : 0.0;
        for (std::size_t i = 0; i < seg; ++i) buf[i] = (slice[i] - m) * window[i];
        const auto p = half_power_spectrum(buf);
        for (std::size_t k = 0; k < bins; ++k) out.power[k] += p[k];
        ++out.segments;
    }
    const double scale = 1.0 / (sample_rate_hz * window_energy * static_cast<double>(out.segments));
    for (std::size_t k = 0; k < bins; ++k) {
        const bool edge = k == 0 || (seg % 2 == 0 && k == bins - 1);
        out.power[k] *= scale * (edge ? 1.0 : 2.0);
    }
    return out;
}

PsdEstimate psd(const ActivitySignal& signal, const PsdParams& params) {
    return psd(signal.values, 1.0 / signal.epoch_length_s, params);
}

std::size_t CorrelationSummary::index_of(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw LabelMismatch("label '" + label + "' is not in the matrix");
    return static_cast<std::size_t>(it - labels.begin());
}

double mean_of_valid(std::span<const double> values) noexcept {
    double sum = 0.0;
    std::size_t n = 0;
    for (const double v : values) {
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    }
    return n ? sum / static_cast<double>(n) : kNaN;
}

CorrelationSummary correlation_matrix(const SubjectSignals& per_subject, CorrelationDomain domain,
                                      const PsdParams& psd_params) {
    CorrelationSummary out;
    out.domain = domain;
    out.n_subjects = per_subject.size();
    if (per_subject.empty()) return out;

    for (const auto& s : per_subject.begin()->second) out.labels.push_back(s.label());
    const std::size_t n = out.labels.size();

    // series[subject][label] holds activity values or PSD power, in label order.
    std::vector<std::vector<std::vector<double>>> series;
    for (const auto& [subject, signals] : per_subject) {
        if (signals.size() != n) {
            throw LabelMismatch("subject '" + subject + "' has " + std::to_string(signals.size()) +
                                " signals, expected " + std::to_string(n));
        }
        std::vector<std::vector<double>> row(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto it = std::find_if(signals.begin(), signals.end(),
                                         [&](const ActivitySignal& s) { return s.label() == out.labels[i]; });
            if (it == signals.end()) {
                throw LabelMismatch("subject '" + subject + "' lacks signal '" + out.labels[i] + "'");
            }
            if (it->size() != signals.front().size()) {
                throw LengthMismatch("subject '" + subject + "' has signals of different lengths");
            }
            row[i] = domain == CorrelationDomain::Time ? it->values : psd(*it, psd_params).power;
        }
        series.push_back(std::move(row));
    }

    out.mean.assign(n * n, kNaN);
    out.sd.assign(n * n, kNaN);
    out.valid.assign(n * n, 0);
    std::vector<double> rs;
    for (std::size_t i = 0; i < n; ++i) {
        out.mean[i * n + i] = 1.0;
        out.sd[i * n + i] = 0.0;
        out.valid[i * n + i] = series.size();
        for (std::size_t j = i + 1; j < n; ++j) {
            rs.clear();
            for (const auto& subject : series) {
                if (is_constant(subject[i]) || is_constant(subject[j])) {
                    ++out.excluded_pairs;
                    continue;
                }
                rs.push_back(pearson(subject[i], subject[j]));
            }
            if (rs.empty()) continue;
            const double m = std::accumulate(rs.begin(), rs.end(), 0.0) / static_cast<double>(rs.size());
            const double sd = sample_sd(rs, m);
            out.mean[i * n + j] = out.mean[j * n + i] = m;
            out.sd[i * n + j] = out.sd[j * n + i] = sd;
            out.valid[i * n + j] = out.valid[j * n + i] = rs.size();
        }
    }
    return out;
}

namespace {

double safe_pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || is_constant(a) || is_constant(b)) return kNaN;
    return pearson(a, b);
}

std::vector<double> threshold_activity(MetricId metric, const PreprocessedSeries& series,
                                       double threshold, double epoch_s) {
    const auto epochs = slice_epochs(series, epoch_s);
    std::vector<double> out;
    out.reserve(epochs.size());
    for (const Epoch& e : epochs) {
        out.push_back(metric == MetricId::ZCM ? static_cast<double>(zcm(e, threshold))
                                              : tat(e, threshold));
    }
    return out;
}

const PreprocessedSeries& dataset(const DatasetMap& m, DatasetKind kind) {
    const auto it = m.find(kind);
    if (it == m.end()) throw MissingDataset("sweep needs dataset " + std::string(to_string(kind)));
    return it->second;
}

}  // namespace

SweepCurve threshold_sweep(MetricId metric, DatasetKind kind, std::span<const DatasetMap> subjects,
                           const SweepOptions& options) {
    if (!is_threshold_metric(metric)) {
        throw ConfigError("threshold sweeps are defined for ZCM and TAT, got " +
                          std::string(to_string(metric)));
    }
    require_applicable(metric, kind);
    if (subjects.empty()) throw ConfigError("threshold sweep needs at least one subject");
    if (!(options.step_g > 0.0) || options.max_steps == 0) {
        throw ConfigError("sweep step must be positive and max_steps >= 1");
    }

    SweepCurve curve;
    curve.metric = metric;
    curve.kind = kind;

    struct Subject {
        const PreprocessedSeries* series;
        std::vector<double> enmo;
        std::vector<double> hfen;
        std::vector<double> anchored;
    };
    std::vector<Subject> prepared;
    std::vector<double> sds;
    std::vector<double> sd_enmo;
    std::vector<double> sd_hfen;
    for (const DatasetMap& m : subjects) {
        Subject s;
        s.series = &dataset(m, kind);
        s.enmo = compute_activity(VariantDescriptor::single(MetricId::ENMO, DatasetKind::UFM), m,
                                  options.epoch_s).values;
        s.hfen = compute_activity(VariantDescriptor::single(MetricId::HFEN, DatasetKind::HfenSpecial),
                                  m, options.epoch_s).values;
        const double sd = sd_threshold(*s.series);
        sds.push_back(sd);
        s.anchored = threshold_activity(metric, *s.series, sd, options.epoch_s);
        sd_enmo.push_back(safe_pearson(s.anchored, s.enmo));
        sd_hfen.push_back(safe_pearson(s.anchored, s.hfen));
        prepared.push_back(std::move(s));
    }
    curve.sd_marker = std::accumulate(sds.begin(), sds.end(), 0.0) / static_cast<double>(sds.size());
    curve.r_sd_vs_enmo = mean_of_valid(sd_enmo);
    curve.r_sd_vs_hfen = mean_of_valid(sd_hfen);

    const double start = kind == DatasetKind::UFM ? kGravity : 0.0;
    double running_max = 0.0;
    std::vector<double> r_enmo(prepared.size());
    std::vector<double> r_hfen(prepared.size());
    std::vector<double> r_self(prepared.size());
    for (std::size_t step = 0; step < options.max_steps; ++step) {
        const double threshold = start + static_cast<double>(step) * options.step_g;
        double activity_sum = 0.0;
        std::size_t activity_count = 0;
        for (std::size_t i = 0; i < prepared.size(); ++i) {
            const auto& s = prepared[i];
            const auto act = threshold_activity(metric, *s.series, threshold, options.epoch_s);
            activity_sum += std::accumulate(act.begin(), act.end(), 0.0);
            activity_count += act.size();
            r_enmo[i] = safe_pearson(act, s.enmo);
            r_hfen[i] = safe_pearson(act, s.hfen);
            r_self[i] = safe_pearson(act, s.anchored);
        }
        const double mean_activity = activity_count ? activity_sum / static_cast<double>(activity_count) : 0.0;
        curve.thresholds.push_back(threshold);
        curve.mean_activity.push_back(mean_activity);
        curve.r_vs_enmo.push_back(mean_of_valid(r_enmo));
        curve.r_vs_hfen.push_back(mean_of_valid(r_hfen));
        curve.r_vs_sd_anchored.push_back(mean_of_valid(r_self));
        running_max = std::max(running_max, mean_activity);
        if (running_max > 0.0 && mean_activity < options.stop_fraction * running_max) break;
    }
    return curve;
}

SweepCurve threshold_sweep(MetricId metric, DatasetKind kind,
                           std::span<const RawRecording> recordings,
                           const PreprocessOptions& preprocess, const SweepOptions& options) {
    std::vector<DatasetMap> subjects;
    subjects.reserve(recordings.size());
    for (const auto& rec : recordings) subjects.push_back(preprocess_all(rec, preprocess));
    return threshold_sweep(metric, kind, subjects, options);
}

}  // namespace actimetrics
