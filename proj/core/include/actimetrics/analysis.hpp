#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "actimetrics/preprocess.hpp"
#include "actimetrics/variant.hpp"

namespace actimetrics {

/// Sample Pearson correlation. Throws DegenerateInput when either input is constant
/// (the coefficient is 0/0) and LengthMismatch when lengths differ or are below 2.
double pearson(std::span<const double> a, std::span<const double> b);

/// True when every value equals the first (or the sequence is empty).
bool is_constant(std::span<const double> values) noexcept;

enum class PsdWindow { Hann, Rectangular };
enum class PsdDetrend { Mean, None };

struct PsdParams {
    std::size_t segment_length = 256;
    double overlap = 0.5;  // fraction of segment_length, in [0, 1)
    PsdWindow window = PsdWindow::Hann;
    PsdDetrend detrend = PsdDetrend::Mean;
};

void validate(const PsdParams& params);

/// One-sided power spectral density, in units²/Hz.
struct PsdEstimate {
    std::vector<double> frequencies;  // 0 .. fs/2, step fs/segment_length
    std::vector<double> power;
    PsdParams params;
    std::size_t segments = 0;

    double resolution() const noexcept {
        return frequencies.size() > 1 ? frequencies[1] - frequencies[0] : 0.0;
    }
};

/// Welch-averaged periodogram. Throws SignalTooShort when the signal is shorter than
/// one segment.
PsdEstimate psd(std::span<const double> values, double sample_rate_hz, const PsdParams& params = {});

/// PSD of an activity signal, sampled at 1/Te.
PsdEstimate psd(const ActivitySignal& signal, const PsdParams& params = {});

enum class CorrelationDomain { Time, Frequency };

/// Cross-subject mean and SD of pairwise Pearson coefficients. Matrices are stored row
/// major. Pairs where a subject's signal is constant are left out of that pair's
/// aggregate; if no subject remains the cell is NaN.
struct CorrelationSummary {
    std::vector<std::string> labels;
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<std::size_t> valid;  // subjects contributing to each cell
    CorrelationDomain domain = CorrelationDomain::Time;
    std::size_t n_subjects = 0;
    std::size_t excluded_pairs = 0;  // (subject, unordered off-diagonal pair) exclusions

    std::size_t size() const noexcept { return labels.size(); }
    double mean_at(std::size_t i, std::size_t j) const { return mean[i * labels.size() + j]; }
    double sd_at(std::size_t i, std::size_t j) const { return sd[i * labels.size() + j]; }
    std::size_t index_of(const std::string& label) const;
};

/// Per-subject activity signals, in a common label order.
using SubjectSignals = std::map<std::string, std::vector<ActivitySignal>>;

/// Label order follows the first subject. Throws LabelMismatch when subjects carry
/// different label sets, LengthMismatch when a subject's signals differ in length.
CorrelationSummary correlation_matrix(const SubjectSignals& per_subject, CorrelationDomain domain,
                                      const PsdParams& psd_params = {});

/// Mean over the finite entries; NaN when none.
double mean_of_valid(std::span<const double> values) noexcept;

struct SweepOptions {
    double step_g = 0.05;
    std::size_t max_steps = 200;
    /// Stop once the corpus-mean activity drops below this fraction of its running maximum.
    double stop_fraction = 0.01;
    double epoch_s = 60.0;
};

/// Correlation of threshold-swept ZCM/TAT signals with ENMO, HFEN and the SD-anchored
/// variant, averaged across subjects. Cells where no subject yields a defined
/// coefficient are NaN.
struct SweepCurve {
    MetricId metric = MetricId::ZCM;
    DatasetKind kind = DatasetKind::UFM;
    std::vector<double> thresholds;
    std::vector<double> r_vs_enmo;
    std::vector<double> r_vs_hfen;
    std::vector<double> r_vs_sd_anchored;
    std::vector<double> mean_activity;
    double sd_marker = 0.0;       // mean of the subjects' SD thresholds
    double r_sd_vs_enmo = 0.0;    // SD-anchored signal against ENMO
    double r_sd_vs_hfen = 0.0;    // SD-anchored signal against HFEN
};

/// Each dataset map must hold `kind`, UFM (for ENMO) and HFEN_SPECIAL. Thresholds start at
/// 1 g for UFM and 0 g otherwise.
SweepCurve threshold_sweep(MetricId metric, DatasetKind kind, std::span<const DatasetMap> subjects,
                           const SweepOptions& options = {});

SweepCurve threshold_sweep(MetricId metric, DatasetKind kind,
                           std::span<const RawRecording> recordings,
                           const PreprocessOptions& preprocess, const SweepOptions& options = {});

}  // namespace actimetrics
