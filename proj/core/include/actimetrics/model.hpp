#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace actimetrics {

inline constexpr double kGravity = 1.0;  // 1 g, the unit all amplitudes are expressed in
inline constexpr double kDefaultFullScale = 8.0;

/// Triaxial acceleration samples in g at a fixed sampling rate.
struct RawRecording {
    std::string subject_id;
    double sample_rate_hz = 10.0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    std::optional<std::string> start_time;  // metadata only, never used in computation

    std::size_t size() const noexcept { return x.size(); }
    double sampling_time() const noexcept { return 1.0 / sample_rate_hz; }
};

/// Output kinds of the preprocessing stage.
///
/// UF* are the raw axes, F* the band-passed axes. UFM is the raw magnitude,
/// UFNM is |UFM - 1 g|, FMpre the magnitude of the band-passed axes, FMpost
/// the band-passed magnitude. HfenSpecial is the high-passed-axes magnitude
/// that only HFEN consumes.
enum class DatasetKind {
    UFX,
    UFY,
    UFZ,
    FX,
    FY,
    FZ,
    UFM,
    UFNM,
    FMpre,
    FMpost,
    HfenSpecial,
};

inline constexpr std::array<DatasetKind, 11> kAllDatasetKinds = {
    DatasetKind::UFX, DatasetKind::UFY,  DatasetKind::UFZ,   DatasetKind::FX,
    DatasetKind::FY,  DatasetKind::FZ,   DatasetKind::UFM,   DatasetKind::UFNM,
    DatasetKind::FMpre, DatasetKind::FMpost, DatasetKind::HfenSpecial,
};

std::string_view to_string(DatasetKind kind) noexcept;
std::optional<DatasetKind> parse_dataset_kind(std::string_view name) noexcept;

constexpr bool is_axis(DatasetKind k) noexcept {
    return k == DatasetKind::UFX || k == DatasetKind::UFY || k == DatasetKind::UFZ ||
           k == DatasetKind::FX || k == DatasetKind::FY || k == DatasetKind::FZ;
}

constexpr bool is_unfiltered_axis(DatasetKind k) noexcept {
    return k == DatasetKind::UFX || k == DatasetKind::UFY || k == DatasetKind::UFZ;
}

constexpr bool is_filtered_axis(DatasetKind k) noexcept {
    return k == DatasetKind::FX || k == DatasetKind::FY || k == DatasetKind::FZ;
}

/// Magnitude kinds whose values are non-negative by construction.
constexpr bool is_nonnegative_kind(DatasetKind k) noexcept {
    return k == DatasetKind::UFM || k == DatasetKind::UFNM || k == DatasetKind::FMpre ||
           k == DatasetKind::HfenSpecial;
}

/// The three axes of one axis family, x first.
enum class AxisFamily { Unfiltered, Filtered };

std::array<DatasetKind, 3> axes_of(AxisFamily family) noexcept;
std::string_view to_string(AxisFamily family) noexcept;  // "UFXYZ" / "FXYZ"

/// A preprocessed sample stream. `squared` marks the elementwise-squared variant
/// of an axis kind.
struct PreprocessedSeries {
    DatasetKind kind = DatasetKind::UFM;
    bool squared = false;
    std::vector<double> values;
    double sample_rate_hz = 10.0;
    std::string provenance;  // filter description, empty when unfiltered

    std::size_t size() const noexcept { return values.size(); }
    double sampling_time() const noexcept { return 1.0 / sample_rate_hz; }
};

/// Label of a series, e.g. "FX" or "FX²".
std::string series_label(DatasetKind kind, bool squared);

/// Returns the elementwise square of an axis series.
PreprocessedSeries squared_series(const PreprocessedSeries& series);

/// A non-owning window over one epoch of a series. Valid while the series lives.
struct Epoch {
    std::span<const double> values;
    double ts = 0.1;
    std::size_t index = 0;
    DatasetKind kind = DatasetKind::UFM;
    bool squared = false;

    std::size_t size() const noexcept { return values.size(); }
};

/// Samples per epoch, round(Te * fs). Throws ConfigError when the product is not an
/// integer and EpochTooShort when it is below 2.
std::size_t samples_per_epoch(double epoch_s, double sample_rate_hz);

/// Splits into floor(N/n) contiguous epochs aligned to the first sample; the trailing
/// partial epoch is dropped.
std::vector<Epoch> slice_epochs(const PreprocessedSeries& series, double epoch_s);

struct ValidationFinding {
    enum class Type { LengthMismatch, Empty, NonFinite, OutOfRange, BadSampleRate };
    Type type;
    char axis = '-';  // 'x', 'y', 'z' or '-' for whole-recording findings
    std::size_t index = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;

    bool ok() const noexcept { return findings.empty(); }
    std::string summary() const;
};

ValidationReport validate_recording(const RawRecording& rec,
                                    double full_scale_g = kDefaultFullScale);

/// Throws ValidationError with the report summary unless the recording is valid.
void require_valid(const RawRecording& rec, double full_scale_g = kDefaultFullScale);

}  // namespace actimetrics
