#include "actimetrics/model.hpp"

#include <cmath>
#include <sstream>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

constexpr std::array<std::string_view, 11> kKindNames = {
    "UFX", "UFY", "UFZ", "FX", "FY", "FZ", "UFM", "UFNM", "FMpre", "FMpost", "HFEN_SPECIAL",
};

// More than this many findings of one type are summarized by count.
constexpr std::size_t kMaxFindingsPerAxis = 16;

}  // namespace

std::string_view to_string(DatasetKind kind) noexcept {
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<DatasetKind>(i);
    }
    return std::nullopt;
}

std::array<DatasetKind, 3> axes_of(AxisFamily family) noexcept {
    if (family == AxisFamily::Unfiltered) return {DatasetKind::UFX, DatasetKind::UFY, DatasetKind::UFZ};
    return {DatasetKind::FX, DatasetKind::FY, DatasetKind::FZ};
}

std::string_view to_string(AxisFamily family) noexcept {
    return family == AxisFamily::Unfiltered ? "UFXYZ" : "FXYZ";
}

std::string series_label(DatasetKind kind, bool squared) {
    std::string label(to_string(kind));
    if (squared) label += "²";
    return label;
}

PreprocessedSeries squared_series(const PreprocessedSeries& series) {
    if (!is_axis(series.kind) || series.squared) {
        throw InvalidKind("only axis series can be squared, got " +
                          series_label(series.kind, series.squared));
    }
    PreprocessedSeries out = series;
    out.squared = true;
    for (double& v : out.values) v *= v;
    return out;
}

std::size_t samples_per_epoch(double epoch_s, double sample_rate_hz) {
    if (!(epoch_s > 0.0) || !(sample_rate_hz > 0.0)) {
        throw ConfigError("epoch length and sample rate must be positive");
    }
    const double product = epoch_s * sample_rate_hz;
    const double rounded = std::round(product);
    if (std::abs(product - rounded) > 1e-9 * std::max(1.0, product)) {
        std::ostringstream os;
        os << "epoch length " << epoch_s << " s at " << sample_rate_hz
           << " Hz is not a whole number of samples";
        throw ConfigError(os.str());
    }
    if (rounded < 2.0) {
        throw EpochTooShort("epoch must span at least 2 samples");
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<Epoch> slice_epochs(const PreprocessedSeries& series, double epoch_s) {
    const std::size_t n = samples_per_epoch(epoch_s, series.sample_rate_hz);
    const std::size_t count = series.size() / n;
    if (count == 0) {
        throw EmptySeries("series of " + std::to_string(series.size()) +
                          " samples is shorter than one epoch of " + std::to_string(n));
    }
    std::vector<Epoch> epochs;
    epochs.reserve(count);
    const std::span<const double> all(series.values);
    for (std::size_t e = 0; e < count; ++e) {
        epochs.push_back(Epoch{all.subspan(e * n, n), series.sampling_time(), e, series.kind,
                               series.squared});
    }
    return epochs;
}

std::string ValidationReport::summary() const {
    if (findings.empty()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < findings.size(); ++i) {
        if (i) os << "; ";
        os << findings[i].message;
    }
    return os.str();
}

ValidationReport validate_recording(const RawRecording& rec, double full_scale_g) {
    using Type = ValidationFinding::Type;
    ValidationReport report;
    if (!(rec.sample_rate_hz > 0.0) || !std::isfinite(rec.sample_rate_hz)) {
        report.findings.push_back({Type::BadSampleRate, '-', 0, "sample rate must be positive"});
    }
    if (rec.x.size() != rec.y.size() || rec.x.size() != rec.z.size()) {
        std::ostringstream os;
        os << "axis length mismatch: x=" << rec.x.size() << " y=" << rec.y.size()
           << " z=" << rec.z.size();
        report.findings.push_back({Type::LengthMismatch, '-', 0, os.str()});
    }
    if (rec.x.empty() && rec.y.empty() && rec.z.empty()) {
        report.findings.push_back({Type::Empty, '-', 0, "recording has no samples"});
    }

    const std::array<std::pair<char, const std::vector<double>*>, 3> axes = {
        std::pair{'x', &rec.x}, std::pair{'y', &rec.y}, std::pair{'z', &rec.z}};
    for (const auto& [name, values] : axes) {
        std::size_t reported = 0;
        std::size_t suppressed = 0;
        for (std::size_t i = 0; i < values->size(); ++i) {
            const double v = (*values)[i];
            std::optional<Type> type;
            std::ostringstream os;
            if (!std::isfinite(v)) {
                type = Type::NonFinite;
                os << "non-finite sample on axis " << name << " at index " << i;
            } else if (std::abs(v) > full_scale_g) {
                type = Type::OutOfRange;
                os << "sample " << v << " on axis " << name << " at index " << i
                   << " exceeds full scale " << full_scale_g << " g";
            }
            if (!type) continue;
            if (reported < kMaxFindingsPerAxis) {
                report.findings.push_back({*type, name, i, os.str()});
                ++reported;
            } else {
                ++suppressed;
            }
        }
        if (suppressed > 0) {
            report.findings.push_back({Type::NonFinite, name, 0,
                                       std::to_string(suppressed) +
                                           " further invalid samples on axis " + name});
        }
    }
    return report;
}

void require_valid(const RawRecording& rec, double full_scale_g) {
    const auto report = validate_recording(rec, full_scale_g);
    if (!report.ok()) {
        throw ValidationError("recording '" + rec.subject_id + "' is invalid: " + report.summary());
    }
}

}  // namespace actimetrics
