#include "actimetrics/preprocess.hpp"

#include <cmath>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

PreprocessedSeries raw_axis(const std::vector<double>& values, DatasetKind kind, double fs) {
    PreprocessedSeries s;
    s.kind = kind;
    s.values = values;
    s.sample_rate_hz = fs;
    return s;
}

void require_same_length(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || a != c) {
        throw LengthMismatch("axis lengths differ: " + std::to_string(a) + ", " +
                             std::to_string(b) + ", " + std::to_string(c));
    }
}

std::vector<double> norm3(std::span<const double> x, std::span<const double> y,
                          std::span<const double> z) {
    require_same_length(x.size(), y.size(), z.size());
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
    }
    return out;
}

FilterSpec at_rate(FilterSpec spec, double fs) {
    spec.sample_rate_hz = fs;
    return spec;
}

}  // namespace

PreprocessedSeries magnitude(std::span<const double> x, std::span<const double> y,
                             std::span<const double> z, double sample_rate_hz) {
    PreprocessedSeries out;
    out.kind = DatasetKind::UFM;
    out.sample_rate_hz = sample_rate_hz;
    out.values = norm3(x, y, z);
    return out;
}

PreprocessedSeries normalize_magnitude(const PreprocessedSeries& ufm) {
    if (ufm.kind != DatasetKind::UFM || ufm.squared) {
        throw InvalidKind("normalize_magnitude expects UFM, got " +
                          series_label(ufm.kind, ufm.squared));
    }
    PreprocessedSeries out = ufm;
    out.kind = DatasetKind::UFNM;
    for (double& v : out.values) v = std::abs(v - kGravity);
    return out;
}

PreprocessedSeries fmpre(const PreprocessedSeries& fx, const PreprocessedSeries& fy,
                         const PreprocessedSeries& fz) {
    if (fx.kind != DatasetKind::FX || fy.kind != DatasetKind::FY || fz.kind != DatasetKind::FZ ||
        fx.squared || fy.squared || fz.squared) {
        throw InvalidKind("fmpre expects FX, FY, FZ");
    }
    PreprocessedSeries out;
    out.kind = DatasetKind::FMpre;
    out.sample_rate_hz = fx.sample_rate_hz;
    out.provenance = fx.provenance;
    out.values = norm3(fx.values, fy.values, fz.values);
    return out;
}

PreprocessedSeries hfen_preprocess(const RawRecording& rec, const FilterSpec& highpass) {
    require_same_length(rec.x.size(), rec.y.size(), rec.z.size());
    const auto filt = design_filter(at_rate(highpass, rec.sample_rate_hz));
    const auto hx = filter_samples(rec.x, filt);
    const auto hy = filter_samples(rec.y, filt);
    const auto hz = filter_samples(rec.z, filt);
    PreprocessedSeries out;
    out.kind = DatasetKind::HfenSpecial;
    out.sample_rate_hz = rec.sample_rate_hz;
    out.provenance = filt.spec.describe();
    out.values = norm3(hx, hy, hz);
    return out;
}

DatasetMap preprocess_all(const RawRecording& rec, const PreprocessOptions& options) {
    require_same_length(rec.x.size(), rec.y.size(), rec.z.size());
    const double fs = rec.sample_rate_hz;
    const auto bandpass = design_filter(at_rate(options.bandpass, fs));

    DatasetMap out;
    out[DatasetKind::UFX] = raw_axis(rec.x, DatasetKind::UFX, fs);
    out[DatasetKind::UFY] = raw_axis(rec.y, DatasetKind::UFY, fs);
    out[DatasetKind::UFZ] = raw_axis(rec.z, DatasetKind::UFZ, fs);
    for (const auto raw : {DatasetKind::UFX, DatasetKind::UFY, DatasetKind::UFZ}) {
        auto filtered = apply_filter(out.at(raw), bandpass);
        out[filtered.kind] = std::move(filtered);
    }
    out[DatasetKind::UFM] = magnitude(rec.x, rec.y, rec.z, fs);
    out[DatasetKind::UFNM] = normalize_magnitude(out.at(DatasetKind::UFM));
    out[DatasetKind::FMpre] =
        fmpre(out.at(DatasetKind::FX), out.at(DatasetKind::FY), out.at(DatasetKind::FZ));
    out[DatasetKind::FMpost] = apply_filter(out.at(DatasetKind::UFM), bandpass);
    out[DatasetKind::HfenSpecial] = hfen_preprocess(rec, options.hfen_highpass);
    return out;
}

DatasetMap preprocess_all(const RawRecording& rec, const FilterSpec& bandpass) {
    PreprocessOptions options;
    options.bandpass = bandpass;
    return preprocess_all(rec, options);
}

}  // namespace actimetrics
