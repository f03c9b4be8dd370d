#include "actimetrics/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

using cplx = std::complex<double>;

// Poles of the normalized analog Butterworth lowpass of the given order.
std::vector<cplx> butterworth_prototype(int order) {
    std::vector<cplx> poles;
    poles.reserve(static_cast<std::size_t>(order));
    for (int m = -order + 1; m < order; m += 2) {
        const double angle = std::numbers::pi * m / (2.0 * order);
        poles.push_back(-std::polar(1.0, angle));
    }
    return poles;
}

double prewarp(double freq_hz, double fs) {
    return 2.0 * fs * std::tan(std::numbers::pi * freq_hz / fs);
}

cplx bilinear(cplx s, double fs2) { return (fs2 + s) / (fs2 - s); }

bool is_real(cplx p) { return std::abs(p.imag()) <= 1e-12 * std::max(1.0, std::abs(p)); }

// Groups digital poles into biquad denominators, ordered by increasing pole radius.
std::vector<std::array<double, 2>> pair_poles(const std::vector<cplx>& poles) {
    std::vector<cplx> upper;
    std::vector<double> reals;
    for (const cplx& p : poles) {
        if (is_real(p)) {
            reals.push_back(p.real());
        } else if (p.imag() > 0.0) {
            upper.push_back(p);
        }
    }
    std::sort(upper.begin(), upper.end(),
              [](cplx l, cplx r) { return std::abs(l) < std::abs(r); });
    std::sort(reals.begin(), reals.end(),
              [](double l, double r) { return std::abs(l) < std::abs(r); });

    std::vector<std::pair<double, std::array<double, 2>>> dens;
    for (const cplx& p : upper) {
        dens.push_back({std::abs(p), {-2.0 * p.real(), std::norm(p)}});
    }
    for (std::size_t i = 0; i < reals.size(); i += 2) {
        if (i + 1 < reals.size()) {
            const double p1 = reals[i];
            const double p2 = reals[i + 1];
            dens.push_back({std::abs(p2), {-(p1 + p2), p1 * p2}});
        } else {
            dens.push_back({std::abs(reals[i]), {-reals[i], 0.0}});
        }
    }
    std::stable_sort(dens.begin(), dens.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<std::array<double, 2>> out;
    out.reserve(dens.size());
    for (const auto& d : dens) out.push_back(d.second);
    return out;
}

void run_cascade(std::span<const double> in, std::vector<double>& out,
                 const FilterRealization& filt) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = filt.gain * in[i];
    for (const SecondOrderSection& s : filt.sections) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (double& v : out) {
            const double x = v;
            const double y = s.b[0] * x + s1;
            s1 = s.b[1] * x - s.a[0] * y + s2;
            s2 = s.b[2] * x - s.a[1] * y;
            v = y;
        }
    }
}

}  // namespace

FilterSpec FilterSpec::default_bandpass(double sample_rate_hz) {
    return FilterSpec{FilterTopology::Bandpass, 3, 0.25, 2.5, sample_rate_hz, FilterPhase::Causal};
}

FilterSpec FilterSpec::hfen_highpass(double sample_rate_hz) {
    return FilterSpec{FilterTopology::Highpass, 4, 0.2, 0.0, sample_rate_hz, FilterPhase::Causal};
}

std::string FilterSpec::describe() const {
    std::ostringstream os;
    os << "butterworth ";
    if (topology == FilterTopology::Bandpass) {
        os << "bandpass order=" << order << " f_low=" << f_low_hz << "Hz f_high=" << f_high_hz
           << "Hz";
    } else {
        os << "highpass order=" << order << " cutoff=" << f_low_hz << "Hz";
    }
    os << " fs=" << sample_rate_hz << "Hz " << (phase == FilterPhase::Causal ? "causal" : "zero-phase");
    return os.str();
}

void validate(const FilterSpec& spec) {
    if (spec.order < 1) throw InvalidCutoffs("filter order must be at least 1");
    if (!(spec.sample_rate_hz > 0.0)) throw InvalidCutoffs("filter sample rate must be positive");
    const double nyquist = spec.sample_rate_hz / 2.0;
    if (spec.topology == FilterTopology::Bandpass) {
        if (!(spec.f_low_hz > 0.0 && spec.f_low_hz < spec.f_high_hz && spec.f_high_hz < nyquist)) {
            std::ostringstream os;
            os << "bandpass cutoffs must satisfy 0 < f_low < f_high < " << nyquist << " Hz, got "
               << spec.f_low_hz << " / " << spec.f_high_hz;
            throw InvalidCutoffs(os.str());
        }
    } else if (!(spec.f_low_hz > 0.0 && spec.f_low_hz < nyquist)) {
        std::ostringstream os;
        os << "highpass cutoff must lie in (0, " << nyquist << ") Hz, got " << spec.f_low_hz;
        throw InvalidCutoffs(os.str());
    }
}

FilterRealization design_filter(const FilterSpec& spec) {
    validate(spec);
    const double fs = spec.sample_rate_hz;
    const double fs2 = 2.0 * fs;
    const auto proto = butterworth_prototype(spec.order);
    const std::size_t order = proto.size();

    std::vector<cplx> analog_poles;
    cplx analog_gain = 1.0;
    if (spec.topology == FilterTopology::Bandpass) {
        const double wl = prewarp(spec.f_low_hz, fs);
        const double wh = prewarp(spec.f_high_hz, fs);
        const double w0 = std::sqrt(wl * wh);
        const double bw = wh - wl;
        for (const cplx& p : proto) {
            const cplx half = p * bw / 2.0;
            const cplx root = std::sqrt(half * half - w0 * w0);
            analog_poles.push_back(half + root);
            analog_poles.push_back(half - root);
        }
        analog_gain = std::pow(bw, static_cast<double>(order));
    } else {
        const double wc = prewarp(spec.f_low_hz, fs);
        cplx prod = 1.0;
        for (const cplx& p : proto) {
            analog_poles.push_back(wc / p);
            prod *= -p;
        }
        analog_gain = 1.0 / prod;
    }

    // Zeros at s = 0 map to z = 1; the bandpass also has `order` zeros at infinity,
    // which map to z = -1.
    FilterRealization out;
    out.spec = spec;
    cplx denom = 1.0;
    for (const cplx& p : analog_poles) {
        out.poles.push_back(bilinear(p, fs2));
        denom *= (fs2 - p);
    }
    out.gain = (analog_gain * std::pow(fs2, static_cast<double>(order)) / denom).real();

    for (const cplx& p : out.poles) {
        if (!(std::abs(p) < 1.0)) throw UnstableDesign("designed filter has a pole on or outside the unit circle");
    }

    const auto dens = pair_poles(out.poles);
    std::size_t zeros_at_one = order;
    for (const auto& a : dens) {
        SecondOrderSection s;
        s.a = a;
        const bool first_order = a[1] == 0.0;
        if (spec.topology == FilterTopology::Bandpass) {
            s.b = {1.0, 0.0, -1.0};  // (1 - z^-1)(1 + z^-1)
        } else if (first_order || zeros_at_one == 1) {
            s.b = {1.0, -1.0, 0.0};
            zeros_at_one -= 1;
        } else {
            s.b = {1.0, -2.0, 1.0};
            zeros_at_one -= 2;
        }
        out.sections.push_back(s);
    }
    return out;
}

std::complex<double> FilterRealization::response(double freq_hz) const {
    const double omega = 2.0 * std::numbers::pi * freq_hz / spec.sample_rate_hz;
    const cplx zi = std::polar(1.0, -omega);  // z^-1
    const cplx zi2 = zi * zi;
    cplx h = gain;
    for (const auto& s : sections) {
        h *= (s.b[0] + s.b[1] * zi + s.b[2] * zi2) / (1.0 + s.a[0] * zi + s.a[1] * zi2);
    }
    return h;
}

double FilterRealization::max_pole_radius() const {
    double r = 0.0;
    for (const cplx& p : poles) r = std::max(r, std::abs(p));
    return r;
}

std::vector<double> filter_samples(std::span<const double> input, const FilterRealization& filt) {
    std::vector<double> out;
    run_cascade(input, out, filt);
    if (filt.spec.phase == FilterPhase::ZeroPhase) {
        std::reverse(out.begin(), out.end());
        std::vector<double> back;
        run_cascade(out, back, filt);
        std::reverse(back.begin(), back.end());
        return back;
    }
    return out;
}

PreprocessedSeries apply_filter(const PreprocessedSeries& series, const FilterRealization& filt) {
    if (series.squared) throw InvalidKind("cannot filter a squared series");
    if (series.sample_rate_hz != filt.spec.sample_rate_hz) {
        std::ostringstream os;
        os << "series sampled at " << series.sample_rate_hz << " Hz but filter designed for "
           << filt.spec.sample_rate_hz << " Hz";
        throw RateMismatch(os.str());
    }
    PreprocessedSeries out;
    switch (series.kind) {
        case DatasetKind::UFX: out.kind = DatasetKind::FX; break;
        case DatasetKind::UFY: out.kind = DatasetKind::FY; break;
        case DatasetKind::UFZ: out.kind = DatasetKind::FZ; break;
        case DatasetKind::UFM: out.kind = DatasetKind::FMpost; break;
        default:
            throw InvalidKind("apply_filter expects a raw axis or UFM, got " +
                              std::string(to_string(series.kind)));
    }
    out.sample_rate_hz = series.sample_rate_hz;
    out.provenance = filt.spec.describe();
    out.values = filter_samples(series.values, filt);
    return out;
}

}  // namespace actimetrics
