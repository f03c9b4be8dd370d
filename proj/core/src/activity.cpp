#include "actimetrics/activity.hpp"

#include "actimetrics/combine.hpp"
#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

const PreprocessedSeries& require_dataset(const DatasetMap& datasets, DatasetKind kind) {
    const auto it = datasets.find(kind);
    if (it == datasets.end()) {
        throw MissingDataset("dataset " + std::string(to_string(kind)) + " is not available");
    }
    return it->second;
}

std::vector<double> per_epoch(const PreprocessedSeries& series, double epoch_s,
                              const auto& fn) {
    const auto epochs = slice_epochs(series, epoch_s);
    std::vector<double> out;
    out.reserve(epochs.size());
    for (const Epoch& e : epochs) out.push_back(fn(e));
    return out;
}

}  // namespace

ActivitySignal activity_on_series(const VariantDescriptor& variant, const PreprocessedSeries& series,
                                  double epoch_s) {
    if (variant.is_triple()) {
        throw ConfigError(variant.label() + " reads an axis triple, not a single series");
    }
    const bool want_squared = variant.squared_input();
    if (series.kind != variant.kind() || series.squared != want_squared) {
        throw InvalidKind(variant.label() + " cannot run on " +
                          series_label(series.kind, series.squared));
    }

    const VariantOptions& opt = variant.options();
    std::vector<double> values;
    switch (variant.metric()) {
        case MetricId::PIM:
            values = per_epoch(series, epoch_s,
                               [&](const Epoch& e) { return pim_corrected(e, opt.integration); });
            break;
        case MetricId::ZCM: {
            const double t = resolve_threshold(opt.threshold, series);
            values = per_epoch(series, epoch_s,
                               [t](const Epoch& e) { return static_cast<double>(zcm(e, t)); });
            break;
        }
        case MetricId::TAT: {
            const double t = resolve_threshold(opt.threshold, series);
            values = per_epoch(series, epoch_s, [t](const Epoch& e) { return tat(e, t); });
            break;
        }
        case MetricId::MAD:
            values = per_epoch(series, epoch_s, [](const Epoch& e) { return mad(e); });
            break;
        case MetricId::ENMO:
            values = per_epoch(series, epoch_s, [](const Epoch& e) { return enmo(e); });
            break;
        case MetricId::HFEN:
            values = per_epoch(series, epoch_s, [](const Epoch& e) { return hfen(e); });
            break;
        case MetricId::AI:
            throw InapplicableMetric("AI needs an axis triple");
    }
    if (variant.combination() == CombinationRule::SquareEachAxis) {
        for (double& v : values) v *= v;
    }
    return ActivitySignal{variant, epoch_s, std::move(values)};
}

ActivitySignal compute_activity(const VariantDescriptor& variant, const DatasetMap& datasets,
                                double epoch_s, const ActivityOptions& options) {
    if (!variant.is_triple()) {
        const PreprocessedSeries& series = require_dataset(datasets, variant.kind());
        if (variant.squared_input()) {
            return activity_on_series(variant, squared_series(series), epoch_s);
        }
        return activity_on_series(variant, series, epoch_s);
    }

    const auto axes = axes_of(variant.family());
    const PreprocessedSeries& sx = require_dataset(datasets, axes[0]);
    const PreprocessedSeries& sy = require_dataset(datasets, axes[1]);
    const PreprocessedSeries& sz = require_dataset(datasets, axes[2]);

    if (variant.metric() == MetricId::AI) {
        NoiseVarianceEstimate noise;
        if (options.sigma_bar_sq) {
            noise.sigma_bar_sq = *options.sigma_bar_sq;
            noise.window_length_s = options.noise_window_s;
        } else {
            noise = estimate_noise_variance(sx.values, sy.values, sz.values, sx.sample_rate_hz,
                                            options.noise_window_s);
        }
        const auto ex = slice_epochs(sx, epoch_s);
        const auto ey = slice_epochs(sy, epoch_s);
        const auto ez = slice_epochs(sz, epoch_s);
        if (ex.size() != ey.size() || ex.size() != ez.size()) {
            throw LengthMismatch("AI axes have different epoch counts");
        }
        std::vector<double> values;
        values.reserve(ex.size());
        for (std::size_t i = 0; i < ex.size(); ++i) {
            values.push_back(ai(ex[i], ey[i], ez[i], noise, variant.options().ai_formula));
        }
        return ActivitySignal{variant, epoch_s, std::move(values)};
    }

    const auto per_axis = [&](DatasetKind axis) {
        const auto d = VariantDescriptor::make(variant.metric(), axis, CombinationRule::None,
                                               variant.squared_input(), variant.options());
        return compute_activity(d, datasets, epoch_s, options);
    };
    return combine_axial(per_axis(axes[0]), per_axis(axes[1]), per_axis(axes[2]),
                         variant.combination());
}

}  // namespace actimetrics
