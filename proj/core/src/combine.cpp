#include "actimetrics/combine.hpp"

#include <fnmatch.h>

#include <cmath>
#include <set>

#include "actimetrics/activity.hpp"
#include "actimetrics/errors.hpp"

namespace actimetrics {

double vm3(double a_x, double a_y, double a_z) noexcept {
    return std::sqrt(a_x * a_x + a_y * a_y + a_z * a_z);
}

ActivitySignal combine_axial(const ActivitySignal& ax, const ActivitySignal& ay,
                             const ActivitySignal& az, CombinationRule rule) {
    if (!reduces_triple(rule)) {
        throw ConfigError("combine_axial reduces an axis triple; " + std::string(to_string(rule)) +
                          " is not a triple rule");
    }
    const auto& vx = ax.variant;
    const auto& vy = ay.variant;
    const auto& vz = az.variant;
    const auto plain_axis = [](const VariantDescriptor& v) {
        return !v.is_triple() && is_axis(v.kind()) &&
               (v.combination() == CombinationRule::None ||
                v.combination() == CombinationRule::MetricOnSquaredAxis);
    };
    if (!plain_axis(vx) || !plain_axis(vy) || !plain_axis(vz)) {
        throw LabelMismatch("combine_axial needs three single-axis signals");
    }
    const AxisFamily family = is_filtered_axis(vx.kind()) ? AxisFamily::Filtered : AxisFamily::Unfiltered;
    const auto axes = axes_of(family);
    if (vx.kind() != axes[0] || vy.kind() != axes[1] || vz.kind() != axes[2]) {
        throw LabelMismatch("combine_axial needs the x, y, z axes of one family, got " +
                            vx.label() + ", " + vy.label() + ", " + vz.label());
    }
    if (vx.metric() != vy.metric() || vx.metric() != vz.metric() ||
        vx.squared_input() != vy.squared_input() || vx.squared_input() != vz.squared_input()) {
        throw LabelMismatch("combine_axial inputs differ in metric or squaring: " + vx.label() +
                            ", " + vy.label() + ", " + vz.label());
    }
    if (ax.size() != ay.size() || ax.size() != az.size() ||
        ax.epoch_length_s != ay.epoch_length_s || ax.epoch_length_s != az.epoch_length_s) {
        throw LengthMismatch("combine_axial inputs differ in length or epoch length");
    }

    ActivitySignal out{VariantDescriptor::triple(vx.metric(), family, rule, vx.squared_input(),
                                                 vx.options()),
                       ax.epoch_length_s,
                       std::vector<double>(ax.size())};
    for (std::size_t i = 0; i < ax.size(); ++i) {
        const double a = ax.values[i];
        const double b = ay.values[i];
        const double c = az.values[i];
        switch (rule) {
            case CombinationRule::SumAxes: out.values[i] = a + b + c; break;
            case CombinationRule::SqrtOfSumAxes: out.values[i] = std::sqrt(a + b + c); break;
            case CombinationRule::SumOfSquares: out.values[i] = a * a + b * b + c * c; break;
            default: out.values[i] = vm3(a, b, c); break;
        }
    }
    return out;
}

ActivitySignal square_activity(const ActivitySignal& axis_signal) {
    const auto& v = axis_signal.variant;
    if (v.is_triple() || v.combination() != CombinationRule::None) {
        throw ConfigError("square_activity expects a plain single-axis signal, got " + v.label());
    }
    ActivitySignal out{VariantDescriptor::squared_activity(v.metric(), v.kind(), v.options()),
                       axis_signal.epoch_length_s, axis_signal.values};
    for (double& x : out.values) x *= x;
    return out;
}

ActivitySignal metric_on_squared_axis(MetricId metric, const PreprocessedSeries& axis_series,
                                      double epoch_s, VariantOptions options) {
    const auto variant = VariantDescriptor::on_squared_axis(metric, axis_series.kind, options);
    return activity_on_series(variant, squared_series(axis_series), epoch_s);
}

bool label_matches(const std::string& label, const std::string& pattern) {
    return ::fnmatch(pattern.c_str(), label.c_str(), 0) == 0;
}

std::vector<VariantDescriptor> catalog(const CatalogConfig& config) {
    using K = DatasetKind;
    using R = CombinationRule;
    std::vector<VariantDescriptor> all;

    std::vector<VariantOptions> pim_options{config.options};
    if (config.both_integration_methods) {
        pim_options = {config.options, config.options};
        pim_options[0].integration = IntegrationMethod::RiemannSum;
        pim_options[1].integration = IntegrationMethod::Simpson38;
    }
    const auto options_for = [&](MetricId m) {
        return m == MetricId::PIM ? pim_options : std::vector<VariantOptions>{config.options};
    };

    constexpr std::array<MetricId, 4> axial = {MetricId::PIM, MetricId::ZCM, MetricId::TAT,
                                               MetricId::MAD};
    for (const MetricId m : axial) {
        for (const auto& opt : options_for(m)) {
            for (const K kind : {K::UFM, K::UFNM, K::FMpre, K::FMpost}) {
                all.push_back(VariantDescriptor::single(m, kind, opt));
            }
        }
    }
    all.push_back(VariantDescriptor::single(MetricId::ENMO, K::UFM, config.options));
    all.push_back(VariantDescriptor::single(MetricId::HFEN, K::HfenSpecial, config.options));
    all.push_back(VariantDescriptor::triple(MetricId::AI, AxisFamily::Unfiltered, R::None, false,
                                            config.options));
    all.push_back(VariantDescriptor::triple(MetricId::AI, AxisFamily::Filtered, R::None, false,
                                            config.options));

    std::vector<AxisFamily> families{AxisFamily::Filtered};
    if (config.include_unfiltered_axis_families) families.insert(families.begin(), AxisFamily::Unfiltered);
    else {
        for (const K axis : axes_of(AxisFamily::Unfiltered)) {
            all.push_back(VariantDescriptor::single(MetricId::MAD, axis, config.options));
        }
    }

    for (const AxisFamily family : families) {
        const auto axes = axes_of(family);
        for (const MetricId m : axial) {
            if (!applicability(m, axes[0]).usable()) continue;
            for (const auto& opt : options_for(m)) {
                for (const K axis : axes) all.push_back(VariantDescriptor::single(m, axis, opt));
                all.push_back(VariantDescriptor::triple(m, family, R::SumAxes, false, opt));
                all.push_back(VariantDescriptor::triple(m, family, R::SqrtOfSumAxes, false, opt));
                for (const K axis : axes) all.push_back(VariantDescriptor::squared_activity(m, axis, opt));
                all.push_back(VariantDescriptor::triple(m, family, R::SumOfSquares, false, opt));
                all.push_back(VariantDescriptor::triple(m, family, R::VM3, false, opt));
                for (const K axis : axes) all.push_back(VariantDescriptor::on_squared_axis(m, axis, opt));
                all.push_back(VariantDescriptor::triple(m, family, R::SumAxes, true, opt));
                all.push_back(VariantDescriptor::triple(m, family, R::SqrtOfSumAxes, true, opt));
            }
        }
    }

    std::vector<VariantDescriptor> out;
    std::set<std::string> seen;
    for (auto& d : all) {
        const auto matches_any = [&](const std::vector<std::string>& patterns) {
            for (const auto& p : patterns) {
                if (label_matches(d.label(), p)) return true;
            }
            return false;
        };
        if (!matches_any(config.include) || matches_any(config.exclude)) continue;
        if (!seen.insert(d.label()).second) continue;
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace actimetrics
