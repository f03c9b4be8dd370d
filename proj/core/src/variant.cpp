#include "actimetrics/variant.hpp"

#include <charconv>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

std::string metric_name(MetricId metric, const VariantOptions& options) {
    std::string name(to_string(metric));
    if (metric == MetricId::PIM && options.integration == IntegrationMethod::Simpson38) name += "s";
    return name;
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string threshold_suffix(MetricId metric, const VariantOptions& options) {
    if (!is_threshold_metric(metric) || options.threshold.mode != ThresholdPolicy::Mode::Fixed) {
        return {};
    }
    return "@" + shortest(options.threshold.fixed_value) + "g";
}

std::string rule_name(CombinationRule rule) {
    switch (rule) {
        case CombinationRule::SumAxes: return "SUM";
        case CombinationRule::SqrtOfSumAxes: return "SQRTSUM";
        case CombinationRule::SumOfSquares: return "SUMSQ";
        case CombinationRule::VM3: return "VM3";
        default: return std::string(to_string(rule));
    }
}

VariantOptions normalized(MetricId metric, VariantOptions options) {
    if (!is_threshold_metric(metric)) options.threshold = ThresholdPolicy{};
    if (metric != MetricId::PIM) options.integration = IntegrationMethod::RiemannSum;
    if (metric != MetricId::AI) options.ai_formula = AiFormula::Typeset;
    return options;
}

std::string base_units(MetricId metric, bool squared) {
    switch (metric) {
        case MetricId::PIM: return squared ? "g²·s" : "g·s";
        case MetricId::ZCM: return "crossings";
        case MetricId::TAT: return "s";
        case MetricId::MAD: return squared ? "g²" : "g";
        default: return "g";
    }
}

}  // namespace

std::string_view to_string(CombinationRule rule) noexcept {
    switch (rule) {
        case CombinationRule::None: return "None";
        case CombinationRule::SumAxes: return "SumAxes";
        case CombinationRule::SqrtOfSumAxes: return "SqrtOfSumAxes";
        case CombinationRule::SquareEachAxis: return "SquareEachAxis";
        case CombinationRule::SumOfSquares: return "SumOfSquares";
        case CombinationRule::VM3: return "VM3";
        case CombinationRule::MetricOnSquaredAxis: return "MetricOnSquaredAxis";
    }
    return "?";
}

VariantDescriptor VariantDescriptor::make(MetricId metric, VariantSource source,
                                          CombinationRule combination, bool squared_input,
                                          VariantOptions options) {
    VariantDescriptor d;
    d.metric_ = metric;
    d.source_ = source;
    d.options_ = normalized(metric, options);
    const std::string name = metric_name(metric, d.options_);
    const std::string suffix = threshold_suffix(metric, d.options_);

    if (const auto* kind = std::get_if<DatasetKind>(&source)) {
        if (metric == MetricId::AI) {
            throw InapplicableMetric("AI is inapplicable on a single dataset (" +
                                     std::string(to_string(*kind)) +
                                     "): it needs the three axes of UFXYZ or FXYZ");
        }
        require_applicable(metric, *kind);
        if (combination == CombinationRule::None && squared_input) {
            combination = CombinationRule::MetricOnSquaredAxis;
        }
        const std::string k(to_string(*kind));
        switch (combination) {
            case CombinationRule::None:
                if (metric == MetricId::ENMO || metric == MetricId::HFEN) {
                    d.label_ = name;
                } else {
                    d.label_ = name + "(" + k + ")" + suffix;
                }
                break;
            case CombinationRule::MetricOnSquaredAxis:
            case CombinationRule::SquareEachAxis:
                if (!is_axial_metric(metric) || !is_axis(*kind)) {
                    throw ConfigError(std::string(to_string(combination)) +
                                      " needs an axial metric (PIM, ZCM, TAT, MAD) on one axis");
                }
                if (combination == CombinationRule::SquareEachAxis && squared_input) {
                    throw ConfigError("SquareEachAxis cannot be combined with squared samples");
                }
                squared_input = combination == CombinationRule::MetricOnSquaredAxis;
                d.label_ = squared_input ? name + "(" + k + "²)" + suffix
                                         : name + "(" + k + ")²" + suffix;
                break;
            default:
                throw ConfigError(std::string(to_string(combination)) +
                                  " combines an axis triple; use an axis family source");
        }
    } else {
        const AxisFamily family = std::get<AxisFamily>(source);
        require_applicable(metric, axes_of(family)[0]);
        const std::string f(to_string(family));
        if (metric == MetricId::AI) {
            if (combination != CombinationRule::None || squared_input) {
                throw ConfigError("AI reads the axis triple directly and takes no combination rule");
            }
            d.label_ = name + "(" + f + ")";
        } else {
            if (!is_axial_metric(metric) || !reduces_triple(combination)) {
                throw ConfigError(std::string(to_string(metric)) + " on " + f +
                                  " needs one of SumAxes, SqrtOfSumAxes, SumOfSquares, VM3");
            }
            d.label_ = rule_name(combination) + "[" + name + "," + f + (squared_input ? "²" : "") +
                       "]" + suffix;
        }
    }
    d.combination_ = combination;
    d.squared_input_ = squared_input;
    return d;
}

VariantDescriptor VariantDescriptor::single(MetricId metric, DatasetKind kind, VariantOptions options) {
    return make(metric, kind, CombinationRule::None, false, options);
}

VariantDescriptor VariantDescriptor::on_squared_axis(MetricId metric, DatasetKind axis,
                                                     VariantOptions options) {
    return make(metric, axis, CombinationRule::MetricOnSquaredAxis, true, options);
}

VariantDescriptor VariantDescriptor::squared_activity(MetricId metric, DatasetKind axis,
                                                      VariantOptions options) {
    return make(metric, axis, CombinationRule::SquareEachAxis, false, options);
}

VariantDescriptor VariantDescriptor::triple(MetricId metric, AxisFamily family, CombinationRule rule,
                                            bool squared_axes, VariantOptions options) {
    return make(metric, family, rule, squared_axes, options);
}

std::vector<DatasetKind> VariantDescriptor::required_kinds() const {
    if (const auto* kind = std::get_if<DatasetKind>(&source_)) return {*kind};
    const auto axes = axes_of(std::get<AxisFamily>(source_));
    return {axes.begin(), axes.end()};
}

std::string VariantDescriptor::units() const {
    const std::string u = base_units(metric_, squared_input_);
    switch (combination_) {
        case CombinationRule::SquareEachAxis:
        case CombinationRule::SumOfSquares: return "(" + u + ")²";
        case CombinationRule::SqrtOfSumAxes: return "sqrt(" + u + ")";
        default: return u;
    }
}

}  // namespace actimetrics
