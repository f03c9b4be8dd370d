#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "actimetrics/metrics.hpp"
#include "actimetrics/model.hpp"

namespace actimetrics {

/// How per-axis activity values are turned into one indicator.
///
/// SquareEachAxis and MetricOnSquaredAxis act on one axis: the first squares the
/// activity value of each epoch ("PIM(FX)²"), the second squares the samples before
/// the metric ("PIM(FX²)"). The remaining non-None rules reduce an axis triple.
enum class CombinationRule {
    None,
    SumAxes,
    SqrtOfSumAxes,
    SquareEachAxis,
    SumOfSquares,
    VM3,
    MetricOnSquaredAxis,
};

std::string_view to_string(CombinationRule rule) noexcept;

constexpr bool reduces_triple(CombinationRule r) noexcept {
    return r == CombinationRule::SumAxes || r == CombinationRule::SqrtOfSumAxes ||
           r == CombinationRule::SumOfSquares || r == CombinationRule::VM3;
}

/// A single dataset or an axis triple.
using VariantSource = std::variant<DatasetKind, AxisFamily>;

struct VariantOptions {
    ThresholdPolicy threshold{};                              // ZCM and TAT only
    IntegrationMethod integration = IntegrationMethod::RiemannSum;  // PIM only
    AiFormula ai_formula = AiFormula::Typeset;                // AI only
};

/// Names one activity computation. Instances are always legal: every factory checks the
/// applicability table and the combination constraints and throws InapplicableMetric
/// (or ConfigError for malformed combinations) otherwise.
///
/// Label grammar:
///   METRIC(KIND) | METRIC(AXIS) | METRIC(AXIS²) | METRIC(AXIS)² | RULE[METRIC,FAMILY]
///   | RULE[METRIC,FAMILY²]
/// with the bare names "ENMO" and "HFEN", "PIMs" for Simpson 3/8 integration, RULE one
/// of SUM, SQRTSUM, SUMSQ, VM3, and a "@<T>g" suffix for fixed ZCM/TAT thresholds.
class VariantDescriptor {
public:
    static VariantDescriptor make(MetricId metric, VariantSource source,
                                  CombinationRule combination = CombinationRule::None,
                                  bool squared_input = false, VariantOptions options = {});

    /// METRIC(KIND), or ENMO / HFEN on their own dataset.
    static VariantDescriptor single(MetricId metric, DatasetKind kind, VariantOptions options = {});
    /// METRIC(AXIS²)
    static VariantDescriptor on_squared_axis(MetricId metric, DatasetKind axis,
                                             VariantOptions options = {});
    /// METRIC(AXIS)²
    static VariantDescriptor squared_activity(MetricId metric, DatasetKind axis,
                                              VariantOptions options = {});
    /// AI(FAMILY) when rule is None, otherwise RULE[METRIC,FAMILY(²)].
    static VariantDescriptor triple(MetricId metric, AxisFamily family,
                                    CombinationRule rule = CombinationRule::None,
                                    bool squared_axes = false, VariantOptions options = {});

    MetricId metric() const noexcept { return metric_; }
    const VariantSource& source() const noexcept { return source_; }
    CombinationRule combination() const noexcept { return combination_; }
    /// True when the metric runs on squared samples.
    bool squared_input() const noexcept { return squared_input_; }
    const VariantOptions& options() const noexcept { return options_; }
    const std::string& label() const noexcept { return label_; }

    bool is_triple() const noexcept { return std::holds_alternative<AxisFamily>(source_); }
    /// Single dataset kind; throws std::bad_variant_access for triples.
    DatasetKind kind() const { return std::get<DatasetKind>(source_); }
    AxisFamily family() const { return std::get<AxisFamily>(source_); }

    /// Dataset kinds this variant reads.
    std::vector<DatasetKind> required_kinds() const;
    /// Units of the produced activity values.
    std::string units() const;

    friend bool operator==(const VariantDescriptor& a, const VariantDescriptor& b) {
        return a.label_ == b.label_;
    }

private:
    VariantDescriptor() = default;

    MetricId metric_ = MetricId::MAD;
    VariantSource source_ = DatasetKind::UFM;
    CombinationRule combination_ = CombinationRule::None;
    bool squared_input_ = false;
    VariantOptions options_{};
    std::string label_;
};

/// One value per epoch for a variant.
struct ActivitySignal {
    VariantDescriptor variant;
    double epoch_length_s = 60.0;
    std::vector<double> values;

    const std::string& label() const noexcept { return variant.label(); }
    std::string units() const { return variant.units(); }
    std::size_t size() const noexcept { return values.size(); }
};

}  // namespace actimetrics
