#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

#include "actimetrics/activity.hpp"
#include "actimetrics/combine.hpp"
#include "actimetrics/errors.hpp"
#include "actimetrics/synth.hpp"
#include "oracles.hpp"

using namespace actimetrics;

namespace {

RawRecording rest(std::size_t n, double noise_sd, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    RawRecording r;
    r.subject_id = "rest";
    r.x = oracle::gaussian(rng, n, noise_sd);
    r.y = oracle::gaussian(rng, n, noise_sd);
    r.z = oracle::gaussian(rng, n, noise_sd);
    for (double& v : r.z) v += 1.0;
    return r;
}

const DatasetMap& active_maps() {
    static const DatasetMap maps = [] {
        SyntheticSpec spec;
        spec.duration_s = 7200.0;
        spec.rest_mean_s = 600.0;
        spec.active_mean_s = 600.0;
        spec.seed = 77;
        return preprocess_all(synthesize(spec));
    }();
    return maps;
}

}  // namespace

TEST(ComputeActivity, MadOnRestAxisIsZero) {
    const auto maps = preprocess_all(rest(3600, 0.0));
    const auto s = compute_activity(VariantDescriptor::single(MetricId::MAD, DatasetKind::UFX), maps, 60.0);
    EXPECT_EQ(s.size(), 6u);
    for (double v : s.values) EXPECT_EQ(v, 0.0);
}

TEST(ComputeActivity, TatAdaptiveOnRestMatchesGaussianTail) {
    const auto rec = rest(36000, 0.002, 3);
    const auto maps = preprocess_all(rec);
    const auto s = compute_activity(VariantDescriptor::single(MetricId::TAT, DatasetKind::UFM), maps, 60.0);
    const auto& ufm = maps.at(DatasetKind::UFM).values;
    long double m = 0, v = 0;
    for (double x : ufm) m += x;
    m /= ufm.size();
    for (double x : ufm) v += (x - m) * (x - m);
    const double threshold = static_cast<double>(std::sqrt(v / ufm.size())) + 1.0;
    double total = 0.0;
    for (std::size_t e = 0; e < s.size(); ++e) {
        const std::span<const double> epoch(ufm.data() + e * 600, 600);
        EXPECT_DOUBLE_EQ(s.values[e], 0.1 * static_cast<double>(oracle::tat(epoch, threshold)));
        total += s.values[e];
    }
    // Gaussian tail above one SD
    EXPECT_NEAR(total / static_cast<double>(s.size()), 0.1587 * 60.0, 0.1 * 0.1587 * 60.0);
}

TEST(ComputeActivity, InapplicableAndMissing) {
    const auto maps = preprocess_all(rest(1200, 0.0));
    EXPECT_THROW(VariantDescriptor::single(MetricId::ENMO, DatasetKind::FMpre), InapplicableMetric);
    DatasetMap partial = maps;
    partial.erase(DatasetKind::HfenSpecial);
    EXPECT_THROW(compute_activity(VariantDescriptor::single(MetricId::HFEN, DatasetKind::HfenSpecial), partial, 60.0),
                 MissingDataset);
}

TEST(ComputeActivity, AiZeroOnConstantRecording) {
    RawRecording r;
    r.x.assign(1800, 0.6);
    r.y.assign(1800, 0.0);
    r.z.assign(1800, 0.8);
    const auto maps = preprocess_all(r);
    ActivityOptions opts;
    opts.sigma_bar_sq = 0.0;
    const auto s = compute_activity(VariantDescriptor::triple(MetricId::AI, AxisFamily::Unfiltered), maps, 60.0, opts);
    for (double v : s.values) EXPECT_EQ(v, 0.0);
}

TEST(ComputeActivity, TripleEqualsCombinedAxes) {
    const auto& maps = active_maps();
    std::vector<ActivitySignal> axes;
    for (const auto k : axes_of(AxisFamily::Filtered)) {
        axes.push_back(compute_activity(VariantDescriptor::single(MetricId::ZCM, k), maps, 60.0));
    }
    for (const auto rule : {CombinationRule::SumAxes, CombinationRule::VM3, CombinationRule::SumOfSquares}) {
        const auto direct = compute_activity(VariantDescriptor::triple(MetricId::ZCM, AxisFamily::Filtered, rule),
                                             maps, 60.0);
        const auto combined = combine_axial(axes[0], axes[1], axes[2], rule);
        EXPECT_EQ(direct.label(), combined.label());
        EXPECT_EQ(direct.values, combined.values);
    }
}

TEST(ComputeActivity, SquaredAxisUsesSquaredSeriesThreshold) {
    const auto& maps = active_maps();
    const auto s = compute_activity(VariantDescriptor::on_squared_axis(MetricId::TAT, DatasetKind::FX), maps, 60.0);
    const auto sq = squared_series(maps.at(DatasetKind::FX));
    const double t = sd_threshold(sq);
    for (std::size_t e = 0; e < s.size(); ++e) {
        const std::span<const double> epoch(sq.values.data() + e * 600, 600);
        ASSERT_DOUBLE_EQ(s.values[e], 0.1 * static_cast<double>(oracle::tat(epoch, t)));
    }
}

TEST(ComputeActivity, EveryCatalogEntryNonNegative) {
    const auto& maps = active_maps();
    CatalogConfig cfg;
    cfg.both_integration_methods = true;
    cfg.include_unfiltered_axis_families = true;
    for (const auto& v : catalog(cfg)) {
        std::optional<ActivitySignal> r;
        ASSERT_NO_THROW(r.emplace(compute_activity(v, maps, 60.0))) << v.label();
        const auto& s = *r;
        EXPECT_EQ(s.size(), 120u) << v.label();
        for (double x : s.values) {
            ASSERT_TRUE(std::isfinite(x)) << v.label();
            ASSERT_GE(x, 0.0) << v.label();
        }
    }
}
