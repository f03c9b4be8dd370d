#include "actimetrics/config.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "actimetrics/errors.hpp"
#include "actimetrics/io.hpp"

namespace actimetrics {

namespace {

using json = nlohmann::json;

/// Reads keys from one JSON object and rejects the ones nobody asked for.
class Reader {
public:
    Reader(const json& node, std::string where) : node_(node), where_(std::move(where)) {
        if (!node_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    template <class T>
    void read(const std::string& key, T& out) {
        seen_.insert(key);
        if (!node_.contains(key)) return;
        try {
            out = node_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(path(key) + ": " + e.what());
        }
    }

    Reader child(const std::string& key) {
        seen_.insert(key);
        return Reader(node_.contains(key) ? node_.at(key) : empty(), path(key));
    }

    const json* raw(const std::string& key) {
        seen_.insert(key);
        return node_.contains(key) ? &node_.at(key) : nullptr;
    }

    std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.count(key)) throw ConfigError("unknown config key '" + path(key) + "'");
        }
    }

private:
    static const json& empty() {
        static const json e = json::object();
        return e;
    }

    const json& node_;
    std::string where_;
    std::set<std::string> seen_;
};

template <class E>
E pick(const std::string& where, const std::string& text,
       std::initializer_list<std::pair<const char*, E>> options) {
    std::string names;
    for (const auto& [name, value] : options) {
        if (text == name) return value;
        names += names.empty() ? name : std::string(", ") + name;
    }
    throw ConfigError(where + ": '" + text + "' is not one of " + names);
}

const char* phase_name(FilterPhase p) { return p == FilterPhase::Causal ? "causal" : "zero_phase"; }

}  // namespace

SyntheticSpec PipelineConfig::synth_spec() const {
    SyntheticSpec s = synth;
    s.seed = seed;
    s.sample_rate_hz = sample_rate_hz;
    s.full_scale_g = full_scale_g;
    return s;
}

CatalogConfig PipelineConfig::catalog_config() const {
    CatalogConfig c;
    c.options.threshold = threshold;
    c.options.integration = integration;
    c.options.ai_formula = ai_formula;
    c.both_integration_methods = both_integration_methods;
    c.include_unfiltered_axis_families = include_unfiltered_axis_families;
    c.include = include;
    c.exclude = exclude;
    return c;
}

PreprocessOptions PipelineConfig::preprocess_options() const {
    PreprocessOptions p;
    p.bandpass = bandpass;
    p.hfen_highpass = hfen_highpass;
    p.bandpass.sample_rate_hz = sample_rate_hz;
    p.hfen_highpass.sample_rate_hz = sample_rate_hz;
    return p;
}

ActivityOptions PipelineConfig::activity_options() const {
    ActivityOptions a;
    a.noise_window_s = ai_noise_window_s;
    a.sigma_bar_sq = sigma_bar_sq;
    return a;
}

SweepOptions PipelineConfig::sweep_options() const {
    SweepOptions s = sweep;
    s.epoch_s = epoch_s;
    return s;
}

void validate(const PipelineConfig& c) {
    if (!(c.sample_rate_hz > 0.0) || !std::isfinite(c.sample_rate_hz)) {
        throw ConfigError("sample_rate_hz must be positive");
    }
    samples_per_epoch(c.epoch_s, c.sample_rate_hz);
    const auto pre = c.preprocess_options();
    validate(pre.bandpass);
    validate(pre.hfen_highpass);
    if (pre.bandpass.topology != FilterTopology::Bandpass || pre.hfen_highpass.topology != FilterTopology::Highpass) {
        throw ConfigError("bandpass and hfen_highpass topologies are fixed");
    }
    if (c.threshold.mode == ThresholdPolicy::Mode::Fixed) ThresholdPolicy::fixed(c.threshold.fixed_value);
    if (!(c.ai_noise_window_s > 0.0)) throw ConfigError("ai.noise_window_s must be positive");
    if (c.sigma_bar_sq && !(*c.sigma_bar_sq >= 0.0)) throw ConfigError("ai.sigma_bar_sq must be >= 0");
    validate(c.psd);
    for (const auto& s : c.sweeps) {
        if (!is_threshold_metric(s.metric)) {
            throw ConfigError("sweeps: only ZCM and TAT can be swept, got " + std::string(to_string(s.metric)));
        }
        require_applicable(s.metric, s.kind);
    }
    if (!(c.sweep.step_g > 0.0)) throw ConfigError("sweep.step_g must be positive");
    if (c.sweep.max_steps < 1) throw ConfigError("sweep.max_steps must be >= 1");
    if (!(c.sweep.stop_fraction > 0.0 && c.sweep.stop_fraction < 1.0)) {
        throw ConfigError("sweep.stop_fraction must lie in (0, 1)");
    }
    if (!(c.full_scale_g > 0.0)) throw ConfigError("full_scale_g must be positive");
    if (c.subjects < 1) throw ConfigError("subjects must be >= 1");
    validate(c.synth_spec());
}

PipelineConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig c;
    Reader r(root, "");

    int version = 0;
    r.read("schema_version", version);
    if (!r.has("schema_version")) throw ConfigError("config lacks schema_version");
    if (version != kConfigSchemaVersion) {
        throw ConfigError("unsupported config schema_version " + std::to_string(version));
    }

    r.read("sample_rate_hz", c.sample_rate_hz);
    r.read("epoch_s", c.epoch_s);
    r.read("full_scale_g", c.full_scale_g);
    r.read("seed", c.seed);
    r.read("subjects", c.subjects);
    std::string out_dir = c.output_dir.string();
    r.read("output_dir", out_dir);
    c.output_dir = out_dir;

    std::string phase = phase_name(c.bandpass.phase);
    r.read("filter_phase", phase);
    const auto ph = pick<FilterPhase>("filter_phase", phase,
                                      {{"causal", FilterPhase::Causal}, {"zero_phase", FilterPhase::ZeroPhase}});
    c.bandpass.phase = ph;
    c.hfen_highpass.phase = ph;
    {
        auto b = r.child("bandpass");
        b.read("order", c.bandpass.order);
        b.read("f_low_hz", c.bandpass.f_low_hz);
        b.read("f_high_hz", c.bandpass.f_high_hz);
        b.finish();
    }
    {
        auto h = r.child("hfen_highpass");
        h.read("order", c.hfen_highpass.order);
        h.read("cutoff_hz", c.hfen_highpass.f_low_hz);
        h.finish();
    }

    std::string integration = "riemann";
    r.read("integration", integration);
    c.both_integration_methods = integration == "both";
    c.integration = c.both_integration_methods
                        ? IntegrationMethod::RiemannSum
                        : pick<IntegrationMethod>("integration", integration,
                                                  {{"riemann", IntegrationMethod::RiemannSum},
                                                   {"simpson38", IntegrationMethod::Simpson38}});
    {
        auto t = r.child("threshold");
        std::string mode = "adaptive_sd";
        t.read("mode", mode);
        c.threshold.mode = pick<ThresholdPolicy::Mode>(
            "threshold.mode", mode,
            {{"adaptive_sd", ThresholdPolicy::Mode::AdaptiveSD}, {"fixed", ThresholdPolicy::Mode::Fixed}});
        t.read("value_g", c.threshold.fixed_value);
        if (c.threshold.mode == ThresholdPolicy::Mode::Fixed && !t.has("value_g")) {
            throw ConfigError("threshold.value_g is required for fixed thresholds");
        }
        t.finish();
    }
    {
        auto a = r.child("ai");
        a.read("noise_window_s", c.ai_noise_window_s);
        std::string formula = "typeset";
        a.read("formula", formula);
        c.ai_formula = pick<AiFormula>("ai.formula", formula,
                                       {{"typeset", AiFormula::Typeset}, {"per_axis", AiFormula::PerAxis}});
        if (const json* s = a.raw("sigma_bar_sq"); s && !s->is_null()) {
            if (!s->is_number()) throw ConfigError("ai.sigma_bar_sq must be a number or null");
            c.sigma_bar_sq = s->get<double>();
        }
        a.finish();
    }
    {
        auto p = r.child("psd");
        p.read("segment_length", c.psd.segment_length);
        p.read("overlap", c.psd.overlap);
        std::string window = "hann";
        std::string detrend = "mean";
        p.read("window", window);
        p.read("detrend", detrend);
        c.psd.window = pick<PsdWindow>("psd.window", window,
                                       {{"hann", PsdWindow::Hann}, {"rectangular", PsdWindow::Rectangular}});
        c.psd.detrend =
            pick<PsdDetrend>("psd.detrend", detrend, {{"mean", PsdDetrend::Mean}, {"none", PsdDetrend::None}});
        p.finish();
    }
    {
        auto k = r.child("catalog");
        k.read("include", c.include);
        k.read("exclude", c.exclude);
        k.read("include_unfiltered_axis_families", c.include_unfiltered_axis_families);
        k.finish();
    }
    if (const json* sweeps = r.raw("sweeps")) {
        if (!sweeps->is_array()) throw ConfigError("sweeps must be an array");
        c.sweeps.clear();
        std::size_t idx = 0;
        for (const auto& item : *sweeps) {
            Reader s(item, "sweeps[" + std::to_string(idx++) + "]");
            std::string metric;
            std::string kind;
            s.read("metric", metric);
            s.read("kind", kind);
            s.finish();
            const auto m = parse_metric(metric);
            const auto k = parse_dataset_kind(kind);
            if (!m) throw ConfigError(s.path("metric") + ": unknown metric '" + metric + "'");
            if (!k) throw ConfigError(s.path("kind") + ": unknown dataset kind '" + kind + "'");
            c.sweeps.push_back({*m, *k});
        }
    }
    {
        auto s = r.child("sweep");
        s.read("step_g", c.sweep.step_g);
        s.read("max_steps", c.sweep.max_steps);
        s.read("stop_fraction", c.sweep.stop_fraction);
        s.finish();
    }
    {
        auto s = r.child("synth");
        auto& y = c.synth;
        s.read("duration_s", y.duration_s);
        s.read("rest_mean_s", y.rest_mean_s);
        s.read("active_mean_s", y.active_mean_s);
        s.read("duration_jitter", y.duration_jitter);
        s.read("active_center_hz", y.active_center_hz);
        s.read("active_bandwidth_hz", y.active_bandwidth_hz);
        s.read("amplitude_g", y.amplitude_g);
        s.read("amplitude_spread", y.amplitude_spread);
        s.read("components_per_axis", y.components_per_axis);
        s.read("ramp_s", y.ramp_s);
        s.read("orientation", y.orientation);
        s.read("noise_sd_g", y.noise_sd_g);
        s.finish();
    }
    r.finish();
    validate(c);
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text(path);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text);
}

std::string to_json(const PipelineConfig& c) {
    const auto& y = c.synth;
    json j = {
        {"schema_version", kConfigSchemaVersion},
        {"sample_rate_hz", c.sample_rate_hz},
        {"epoch_s", c.epoch_s},
        {"full_scale_g", c.full_scale_g},
        {"seed", c.seed},
        {"subjects", c.subjects},
        {"output_dir", c.output_dir.string()},
        {"filter_phase", phase_name(c.bandpass.phase)},
        {"bandpass", {{"order", c.bandpass.order}, {"f_low_hz", c.bandpass.f_low_hz}, {"f_high_hz", c.bandpass.f_high_hz}}},
        {"hfen_highpass", {{"order", c.hfen_highpass.order}, {"cutoff_hz", c.hfen_highpass.f_low_hz}}},
        {"integration", c.both_integration_methods ? "both"
                        : c.integration == IntegrationMethod::RiemannSum ? "riemann"
                                                                          : "simpson38"},
        {"threshold",
         {{"mode", c.threshold.mode == ThresholdPolicy::Mode::Fixed ? "fixed" : "adaptive_sd"},
          {"value_g", c.threshold.fixed_value}}},
        {"ai",
         {{"noise_window_s", c.ai_noise_window_s},
          {"formula", c.ai_formula == AiFormula::Typeset ? "typeset" : "per_axis"},
          {"sigma_bar_sq", c.sigma_bar_sq ? json(*c.sigma_bar_sq) : json(nullptr)}}},
        {"psd",
         {{"segment_length", c.psd.segment_length},
          {"overlap", c.psd.overlap},
          {"window", c.psd.window == PsdWindow::Hann ? "hann" : "rectangular"},
          {"detrend", c.psd.detrend == PsdDetrend::Mean ? "mean" : "none"}}},
        {"catalog",
         {{"include", c.include},
          {"exclude", c.exclude},
          {"include_unfiltered_axis_families", c.include_unfiltered_axis_families}}},
        {"sweep", {{"step_g", c.sweep.step_g}, {"max_steps", c.sweep.max_steps}, {"stop_fraction", c.sweep.stop_fraction}}},
        {"synth",
         {{"duration_s", y.duration_s},
          {"rest_mean_s", y.rest_mean_s},
          {"active_mean_s", y.active_mean_s},
          {"duration_jitter", y.duration_jitter},
          {"active_center_hz", y.active_center_hz},
          {"active_bandwidth_hz", y.active_bandwidth_hz},
          {"amplitude_g", y.amplitude_g},
          {"amplitude_spread", y.amplitude_spread},
          {"components_per_axis", y.components_per_axis},
          {"ramp_s", y.ramp_s},
          {"orientation", y.orientation},
          {"noise_sd_g", y.noise_sd_g}}},
    };
    json sweeps = json::array();
    for (const auto& s : c.sweeps) {
        sweeps.push_back({{"metric", to_string(s.metric)}, {"kind", to_string(s.kind)}});
    }
    j["sweeps"] = sweeps;
    return j.dump(2) + "\n";
}

std::string config_hash(const PipelineConfig& config) {
    PipelineConfig c = config;
    c.output_dir = "";
    const std::string text = to_json(c);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace actimetrics
