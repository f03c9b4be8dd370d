#include "actimetrics/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include <json.hpp>

#include "actimetrics/errors.hpp"
#include "actimetrics/io.hpp"

namespace actimetrics {

namespace {

using json = nlohmann::json;

struct SubjectWork {
    SubjectOutcome outcome;
    std::vector<ActivitySignal> signals;
    DatasetMap sweep_inputs;
};

void process_subject(const PipelineConfig& config, const std::vector<VariantDescriptor>& variants,
                     const RawRecording& rec, const std::filesystem::path& out_dir, SubjectWork& work) {
    work.outcome.subject_id = rec.subject_id;
    work.outcome.samples = rec.size();
    try {
        require_valid(rec, config.full_scale_g);
        DatasetMap datasets = preprocess_all(rec, config.preprocess_options());
        const auto activity_options = config.activity_options();
        std::vector<ActivitySignal> signals;
        signals.reserve(variants.size());
        for (const auto& v : variants) {
            signals.push_back(compute_activity(v, datasets, config.epoch_s, activity_options));
        }
        const auto dir = out_dir / "activity" / slugify(rec.subject_id);
        for (const auto& s : signals) write_activity_csv(dir / (slugify(s.label()) + ".csv"), s, rec.subject_id);

        std::set<DatasetKind> keep{DatasetKind::UFM, DatasetKind::HfenSpecial};
        for (const auto& s : config.sweeps) keep.insert(s.kind);
        for (const DatasetKind k : keep) work.sweep_inputs.emplace(k, std::move(datasets.at(k)));

        work.outcome.epochs = signals.empty() ? 0 : signals.front().size();
        work.signals = std::move(signals);
        work.outcome.ok = true;
    } catch (const Error& e) {
        work.outcome.ok = false;
        work.outcome.error = e.what();
        work.signals.clear();
        work.sweep_inputs.clear();
    }
}

std::string sweep_file_name(const SweepRequest& s) {
    return std::string(to_string(s.metric)) + "_" + std::string(to_string(s.kind)) + ".csv";
}

}  // namespace

std::size_t PipelineResult::ok_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(subjects.begin(), subjects.end(),
                                                  [](const SubjectOutcome& s) { return s.ok; }));
}

std::size_t PipelineResult::failed_count() const noexcept { return subjects.size() - ok_count(); }

std::vector<VariantDescriptor> configured_catalog(const PipelineConfig& config) {
    auto variants = catalog(config.catalog_config());
    if (variants.empty()) throw ConfigError("empty catalog: include/exclude filters match no variant");
    return variants;
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::vector<RawRecording>& recordings,
                            const std::filesystem::path& out_dir, unsigned jobs) {
    validate(config);
    const auto variants = configured_catalog(config);
    if (recordings.empty()) throw DataError("run_pipeline needs at least one recording");
    std::set<std::string> ids;
    std::set<std::string> slugs;
    for (const auto& r : recordings) {
        if (!ids.insert(r.subject_id).second || !slugs.insert(slugify(r.subject_id)).second) {
            throw DataError("duplicate subject id '" + r.subject_id + "'");
        }
    }

    std::vector<SubjectWork> work(recordings.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < recordings.size(); i = next++) {
            process_subject(config, variants, recordings[i], out_dir, work[i]);
        }
    };
    const unsigned threads = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(recordings.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    PipelineResult result;
    for (const auto& v : variants) result.labels.push_back(v.label());
    SubjectSignals per_subject;
    std::vector<DatasetMap> sweep_inputs;
    for (auto& w : work) {
        result.subjects.push_back(w.outcome);
        if (!w.outcome.ok) continue;
        per_subject.emplace(w.outcome.subject_id, std::move(w.signals));
        sweep_inputs.push_back(std::move(w.sweep_inputs));
    }

    std::vector<std::string> outputs;
    json manifest = {
        {"schema_version", kConfigSchemaVersion},
        {"config_hash", config_hash(config)},
        {"catalog_count", result.labels.size()},
        {"reference_catalog_size", kReferenceCatalogSize},
        {"labels", result.labels},
    };
    json subjects = json::array();
    for (const auto& s : result.subjects) {
        json entry = {{"id", s.subject_id}, {"status", s.ok ? "ok" : "failed"}, {"samples", s.samples},
                      {"epochs", s.epochs}};
        if (!s.ok) entry["error"] = s.error;
        subjects.push_back(std::move(entry));
    }
    manifest["subjects"] = subjects;
    manifest["subjects_ok"] = result.ok_count();
    manifest["subjects_failed"] = result.failed_count();

    if (!per_subject.empty()) {
        for (const auto& [id, signals] : per_subject) {
            for (const auto& s : signals) {
                outputs.push_back("activity/" + slugify(id) + "/" + slugify(s.label()) + ".csv");
            }
        }
        const auto time = correlation_matrix(per_subject, CorrelationDomain::Time, config.psd);
        const auto freq = correlation_matrix(per_subject, CorrelationDomain::Frequency, config.psd);
        result.excluded_pairs_time = time.excluded_pairs;
        result.excluded_pairs_frequency = freq.excluded_pairs;
        write_matrix_csv(out_dir / "correlation_time.csv", time);
        write_matrix_json(out_dir / "correlation_time.json", time);
        write_matrix_csv(out_dir / "correlation_frequency.csv", freq);
        write_matrix_json(out_dir / "correlation_frequency.json", freq);
        for (const char* f : {"correlation_frequency.csv", "correlation_frequency.json", "correlation_time.csv",
                              "correlation_time.json"}) {
            outputs.emplace_back(f);
        }

        json sweeps = json::array();
        for (const auto& req : config.sweeps) {
            const auto curve = threshold_sweep(req.metric, req.kind, sweep_inputs, config.sweep_options());
            const auto name = sweep_file_name(req);
            write_sweep_csv(out_dir / "sweeps" / name, curve);
            outputs.push_back("sweeps/" + name);
            sweeps.push_back({{"metric", to_string(req.metric)},
                              {"kind", to_string(req.kind)},
                              {"file", "sweeps/" + name},
                              {"steps", curve.thresholds.size()}});
        }
        manifest["sweeps"] = sweeps;
    }
    std::sort(outputs.begin(), outputs.end());
    manifest["excluded_degenerate_pairs"] = {{"time", result.excluded_pairs_time},
                                             {"frequency", result.excluded_pairs_frequency}};
    manifest["outputs"] = outputs;
    result.manifest = manifest.dump(2) + "\n";
    write_text(out_dir / "manifest.json", result.manifest);

    if (per_subject.empty()) throw DataError("every subject failed; see manifest.json");
    return result;
}

}  // namespace actimetrics
