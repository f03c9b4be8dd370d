#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "actimetrics/config.hpp"
#include "actimetrics/errors.hpp"
#include "actimetrics/io.hpp"
#include "actimetrics/pipeline.hpp"

namespace fs = std::filesystem;
using namespace actimetrics;

namespace {

enum Exit : int { kOk = 0, kConfigError = 1, kDataError = 2, kPartial = 3 };

struct Globals {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::optional<double> rate;
};

PipelineConfig load(const Globals& g) {
    PipelineConfig c = g.config_path.empty() ? PipelineConfig{} : load_config(g.config_path);
    if (g.seed) c.seed = *g.seed;
    if (!g.out.empty()) c.output_dir = g.out;
    validate(c);
    return c;
}

std::vector<RawRecording> load_inputs(const std::vector<std::string>& inputs, std::optional<double> rate) {
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<fs::path> found;
            for (const auto& e : fs::directory_iterator(in)) {
                const auto ext = e.path().extension();
                if (e.is_regular_file() && (ext == ".csv" || ext == ".bin")) found.push_back(e.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.emplace_back(in);
        }
    }
    if (files.empty()) throw DataError("no input recordings");
    std::vector<RawRecording> recs;
    for (const auto& f : files) recs.push_back(read_recording(f, rate));
    return recs;
}

std::vector<RawRecording> inputs_or_synth(const std::vector<std::string>& inputs, const Globals& g,
                                          const PipelineConfig& c) {
    if (!inputs.empty()) return load_inputs(inputs, g.rate);
    std::cerr << "no inputs given, synthesizing " << c.subjects << " subjects (seed " << c.seed << ")\n";
    return synthesize_corpus(c.synth_spec(), c.subjects);
}

int report(const PipelineResult& r, const fs::path& out) {
    std::cout << "subjects ok " << r.ok_count() << ", failed " << r.failed_count() << ", variants "
              << r.labels.size() << " (reference " << kReferenceCatalogSize << ")\n"
              << "manifest: " << (out / "manifest.json").string() << "\n";
    for (const auto& s : r.subjects) {
        if (!s.ok) std::cerr << "subject " << s.subject_id << " failed: " << s.error << "\n";
    }
    return r.failed_count() > 0 ? kPartial : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Activity metric catalog and correlation pipeline for triaxial accelerometer data"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "Output directory (overrides config)");
    app.add_option("--seed", g.seed, "RNG seed for synthesis (overrides config)");
    app.add_option("--jobs", g.jobs, "Subjects processed in parallel")->check(CLI::PositiveNumber);
    app.add_option("--rate", g.rate, "Sample rate in Hz for CSV inputs without a sidecar");

    std::vector<std::string> inputs;
    std::string format = "csv";
    std::size_t subjects = 0;

    auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
    synth->add_option("--subjects", subjects, "Number of subjects (overrides config)");
    synth->add_option("--format", format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));

    auto* preprocess = app.add_subcommand("preprocess", "Write every dataset kind of each recording");
    preprocess->add_option("inputs", inputs, "Recording files or directories")->required();

    std::vector<std::string> variant_globs;
    auto* activity = app.add_subcommand("activity", "Write activity signals without correlation");
    activity->add_option("inputs", inputs, "Recording files or directories");
    activity->add_option("--variant", variant_globs, "Label glob to include (repeatable)");

    auto* sweep = app.add_subcommand("sweep", "Threshold sweeps for ZCM/TAT");
    sweep->add_option("inputs", inputs, "Recording files or directories");

    auto* correlate = app.add_subcommand("correlate", "Full pipeline run");
    correlate->add_option("inputs", inputs, "Recording files or directories (synthesized if omitted)");

    auto* cat = app.add_subcommand("catalog", "List the configured variant labels");

    std::string convert_in;
    std::string convert_out;
    auto* convert = app.add_subcommand("convert", "Convert a recording between CSV and native binary");
    convert->add_option("input", convert_in)->required();
    convert->add_option("output", convert_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        PipelineConfig config = load(g);
        const fs::path out = config.output_dir;

        if (*synth) {
            if (subjects > 0) config.subjects = subjects;
            const auto corpus = synthesize_corpus(config.synth_spec(), config.subjects);
            for (const auto& rec : corpus) {
                const auto path = out / (rec.subject_id + "." + format);
                if (format == "bin") write_recording_bin(path, rec);
                else write_recording_csv(path, rec);
                std::cout << path.string() << "\n";
            }
            return kOk;
        }
        if (*cat) {
            const auto variants = configured_catalog(config);
            for (const auto& v : variants) std::cout << v.label() << "\t" << v.units() << "\n";
            std::cout << "# " << variants.size() << " variants (reference catalog " << kReferenceCatalogSize
                      << ")\n";
            return kOk;
        }
        if (*convert) {
            const auto rec = read_recording(convert_in, g.rate);
            if (fs::path(convert_out).extension() == ".bin") write_recording_bin(convert_out, rec);
            else write_recording_csv(convert_out, rec);
            return kOk;
        }
        if (*preprocess) {
            const auto recs = load_inputs(inputs, g.rate);
            int code = kOk;
            for (const auto& rec : recs) {
                try {
                    require_valid(rec, config.full_scale_g);
                    for (const auto& [kind, series] : preprocess_all(rec, config.preprocess_options())) {
                        write_series_csv(out / "preprocess" / slugify(rec.subject_id) /
                                             (std::string(to_string(kind)) + ".csv"),
                                         series);
                    }
                } catch (const DataError& e) {
                    std::cerr << "subject " << rec.subject_id << " failed: " << e.what() << "\n";
                    code = kPartial;
                }
            }
            return code;
        }
        if (*activity) {
            if (!variant_globs.empty()) config.include = variant_globs;
            config.sweeps.clear();
            return report(run_pipeline(config, inputs_or_synth(inputs, g, config), out, g.jobs), out);
        }
        if (*sweep) {
            const auto recs = inputs_or_synth(inputs, g, config);
            std::vector<DatasetMap> maps;
            for (const auto& rec : recs) {
                require_valid(rec, config.full_scale_g);
                maps.push_back(preprocess_all(rec, config.preprocess_options()));
            }
            for (const auto& req : config.sweeps) {
                const auto curve = threshold_sweep(req.metric, req.kind, maps, config.sweep_options());
                const auto path = out / "sweeps" /
                                  (std::string(to_string(req.metric)) + "_" + std::string(to_string(req.kind)) + ".csv");
                write_sweep_csv(path, curve);
                std::cout << path.string() << "  sd marker " << format_double(curve.sd_marker) << " g\n";
            }
            return kOk;
        }
        if (*correlate) {
            return report(run_pipeline(config, inputs_or_synth(inputs, g, config), out, g.jobs), out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kOk;
}
