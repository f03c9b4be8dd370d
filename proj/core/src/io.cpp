#include "actimetrics/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "actimetrics/errors.hpp"

namespace actimetrics {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
    }
    return v;
}

template <class T>
void put_le(std::vector<unsigned char>& buf, T value) {
    using U = std::make_unsigned_t<T>;
    auto u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        buf.push_back(static_cast<unsigned char>(u & 0xFFu));
        u = static_cast<U>(u >> 8);
    }
}

template <class T>
T get_le(const unsigned char* p) {
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = sizeof(T); i-- > 0;) {
        u = static_cast<std::make_unsigned_t<T>>((u << 8) | p[i]);
    }
    return static_cast<T>(u);
}

void put_f32(std::vector<unsigned char>& buf, double v) {
    put_le<std::uint32_t>(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

double get_f32(const unsigned char* p) {
    return static_cast<double>(std::bit_cast<float>(get_le<std::uint32_t>(p)));
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::string format_fixed(double v, int decimals) {
    if (!std::isfinite(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string slugify(const std::string& label) {
    std::string out;
    for (std::size_t i = 0; i < label.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(label[i]);
        if (std::isalnum(c) || c == '.' || c == '-') {
            out += static_cast<char>(c);
        } else if (c == 0xC2 && i + 1 < label.size() && static_cast<unsigned char>(label[i + 1]) == 0xB2) {
            out += "^2";  // "²"
            ++i;
        } else if (c == '(' || c == '[') {
            out += '(' == c ? "_" : "__";
        } else if (c == ')' || c == ']') {
            out += ')' == c ? "_" : "__";
        } else if (c == ',') {
            out += '-';
        } else if (c == '@') {
            out += "_at_";
        } else {
            out += '_';
        }
    }
    return out;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RawRecording read_recording_csv(const fs::path& path, std::optional<double> sample_rate_hz) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");

    RawRecording rec;
    rec.subject_id = path.stem().string();

    const fs::path sidecar = path.string() + ".json";
    if (fs::exists(sidecar)) {
        json meta;
        try {
            meta = json::parse(read_text(sidecar));
        } catch (const json::exception& e) {
            throw DataError("bad sidecar '" + sidecar.string() + "': " + e.what());
        }
        if (!sample_rate_hz && meta.contains("sample_rate_hz")) {
            sample_rate_hz = meta.at("sample_rate_hz").get<double>();
        }
        if (meta.contains("subject_id")) rec.subject_id = meta.at("subject_id").get<std::string>();
        if (meta.contains("start_time")) rec.start_time = meta.at("start_time").get<std::string>();
    }
    if (!sample_rate_hz) {
        throw MissingSampleRate("no sample rate for '" + path.string() +
                                "': pass it explicitly or provide a .json sidecar");
    }
    rec.sample_rate_hz = *sample_rate_hz;

    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto cells = split(text, ',');
        if (columns == 0) {
            const bool xyz = cells.size() == 3 && cells[0] == "x" && cells[1] == "y" && cells[2] == "z";
            const bool txyz = cells.size() == 4 && cells[0] == "t" && cells[1] == "x" &&
                              cells[2] == "y" && cells[3] == "z";
            if (!xyz && !txyz) {
                throw ParseError(line_no, "expected header 'x,y,z' or 't,x,y,z', got '" +
                                              std::string(text) + "'");
            }
            columns = cells.size();
            continue;
        }
        if (cells.size() != columns) {
            throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, got " +
                                          std::to_string(cells.size()));
        }
        std::array<double, 4> v{};
        for (std::size_t i = 0; i < columns; ++i) {
            const auto n = parse_number(cells[i]);
            if (!n) throw ParseError(line_no, "non-numeric cell '" + std::string(cells[i]) + "'");
            v[i] = *n;
        }
        const std::size_t off = columns == 4 ? 1 : 0;
        rec.x.push_back(v[off]);
        rec.y.push_back(v[off + 1]);
        rec.z.push_back(v[off + 2]);
    }
    if (columns == 0) throw ParseError(1, "empty file, expected header 'x,y,z'");
    return rec;
}

void write_recording_csv(const fs::path& path, const RawRecording& rec) {
    std::string body = "x,y,z\n";
    for (std::size_t i = 0; i < rec.size(); ++i) {
        body += format_double(rec.x[i]);
        body += ',';
        body += format_double(rec.y[i]);
        body += ',';
        body += format_double(rec.z[i]);
        body += '\n';
    }
    write_text(path, body);
    json meta = {{"sample_rate_hz", rec.sample_rate_hz}, {"subject_id", rec.subject_id}};
    if (rec.start_time) meta["start_time"] = *rec.start_time;
    write_text(path.string() + ".json", meta.dump(2) + "\n");
}

void write_recording_bin(const fs::path& path, const RawRecording& rec) {
    if (rec.y.size() != rec.x.size() || rec.z.size() != rec.x.size()) {
        throw LengthMismatch("cannot write recording with unequal axis lengths");
    }
    const double deci = rec.sample_rate_hz * 10.0;
    if (!(deci >= 1.0 && deci <= 65535.0) || std::abs(deci - std::round(deci)) > 1e-9) {
        throw ConfigError("sample rate " + format_double(rec.sample_rate_hz) +
                          " Hz is not representable in deci-hertz u16");
    }
    std::vector<unsigned char> buf;
    buf.reserve(kBinaryHeaderSize + rec.size() * 12);
    for (const char c : {'A', 'C', 'T', 'M'}) buf.push_back(static_cast<unsigned char>(c));
    put_le<std::uint16_t>(buf, kBinaryVersion);
    put_le<std::uint16_t>(buf, static_cast<std::uint16_t>(std::lround(deci)));
    put_le<std::uint64_t>(buf, rec.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        put_f32(buf, rec.x[i]);
        put_f32(buf, rec.y[i]);
        put_f32(buf, rec.z[i]);
    }
    auto out = open_out(path);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

RawRecording read_recording_bin(const fs::path& path) {
    const std::string data = read_text(path);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data());
    if (data.size() < 4 || std::memcmp(p, "ACTM", 4) != 0) {
        throw BadMagic("'" + path.string() + "' does not start with magic ACTM");
    }
    if (data.size() < kBinaryHeaderSize) {
        throw TruncatedPayload("'" + path.string() + "' has a truncated header");
    }
    const auto version = get_le<std::uint16_t>(p + 4);
    if (version != kBinaryVersion) {
        throw VersionUnsupported("format version " + std::to_string(version) + " is not supported");
    }
    const auto deci = get_le<std::uint16_t>(p + 6);
    const auto count = get_le<std::uint64_t>(p + 8);
    const std::size_t available = (data.size() - kBinaryHeaderSize) / 12;
    if (count > available) {
        throw TruncatedPayload("header declares " + std::to_string(count) + " samples but payload holds " +
                               std::to_string(available));
    }
    RawRecording rec;
    rec.subject_id = path.stem().string();
    rec.sample_rate_hz = static_cast<double>(deci) / 10.0;
    rec.x.resize(count);
    rec.y.resize(count);
    rec.z.resize(count);
    const unsigned char* q = p + kBinaryHeaderSize;
    for (std::size_t i = 0; i < count; ++i, q += 12) {
        rec.x[i] = get_f32(q);
        rec.y[i] = get_f32(q + 4);
        rec.z[i] = get_f32(q + 8);
    }
    return rec;
}

RawRecording read_recording(const fs::path& path, std::optional<double> sample_rate_hz) {
    if (path.extension() == ".bin") return read_recording_bin(path);
    return read_recording_csv(path, sample_rate_hz);
}

void write_series_csv(const fs::path& path, const PreprocessedSeries& series) {
    std::string body = "# dataset: " + series_label(series.kind, series.squared) + "\n";
    body += "# units: g\n";
    body += "# sample_rate_hz: " + format_double(series.sample_rate_hz) + "\n";
    if (!series.provenance.empty()) body += "# filter: " + series.provenance + "\n";
    body += "sample_index,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        body += std::to_string(i);
        body += ',';
        body += format_double(series.values[i]);
        body += '\n';
    }
    write_text(path, body);
}

void write_activity_csv(const fs::path& path, const ActivitySignal& signal,
                        const std::string& subject_id) {
    std::string body = "# subject: " + subject_id + "\n";
    body += "# variant: " + signal.label() + "\n";
    body += "# units: " + signal.units() + "\n";
    body += "# epoch_length_s: " + format_double(signal.epoch_length_s) + "\n";
    body += "epoch_index,value\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        body += std::to_string(i);
        body += ',';
        body += format_double(signal.values[i]);
        body += '\n';
    }
    write_text(path, body);
}

void write_matrix_csv(const fs::path& path, const CorrelationSummary& summary) {
    std::string body = "label";
    for (const auto& l : summary.labels) body += "," + csv_field(l);
    body += '\n';
    for (std::size_t i = 0; i < summary.size(); ++i) {
        body += csv_field(summary.labels[i]);
        for (std::size_t j = 0; j < summary.size(); ++j) {
            body += ',';
            body += format_fixed(summary.mean_at(i, j), 5);
            body += "±";
            body += format_fixed(summary.sd_at(i, j), 5);
        }
        body += '\n';
    }
    write_text(path, body);
}

std::string matrix_to_json(const CorrelationSummary& summary) {
    const std::size_t n = summary.size();
    json mean = json::array();
    json sd = json::array();
    json valid = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json mrow = json::array();
        json srow = json::array();
        json vrow = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            const double m = summary.mean_at(i, j);
            const double s = summary.sd_at(i, j);
            mrow.push_back(std::isfinite(m) ? json(m) : json(nullptr));
            srow.push_back(std::isfinite(s) ? json(s) : json(nullptr));
            vrow.push_back(summary.valid[i * n + j]);
        }
        mean.push_back(std::move(mrow));
        sd.push_back(std::move(srow));
        valid.push_back(std::move(vrow));
    }
    const json doc = {
        {"domain", summary.domain == CorrelationDomain::Time ? "time" : "frequency"},
        {"n_subjects", summary.n_subjects},
        {"excluded_pairs", summary.excluded_pairs},
        {"labels", summary.labels},
        {"mean", mean},
        {"sd", sd},
        {"valid_subjects", valid},
    };
    return doc.dump(1) + "\n";
}

void write_matrix_json(const fs::path& path, const CorrelationSummary& summary) {
    write_text(path, matrix_to_json(summary));
}

void write_sweep_csv(const fs::path& path, const SweepCurve& curve) {
    std::string body = "# metric: " + std::string(to_string(curve.metric)) + "\n";
    body += "# dataset: " + std::string(to_string(curve.kind)) + "\n";
    body += "# sd_marker_g: " + format_double(curve.sd_marker) + "\n";
    body += "# r_sd_vs_enmo: " + format_double(curve.r_sd_vs_enmo) + "\n";
    body += "# r_sd_vs_hfen: " + format_double(curve.r_sd_vs_hfen) + "\n";
    body += "threshold_g,r_vs_enmo,r_vs_hfen,r_vs_sd_anchored,mean_activity\n";
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
        body += format_double(curve.thresholds[i]) + "," + format_double(curve.r_vs_enmo[i]) + "," +
                format_double(curve.r_vs_hfen[i]) + "," + format_double(curve.r_vs_sd_anchored[i]) +
                "," + format_double(curve.mean_activity[i]) + "\n";
    }
    write_text(path, body);
}

}  // namespace actimetrics
