#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "actimetrics/analysis.hpp"
#include "actimetrics/model.hpp"
#include "actimetrics/variant.hpp"

namespace actimetrics {

namespace fs = std::filesystem;

/// Native binary layout, all little-endian:
///   bytes 0-3   magic "ACTM"
///   bytes 4-5   u16 format version (1)
///   bytes 6-7   u16 sample rate in deci-hertz
///   bytes 8-15  u64 sample count N
///   then N records of three f32 (x, y, z) in g.
inline constexpr std::uint16_t kBinaryVersion = 1;
inline constexpr std::size_t kBinaryHeaderSize = 16;

/// Reads "x,y,z" or "t,x,y,z" CSV. The sample rate comes from `sample_rate_hz` or a
/// sidecar "<path>.json" holding {"sample_rate_hz": ...}; the subject id defaults to
/// the file stem.
RawRecording read_recording_csv(const fs::path& path,
                                std::optional<double> sample_rate_hz = std::nullopt);
void write_recording_csv(const fs::path& path, const RawRecording& rec);

RawRecording read_recording_bin(const fs::path& path);
/// Throws ConfigError when the sample rate is not a whole number of deci-hertz in u16
/// range. Samples are narrowed to f32.
void write_recording_bin(const fs::path& path, const RawRecording& rec);

/// Dispatches on extension: ".bin" native, anything else CSV.
RawRecording read_recording(const fs::path& path, std::optional<double> sample_rate_hz = std::nullopt);

/// Shortest decimal representation that round-trips.
std::string format_double(double v);

/// File-name-safe form of a variant label; distinct labels give distinct slugs.
std::string slugify(const std::string& label);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

void write_series_csv(const fs::path& path, const PreprocessedSeries& series);

/// Header comments declare subject, variant, units and epoch length, then
/// "epoch_index,value" rows.
void write_activity_csv(const fs::path& path, const ActivitySignal& signal,
                        const std::string& subject_id);

/// Labels as header row and first column, cells "mean±sd" with 5 decimals.
void write_matrix_csv(const fs::path& path, const CorrelationSummary& summary);
std::string matrix_to_json(const CorrelationSummary& summary);
void write_matrix_json(const fs::path& path, const CorrelationSummary& summary);

void write_sweep_csv(const fs::path& path, const SweepCurve& curve);

/// Writes `content` to `path`, creating parent directories.
void write_text(const fs::path& path, const std::string& content);
std::string read_text(const fs::path& path);

}  // namespace actimetrics
