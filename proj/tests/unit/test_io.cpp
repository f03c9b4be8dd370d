#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "actimetrics/combine.hpp"
#include "actimetrics/errors.hpp"
#include "actimetrics/io.hpp"
#include "actimetrics/preprocess.hpp"
#include "actimetrics/synth.hpp"
#include "oracles.hpp"

using namespace actimetrics;

namespace {

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("actimetrics_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& body) {
        const auto p = dir_ / name;
        std::ofstream(p) << body;
        return p;
    }

    fs::path dir_;
};

RawRecording random_recording(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RawRecording r;
    r.subject_id = "rnd";
    r.x = oracle::uniform(rng, n, -8.0, 8.0);
    r.y = oracle::uniform(rng, n, -8.0, 8.0);
    r.z = oracle::uniform(rng, n, -8.0, 8.0);
    return r;
}

void expect_bitwise(const std::vector<double>& a, const std::vector<double>& b) {
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
}

}  // namespace

TEST_F(IoTest, CsvTwoSamples) {
    const auto p = write("a.csv", "x,y,z\n0.1,0.2,0.98\n-0.5,0,1\n");
    const auto r = read_recording_csv(p, 10.0);
    EXPECT_EQ(r.size(), 2u);
    EXPECT_EQ(r.subject_id, "a");
    EXPECT_EQ(r.z[0], 0.98);
    EXPECT_EQ(r.x[1], -0.5);
}

TEST_F(IoTest, CsvLeadingTimeColumn) {
    const auto p = write("t.csv", "t,x,y,z\n0,1,2,3\n0.1,4,5,6\n");
    const auto r = read_recording_csv(p, 10.0);
    EXPECT_EQ(r.x, (std::vector<double>{1, 4}));
    EXPECT_EQ(r.z, (std::vector<double>{3, 6}));
}

TEST_F(IoTest, CsvNonNumericCellReportsLine) {
    const auto p = write("bad.csv", "x,y,z\n1,2,3\n1,2,3\n1,2,3\n1,abc,3\n");
    try {
        read_recording_csv(p, 10.0);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5u);
    }
}

TEST_F(IoTest, CsvBadHeader) {
    const auto p = write("h.csv", "a,b,c\n1,2,3\n");
    try {
        read_recording_csv(p, 10.0);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_NE(std::string(e.what()).find("x,y,z"), std::string::npos);
    }
}

TEST_F(IoTest, CsvNeedsSampleRate) {
    const auto p = write("n.csv", "x,y,z\n1,2,3\n");
    EXPECT_THROW(read_recording_csv(p), MissingSampleRate);
    write("n.csv.json", R"({"sample_rate_hz": 25, "subject_id": "P7"})");
    const auto r = read_recording_csv(p);
    EXPECT_EQ(r.sample_rate_hz, 25.0);
    EXPECT_EQ(r.subject_id, "P7");
}

TEST_F(IoTest, CsvRoundTripExact) {
    const auto r = random_recording(500, 1);
    write_recording_csv(dir_ / "rt.csv", r);
    const auto back = read_recording_csv(dir_ / "rt.csv");
    expect_bitwise(r.x, back.x);
    expect_bitwise(r.y, back.y);
    expect_bitwise(r.z, back.z);
    EXPECT_EQ(back.sample_rate_hz, 10.0);
}

TEST_F(IoTest, BinaryRoundTripBitwise) {
    auto r = random_recording(1000, 2);
    for (auto* axis : {&r.x, &r.y, &r.z}) {
        for (double& v : *axis) v = static_cast<double>(static_cast<float>(v));
    }
    write_recording_bin(dir_ / "r.bin", r);
    EXPECT_EQ(fs::file_size(dir_ / "r.bin"), kBinaryHeaderSize + 1000 * 12);
    const auto back = read_recording_bin(dir_ / "r.bin");
    EXPECT_EQ(back.sample_rate_hz, 10.0);
    expect_bitwise(r.x, back.x);
    expect_bitwise(r.y, back.y);
    expect_bitwise(r.z, back.z);

    write_recording_bin(dir_ / "again.bin", back);
    EXPECT_EQ(read_text(dir_ / "r.bin"), read_text(dir_ / "again.bin"));
}

TEST_F(IoTest, BinaryHeaderLayout) {
    RawRecording r;
    r.sample_rate_hz = 12.5;
    r.x = {1.0};
    r.y = {0.0};
    r.z = {-1.0};
    write_recording_bin(dir_ / "h.bin", r);
    const auto bytes = read_text(dir_ / "h.bin");
    ASSERT_EQ(bytes.size(), 28u);
    EXPECT_EQ(bytes.substr(0, 4), "ACTM");
    EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);
    EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 0);
    EXPECT_EQ(static_cast<unsigned char>(bytes[6]) | (static_cast<unsigned char>(bytes[7]) << 8), 125);
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1);
    EXPECT_EQ(static_cast<unsigned char>(bytes[19]), 0x3F);  // 1.0f little-endian high byte
    EXPECT_EQ(read_recording_bin(dir_ / "h.bin").sample_rate_hz, 12.5);
}

TEST_F(IoTest, BinaryErrors) {
    write_recording_bin(dir_ / "ok.bin", random_recording(10, 3));
    auto bytes = read_text(dir_ / "ok.bin");

    auto magic = bytes;
    magic.replace(0, 4, "XXXX");
    write_text(dir_ / "magic.bin", magic);
    EXPECT_THROW(read_recording_bin(dir_ / "magic.bin"), BadMagic);

    auto version = bytes;
    version[4] = 2;
    write_text(dir_ / "ver.bin", version);
    EXPECT_THROW(read_recording_bin(dir_ / "ver.bin"), VersionUnsupported);

    auto truncated = bytes.substr(0, bytes.size() - 5);
    write_text(dir_ / "trunc.bin", truncated);
    EXPECT_THROW(read_recording_bin(dir_ / "trunc.bin"), TruncatedPayload);

    write_text(dir_ / "short.bin", bytes.substr(0, 10));
    EXPECT_THROW(read_recording_bin(dir_ / "short.bin"), TruncatedPayload);

    auto bad_rate = random_recording(2, 4);
    bad_rate.sample_rate_hz = 10.05;
    EXPECT_THROW(write_recording_bin(dir_ / "rate.bin", bad_rate), ConfigError);
}

TEST_F(IoTest, CsvAndBinaryAgreeWithinFloat32) {
    const auto r = random_recording(300, 5);
    write_recording_csv(dir_ / "c.csv", r);
    write_recording_bin(dir_ / "c.bin", r);
    const auto a = read_recording(dir_ / "c.csv");
    const auto b = read_recording(dir_ / "c.bin");
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(static_cast<float>(a.x[i]), static_cast<float>(b.x[i]));
        ASSERT_NEAR(a.y[i], b.y[i], 8.0 * 6e-8);
        ASSERT_NEAR(a.z[i], b.z[i], 8.0 * 6e-8);
    }
}

TEST_F(IoTest, ActivityFileHeader) {
    ActivitySignal s{VariantDescriptor::single(MetricId::TAT, DatasetKind::UFM), 60.0, {0.0, 1.5}};
    write_activity_csv(dir_ / "act.csv", s, "S01");
    const auto text = read_text(dir_ / "act.csv");
    EXPECT_EQ(text,
              "# subject: S01\n# variant: TAT(UFM)\n# units: s\n# epoch_length_s: 60\n"
              "epoch_index,value\n0,0\n1,1.5\n");
}

TEST(Slugify, DistinctAndSafe) {
    std::set<std::string> slugs;
    CatalogConfig cfg;
    cfg.both_integration_methods = true;
    cfg.include_unfiltered_axis_families = true;
    for (const auto& v : catalog(cfg)) {
        const auto s = slugify(v.label());
        EXPECT_TRUE(slugs.insert(s).second) << v.label();
        for (char c : s) EXPECT_TRUE(std::isalnum(static_cast<unsigned char>(c)) || std::strchr("._-^", c)) << s;
    }
}

TEST(CsvField, Quoting) {
    EXPECT_EQ(csv_field("PIM(FX)"), "PIM(FX)");
    EXPECT_EQ(csv_field("SUM[PIM,FXYZ]"), "\"SUM[PIM,FXYZ]\"");
    EXPECT_EQ(csv_field("a\"b"), "\"a\"\"b\"");
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(60.0), "60");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    std::mt19937_64 rng(6);
    for (double v : oracle::uniform(rng, 100, -1e3, 1e3)) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Synth, RestOnlyNoiselessGivesUnitMagnitude) {
    SyntheticSpec spec;
    spec.duration_s = 3600.0;
    spec.amplitude_g = 0.0;
    spec.noise_sd_g = 0.0;
    const auto r = synthesize(spec);
    EXPECT_EQ(r.size(), 36000u);
    for (double v : magnitude(r.x, r.y, r.z, 10.0).values) ASSERT_EQ(v, 1.0);
}

TEST(Synth, Deterministic) {
    SyntheticSpec spec;
    spec.duration_s = 1800.0;
    spec.seed = 99;
    const auto a = synthesize(spec);
    const auto b = synthesize(spec);
    expect_bitwise(a.x, b.x);
    expect_bitwise(a.y, b.y);
    expect_bitwise(a.z, b.z);
    spec.seed = 100;
    EXPECT_NE(synthesize(spec).x, a.x);
    EXPECT_NE(subject_seed(1, 0), subject_seed(1, 1));
}

TEST(Synth, BoutEnmoExceedsRest) {
    SyntheticSpec spec;
    spec.duration_s = 1800.0;
    spec.rest_mean_s = 600.0;
    spec.active_mean_s = 600.0;
    spec.duration_jitter = 0.0;
    spec.amplitude_g = 0.5;
    spec.seed = 4;
    const auto r = synthesize(spec);
    const auto m = magnitude(r.x, r.y, r.z, 10.0);
    const auto enmo_of = [&](std::size_t from, std::size_t to) {
        double s = 0.0;
        for (std::size_t i = from; i < to; ++i) s += std::max(m.values[i] - 1.0, 0.0);
        return s / static_cast<double>(to - from);
    };
    EXPECT_GT(enmo_of(6000, 12000), 10.0 * enmo_of(0, 6000));
}

TEST(Synth, BandWithinLimits) {
    SyntheticSpec spec;
    spec.duration_s = 7200.0;
    spec.rest_mean_s = 60.0;
    spec.active_mean_s = 3000.0;
    spec.duration_jitter = 0.0;
    spec.noise_sd_g = 0.0;
    const auto r = synthesize(spec);
    const std::vector<double> bout(r.x.begin() + 1000, r.x.begin() + 1000 + 2048);
    const auto power = oracle::dft_power(bout);
    double in_band = 0.0, total = 0.0;
    for (std::size_t k = 1; k < power.size(); ++k) {
        const double f = k * 10.0 / 2048.0;
        total += power[k];
        if (f >= 0.45 && f <= 3.05) in_band += power[k];
    }
    EXPECT_GT(in_band / total, 0.95);
}

TEST(Synth, ValidatesSpec) {
    SyntheticSpec spec;
    spec.orientation = {0.0, 0.6, 0.6};
    EXPECT_THROW(synthesize(spec), ConfigError);
    spec = SyntheticSpec{};
    spec.amplitude_g = -0.1;
    EXPECT_THROW(synthesize(spec), ConfigError);
    spec = SyntheticSpec{};
    spec.active_center_hz = 3.0;
    EXPECT_THROW(synthesize(spec), ConfigError);
}
