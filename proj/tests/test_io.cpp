#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doughslit/io.hpp"

using namespace doughslit;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("doughslit_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string file_bytes(const std::string& path) { return io::read_text(path); }

io::SimConfig tiny_sim() {
    io::SimConfig c;
    c.grid = {32, 32, 1.0};
    c.packet = {0.6, 0.5, 0.004, 0.005, 60.0};
    c.slits = qsolve::SlitGeometry::centered();
    c.n_steps = 6;
    c.record_stride = 3;
    c.screen_x = 0.9;
    return c;
}

}  // namespace

TEST(Binary, FieldRoundTripIsExact) {
    TempDir dir;
    const qsolve::Grid g{16, 12, 2.0};
    qsolve::ComplexField2D f(g);
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_y; ++j) f.values(i, j) = {std::sin(0.1 * i + j), -1.0 / (1.0 + i * j)};
    io::write_qf2(dir / "f.qf2", f, 0.125);
    const auto back = io::read_qf2(dir / "f.qf2");
    EXPECT_EQ(back.field.grid.n_x, 16u);
    EXPECT_EQ(back.field.grid.n_y, 12u);
    EXPECT_EQ(back.field.grid.length, 2.0);
    EXPECT_EQ(back.time, 0.125);
    EXPECT_EQ(back.field.values.storage(), f.values.storage());
    EXPECT_EQ(fs::file_size(dir / "f.qf2"), 28u + 16u * 16u * 12u);

    io::write_qf2(dir / "g.qf2", back.field, back.time);
    EXPECT_EQ(file_bytes(dir / "f.qf2"), file_bytes(dir / "g.qf2"));
}

TEST(Binary, ModulusRoundTripAndMismatch) {
    TempDir dir;
    const qsolve::Grid g{8, 8, 1.0};
    qsolve::ModulusFrame m(8, 8, 0.0);
    m(3, 4) = 0.75;
    io::write_qm2(dir / "m.qm2", m, g, 1.5);
    const auto back = io::read_qm2(dir / "m.qm2");
    EXPECT_EQ(back.modulus.storage(), m.storage());
    EXPECT_EQ(back.time, 1.5);

    EXPECT_THROW(io::read_qf2(dir / "m.qm2"), ParseError);

    auto bytes = file_bytes(dir / "m.qm2");
    io::write_text(dir / "short.qm2", bytes.substr(0, bytes.size() - 8));
    EXPECT_THROW(io::read_qm2(dir / "short.qm2"), ParseError);
    io::write_text(dir / "tiny.qm2", bytes.substr(0, 10));
    EXPECT_THROW(io::read_qm2(dir / "tiny.qm2"), ParseError);
}

TEST(Csv, ParseErrorNamesTheLine) {
    std::istringstream in("# comment\nx,y\n1,2\n\n3\n");
    try {
        io::parse_csv(in);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5u);
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
    }
}

TEST(Csv, HistogramRoundTrip) {
    TempDir dir;
    analysis::ScreenHistogram h;
    h.first_edge = -8.0;
    h.bin_size = 4.0;
    h.counts = {0, 3, 7, 0, 2};
    h.total = 12;
    io::write_text(dir / "h.csv", io::histogram_csv(h, {"seed = 1"}));
    const auto back = io::read_histogram(dir / "h.csv");
    EXPECT_EQ(back.counts, h.counts);
    EXPECT_EQ(back.first_edge, -8.0);
    EXPECT_EQ(back.bin_size, 4.0);
    EXPECT_EQ(back.total, 12u);
    EXPECT_EQ(io::read_distribution(dir / "h.csv"), (std::vector<double>{0, 3, 7, 0, 2}));

    io::write_text(dir / "gap.csv", "bin_left,bin_right,count\n0,1,3\n2,3,1\n");
    try {
        io::read_histogram(dir / "gap.csv");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    io::write_text(dir / "neg.csv", "bin_left,bin_right,count\n0,1,-3\n");
    EXPECT_THROW(io::read_histogram(dir / "neg.csv"), ParseError);
}

TEST(Csv, PointsAndWrongHeader) {
    TempDir dir;
    io::write_text(dir / "p.csv", "x,y\n0,0\n1.5,-2\n");
    const auto pts = io::read_points(dir / "p.csv");
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[1].x, 1.5);
    EXPECT_EQ(pts[1].y, -2.0);
    io::write_text(dir / "q.csv", "a,b\n0,0\n");
    EXPECT_THROW(io::read_points(dir / "q.csv"), ParseError);
    io::write_text(dir / "r.csv", "x,y\n0,zero\n");
    try {
        io::read_points(dir / "r.csv");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(KeyValues, ParsingAndOverrides) {
    std::istringstream in("# header\nn_x = 64\n\n  dt=2e-4   # trailing\nmode = interference\n");
    const auto kv = io::parse_key_values(in);
    EXPECT_EQ(kv.values.at("n_x"), "64");
    EXPECT_EQ(kv.values.at("dt"), "2e-4");
    EXPECT_EQ(kv.line_of("dt"), 4u);

    std::istringstream bad("a = 1\nnot a pair\n");
    try {
        io::parse_key_values(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }

    const auto ov = io::parse_overrides({"trials=10", "seed = 7"});
    EXPECT_EQ(ov.values.at("trials"), "10");
    EXPECT_EQ(ov.values.at("seed"), "7");
    EXPECT_THROW(io::parse_overrides({"novalue"}), ParseError);
}

TEST(KeyValues, Numbers) {
    EXPECT_EQ(io::parse_double("0.25"), 0.25);
    EXPECT_THROW(io::parse_double("0.25x"), ParseError);
    EXPECT_EQ(io::parse_int("-3"), -3);
    EXPECT_THROW(io::parse_int("3.5"), ParseError);
    EXPECT_THROW(io::parse_uint64("-1"), ParseError);
    EXPECT_EQ(io::parse_double_list("1, 2,3"), (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(io::parse_double_list("linspace(0, 1, 5)"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
    EXPECT_EQ(io::parse_double_list("linspace(2, 9, 1)"), (std::vector<double>{2}));
    EXPECT_THROW(io::parse_double_list("linspace(0, 1)"), ParseError);
    for (double v : {0.1, 1e-300, 3.0, -2.5e7, 0.0001})
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
}

TEST(SimConfig, TextRoundTripAndUnknownKey) {
    auto c = tiny_sim();
    c.slits.v0 = 250.0;
    c.export_preset = "45x79";
    std::istringstream in(io::format_config(c));
    const auto back = io::apply(io::SimConfig{}, io::parse_key_values(in));
    EXPECT_EQ(io::format_config(back), io::format_config(c));
    EXPECT_EQ(back.slits.v0, 250.0);

    std::istringstream bad("n_x = 32\nfrobnicate = 1\n");
    try {
        io::apply(io::SimConfig{}, io::parse_key_values(bad));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Sweep, Counts) {
    io::SweepSpec one;
    one.x0 = {0.5};
    one.sigma_x = {0.002};
    one.sigma_y = {0.005};
    one.sample_cap.reset();
    EXPECT_EQ(io::enumerate_sweep(one).size(), 1u);

    auto full = io::SweepSpec::defaults();
    EXPECT_EQ(full.product(), 3990u);
    EXPECT_EQ(io::enumerate_sweep(full).size(), 3200u);
    full.sample_cap.reset();
    const auto all = io::enumerate_sweep(full, 0.9);
    EXPECT_EQ(all.size(), 3990u);
    EXPECT_EQ(all[1].sigma_y, full.sigma_y[1]);
    EXPECT_EQ(all[1].x0, full.x0[0]);
    EXPECT_DOUBLE_EQ(all.back().y0, 0.9 * full.x0.back());

    full.sample_cap = 4000;
    EXPECT_THROW(io::enumerate_sweep(full), InvalidParameter);
    full.sample_cap = 0;
    EXPECT_TRUE(io::enumerate_sweep(full).empty());
    io::SweepSpec unsorted = one;
    unsorted.x0 = {0.5, 0.4};
    EXPECT_THROW(io::enumerate_sweep(unsorted), InvalidParameter);
}

TEST(Split, HalvesAndRoundTrip) {
    Array2D<double> even(3, 4), odd(3, 5);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 4; ++j) even(i, j) = 10.0 * i + j;
        for (std::size_t j = 0; j < 5; ++j) odd(i, j) = 10.0 * i + j;
    }
    const auto [el, er] = io::split_left_right(even);
    EXPECT_EQ(el.cols(), 2u);
    EXPECT_EQ(er.cols(), 2u);
    EXPECT_EQ(er(1, 0), 12.0);
    const auto [ol, orr] = io::split_left_right(odd);
    EXPECT_EQ(ol.cols(), 3u);
    EXPECT_EQ(orr.cols(), 2u);
    EXPECT_EQ(concat_columns(ol, orr).storage(), odd.storage());
    EXPECT_THROW(io::split_left_right(Array2D<double>(3, 1)), InvalidParameter);
}

TEST(Resample, PresetsAndEndpoints) {
    EXPECT_FALSE(io::find_preset("none").has_value());
    EXPECT_EQ(io::find_preset("45x79")->rows, 45u);
    EXPECT_FALSE(io::find_preset("165")->two_d());
    EXPECT_THROW(io::find_preset("12x12"), InvalidParameter);

    const std::vector<double> v{1, 3, 5, 7};
    const auto r = io::resample(v, 7);
    EXPECT_EQ(r.front(), 1.0);
    EXPECT_EQ(r.back(), 7.0);
    EXPECT_DOUBLE_EQ(r[1], 2.0);

    Array2D<double> a(2, 2);
    a(0, 0) = 0;
    a(0, 1) = 1;
    a(1, 0) = 2;
    a(1, 1) = 3;
    const auto b = io::resample(a, 3, 3);
    EXPECT_DOUBLE_EQ(b(1, 1), 1.5);
    EXPECT_EQ(b(2, 2), 3.0);
}

TEST(Manifest, WriteReadWriteIsByteIdentical) {
    io::DatasetManifest m;
    m.config_hash = "0123456789abcdef";
    m.sample_cap = 2;
    io::SampleRecord a;
    a.id = 0;
    a.packet = {0.5, 0.45, 0.002, 0.005, 100};
    a.files = {"sample_00000/initial.qf2"};
    a.t1 = io::TimePointRecord{3, 150};
    a.t2 = io::TimePointRecord{5, 250};
    a.t3 = io::TimePointRecord{7, 350};
    io::SampleRecord b;
    b.id = 1;
    b.packet = {0.51, 0.459, 0.0021, 0.005, 100};
    b.status = "no-crossing";
    m.samples = {a, b};
    const auto text = io::manifest_text(m);
    const auto back = io::parse_manifest(text);
    EXPECT_EQ(io::manifest_text(back), text);
    EXPECT_EQ(back.samples[1].packet.sigma_x, 0.0021);
    EXPECT_FALSE(back.samples[1].t1.has_value());
    EXPECT_EQ(back.samples[0].t3->step, 350u);
    EXPECT_THROW(io::parse_manifest("{\"version\": 1"), ParseError);
}

TEST(Dataset, TinySweepIsDeterministic) {
    TempDir d1, d2;
    io::SweepSpec spec;
    spec.x0 = {0.55};
    spec.sigma_x = {0.004, 0.005};
    spec.sigma_y = {0.005};
    spec.k = 60;
    spec.sample_cap.reset();
    auto cfg = tiny_sim();
    cfg.export_preset = "33x70";

    const auto m1 = io::generate_dataset(spec, cfg, d1.path(), 1);
    const auto m2 = io::generate_dataset(spec, cfg, d2.path(), 2);
    ASSERT_EQ(m1.samples.size(), 2u);
    EXPECT_EQ(m1.config_hash, m2.config_hash);
    EXPECT_EQ(file_bytes(d1 / "manifest.json"), file_bytes(d2 / "manifest.json"));
    for (const auto& s : m1.samples) {
        EXPECT_NE(s.status, "error") << s.error;
        for (const auto& f : s.files) {
            ASSERT_TRUE(fs::exists(d1.path() / f)) << f;
            EXPECT_EQ(file_bytes(d1 / f), file_bytes(d2 / f)) << f;
        }
    }
    const auto parsed = io::parse_manifest(file_bytes(d1 / "manifest.json"));
    EXPECT_EQ(parsed.samples.size(), 2u);

    spec.sample_cap = 0;
    TempDir d3;
    const auto empty = io::generate_dataset(spec, cfg, d3.path(), 1);
    EXPECT_TRUE(empty.samples.empty());
    EXPECT_NE(empty.config_hash, m1.config_hash);
    EXPECT_TRUE(fs::exists(d3.path() / "manifest.json"));
}

TEST(Dataset, FailuresAreRecordedNotThrown) {
    TempDir dir;
    auto cfg = tiny_sim();
    cfg.solver.max_iterations = 1;
    cfg.solver.tolerance = 1e-15;
    const auto rec = io::run_sample(0, cfg.packet, cfg, dir.path());
    EXPECT_EQ(rec.status, "solver-failure");
    EXPECT_FALSE(rec.error.empty());

    const auto bad = io::run_sample(1, {0.5, 0.5, 1e-9, 1e-9, 0}, tiny_sim(), dir.path());
    EXPECT_EQ(bad.status, "error");
}

TEST(Image, PgmLayout) {
    Array2D<double> f(3, 2, 0.0);
    f(2, 1) = 4.0;
    f(0, 0) = 2.0;
    const auto bytes = io::pgm_bytes(f);
    const std::string head = "P5\n3 2\n255\n";
    ASSERT_EQ(bytes.substr(0, head.size()), head);
    const std::string px = bytes.substr(head.size());
    ASSERT_EQ(px.size(), 6u);
    EXPECT_EQ(static_cast<unsigned char>(px[2]), 255);
    EXPECT_EQ(static_cast<unsigned char>(px[3]), 128);
    EXPECT_EQ(static_cast<unsigned char>(px[0]), 0);
}
