#ifndef DOUGHSLIT_IO_DATASET_HPP
#define DOUGHSLIT_IO_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "doughslit/array2d.hpp"
#include "doughslit/error.hpp"
#include "doughslit/io/binary.hpp"
#include "doughslit/io/csv.hpp"
#include "doughslit/io/sim_config.hpp"
#include "doughslit/parallel.hpp"
#include "doughslit/qsolve.hpp"

namespace doughslit::io {

inline constexpr const char* toolkit_version = "1.0.0";

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct SweepSpec {
    std::vector<double> x0;
    std::vector<double> sigma_x;
    std::vector<double> sigma_y;
    double k = 100.0;
    std::optional<std::size_t> sample_cap = 3200;

    /// 21 x 38 x 5 grid of small dispersions around mid-domain.
    static SweepSpec defaults() {
        SweepSpec s;
        for (int i = 0; i < 21; ++i) s.x0.push_back(0.40 + 0.01 * i);
        for (int i = 0; i < 38; ++i) s.sigma_x.push_back(0.0010 + 0.0001 * i);
        s.sigma_y = {0.0030, 0.0034, 0.0038, 0.0042, 0.0046};
        return s;
    }

    std::size_t product() const { return x0.size() * sigma_x.size() * sigma_y.size(); }

    void validate() const {
        for (const auto* list : {&x0, &sigma_x, &sigma_y}) {
            if (list->empty()) throw InvalidParameter("sweep value lists must be nonempty");
            for (std::size_t i = 1; i < list->size(); ++i)
                if (!((*list)[i] > (*list)[i - 1])) throw InvalidParameter("sweep value lists must be strictly increasing");
        }
        if (sample_cap && *sample_cap > product()) throw InvalidParameter("sample cap exceeds the sweep size");
    }
};

/// Cartesian product with x0 outermost and sigma_y innermost, truncated to the cap.
inline std::vector<qsolve::WavePacketParams> enumerate_sweep(const SweepSpec& s, double y0_ratio = 1.0) {
    s.validate();
    const std::size_t n = s.sample_cap ? *s.sample_cap : s.product();
    std::vector<qsolve::WavePacketParams> out;
    out.reserve(n);
    for (double x0 : s.x0)
        for (double sx : s.sigma_x)
            for (double sy : s.sigma_y) {
                if (out.size() == n) return out;
                out.push_back({x0, y0_ratio * x0, sx, sy, s.k});
            }
    return out;
}

/// Splits a frame about the column midline; an odd center column goes left.
template <class T>
std::pair<Array2D<T>, Array2D<T>> split_left_right(const Array2D<T>& a) {
    if (a.cols() < 2) throw InvalidParameter("frame must be at least 2 columns wide to split");
    return split_columns(a);
}

/// Named export resolutions; 2D presets give (rows, cols), 1D presets only a length.
struct ResamplePreset {
    std::string name;
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool two_d() const { return cols != 0; }
};

inline std::optional<ResamplePreset> find_preset(const std::string& name) {
    static const std::vector<ResamplePreset> presets{
        {"33x70", 33, 70}, {"45x79", 45, 79}, {"165x76", 165, 76}, {"79", 79, 0}, {"165", 165, 0}};
    if (name == "none") return std::nullopt;
    for (const auto& p : presets)
        if (p.name == name) return p;
    throw InvalidParameter("unknown export preset '" + name + "'");
}

namespace detail {
inline double sample_linear(std::span<const double> v, double pos) {
    const auto i0 = static_cast<std::size_t>(std::floor(pos));
    if (i0 + 1 >= v.size()) return v.back();
    const double t = pos - static_cast<double>(i0);
    return (1.0 - t) * v[i0] + t * v[i0 + 1];
}
inline double scale(std::size_t k, std::size_t from, std::size_t to) {
    return to == 1 ? 0.0 : static_cast<double>(k) * static_cast<double>(from - 1) / static_cast<double>(to - 1);
}
}  // namespace detail

/// Linear resampling with both end points preserved.
inline std::vector<double> resample(std::span<const double> v, std::size_t n) {
    if (v.empty() || n == 0) throw InvalidParameter("cannot resample an empty series");
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = detail::sample_linear(v, detail::scale(k, v.size(), n));
    return out;
}

/// Bilinear resampling of a frame to rows x cols.
inline Array2D<double> resample(const Array2D<double>& a, std::size_t rows, std::size_t cols) {
    if (a.empty() || rows == 0 || cols == 0) throw InvalidParameter("cannot resample an empty frame");
    Array2D<double> tmp(a.rows(), cols);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = resample(a.row(i), cols);
        std::copy(r.begin(), r.end(), tmp.row(i).begin());
    }
    Array2D<double> out(rows, cols);
    std::vector<double> column(a.rows());
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) column[i] = tmp(i, j);
        const auto r = resample(column, rows);
        for (std::size_t i = 0; i < rows; ++i) out(i, j) = r[i];
    }
    return out;
}

struct TimePointRecord {
    std::size_t frame = 0;
    std::size_t step = 0;
};

struct SampleRecord {
    std::size_t id = 0;
    qsolve::WavePacketParams packet;
    std::string status = "ok";
    std::string error;
    std::vector<std::string> files;  ///< relative to the dataset directory
    std::optional<TimePointRecord> t1, t2, t3;
};

struct DatasetManifest {
    std::string version = toolkit_version;
    std::string config_hash;
    std::optional<std::size_t> sample_cap;
    std::vector<SampleRecord> samples;
};

inline nlohmann::ordered_json to_json(const DatasetManifest& m) {
    using J = nlohmann::ordered_json;
    J j;
    j["version"] = m.version;
    j["config_hash"] = m.config_hash;
    j["sample_cap"] = m.sample_cap ? J(*m.sample_cap) : J(nullptr);
    j["sample_count"] = m.samples.size();
    J arr = J::array();
    for (const auto& s : m.samples) {
        J e;
        e["id"] = s.id;
        e["x0"] = s.packet.x0;
        e["y0"] = s.packet.y0;
        e["sigma_x"] = s.packet.sigma_x;
        e["sigma_y"] = s.packet.sigma_y;
        e["k"] = s.packet.k;
        e["status"] = s.status;
        e["error"] = s.error;
        e["files"] = s.files;
        for (auto [name, tp] : {std::pair{"T1", &s.t1}, std::pair{"T2", &s.t2}, std::pair{"T3", &s.t3}})
            e[name] = *tp ? J{{"frame", (*tp)->frame}, {"step", (*tp)->step}} : J(nullptr);
        arr.push_back(std::move(e));
    }
    j["samples"] = std::move(arr);
    return j;
}

inline std::string manifest_text(const DatasetManifest& m) { return to_json(m).dump(2) + "\n"; }

inline DatasetManifest parse_manifest(const std::string& text) {
    DatasetManifest m;
    try {
        const auto j = nlohmann::ordered_json::parse(text);
        m.version = j.at("version").get<std::string>();
        m.config_hash = j.at("config_hash").get<std::string>();
        if (!j.at("sample_cap").is_null()) m.sample_cap = j.at("sample_cap").get<std::size_t>();
        for (const auto& e : j.at("samples")) {
            SampleRecord s;
            s.id = e.at("id").get<std::size_t>();
            s.packet = {e.at("x0").get<double>(), e.at("y0").get<double>(), e.at("sigma_x").get<double>(),
                        e.at("sigma_y").get<double>(), e.at("k").get<double>()};
            s.status = e.at("status").get<std::string>();
            s.error = e.at("error").get<std::string>();
            s.files = e.at("files").get<std::vector<std::string>>();
            for (auto [name, tp] : {std::pair{"T1", &s.t1}, std::pair{"T2", &s.t2}, std::pair{"T3", &s.t3}})
                if (!e.at(name).is_null())
                    *tp = TimePointRecord{e.at(name).at("frame").get<std::size_t>(), e.at(name).at("step").get<std::size_t>()};
            m.samples.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed manifest: ") + e.what());
    }
    return m;
}

namespace detail {

inline std::string sample_dir_name(std::size_t id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sample_%05zu", id);
    return buf;
}

inline std::string step_name(const char* prefix, std::size_t step, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%06zu.%s", prefix, step, ext);
    return buf;
}

}  // namespace detail

/**
 * Runs one evolution for `packet` and writes its files under `root/<sample dir>`.
 * Solver and geometry failures are captured in the returned record.
 */
inline SampleRecord run_sample(std::size_t id, const qsolve::WavePacketParams& packet, const SimConfig& cfg,
                               const std::filesystem::path& root, const Comments& comments = {}) {
    namespace fs = std::filesystem;
    SampleRecord rec;
    rec.id = id;
    rec.packet = packet;
    const std::string dir = detail::sample_dir_name(id);
    try {
        fs::create_directories(root / dir);
        const auto initial = qsolve::init_packet(cfg.grid, packet);
        const auto potential = qsolve::build_potential(cfg.grid, cfg.slits);
        auto add = [&](const std::string& name) {
            rec.files.push_back(dir + "/" + name);
            return (root / dir / name).string();
        };
        write_qf2(add("initial.qf2"), initial, 0.0);
        const auto series = qsolve::evolve(initial, potential, cfg.solver, cfg.n_steps, cfg.record_stride);
        for (const auto& f : series.frames) write_qm2(add(detail::step_name("frame", f.step, "qm2")), f.modulus, cfg.grid, f.time);

        const auto preset = find_preset(cfg.export_preset);
        if (const auto tp = qsolve::select_time_points(series, cfg.slits)) {
            const std::size_t idx[3] = {tp->t1, tp->t2, tp->t3};
            std::optional<TimePointRecord>* slots[3] = {&rec.t1, &rec.t2, &rec.t3};
            for (int k = 0; k < 3; ++k) {
                const auto& frame = series.frames[idx[k]];
                *slots[k] = TimePointRecord{idx[k], frame.step};
                const std::string tag = "T" + std::to_string(k + 1);
                auto profile = qsolve::screen_profile(frame.modulus, cfg.grid, cfg.slits, cfg.screen_x);
                if (preset && !preset->two_d()) {
                    profile.probability = resample(profile.probability, preset->rows);
                    profile.y = resample(profile.y, preset->rows);
                }
                write_text(add("profile_" + tag + ".csv"), profile_csv(profile, comments));
                if (preset && preset->two_d()) {
                    const auto [left, right] = split_left_right(frame.modulus);
                    write_qm2(add("split_" + tag + "_left.qm2"), resample(left, preset->rows, preset->cols),
                              {preset->rows, preset->cols, cfg.grid.length}, frame.time);
                    write_qm2(add("split_" + tag + "_right.qm2"), resample(right, preset->rows, preset->cols),
                              {preset->rows, preset->cols, cfg.grid.length}, frame.time);
                }
            }
        } else {
            rec.status = "no-crossing";
        }
    } catch (const SolverFailure& e) {
        rec.status = "solver-failure";
        rec.error = e.what();
    } catch (const Error& e) {
        rec.status = "error";
        rec.error = e.what();
    }
    return rec;
}

using Progress = std::function<void(const SampleRecord&)>;

/**
 * Runs every sample of the sweep (one simulation per worker) and writes
 * manifest.json. Records are assembled in sample-id order.
 */
inline DatasetManifest generate_dataset(const SweepSpec& spec, const SimConfig& cfg, const std::filesystem::path& out,
                                        std::size_t jobs = 1, const Progress& progress = {}) {
    cfg.validate();
    find_preset(cfg.export_preset);
    const auto samples = enumerate_sweep(spec, cfg.y0_ratio);
    std::filesystem::create_directories(out);

    DatasetManifest m;
    m.sample_cap = spec.sample_cap;
    std::string canon = format_config(cfg);
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (double d : v) s += (s.empty() ? "" : ",") + format_double(d);
        return s;
    };
    canon += "sweep_x0 = " + list(spec.x0) + "\nsweep_sigma_x = " + list(spec.sigma_x) +
             "\nsweep_sigma_y = " + list(spec.sigma_y) + "\nsweep_k = " + format_double(spec.k) + "\nsample_cap = " +
             (spec.sample_cap ? std::to_string(*spec.sample_cap) : std::string("none")) + "\n";
    m.config_hash = hex64(fnv1a(canon));

    const Comments comments = comment_block(canon);
    m.samples.resize(samples.size());
    std::mutex progress_mutex;
    parallel_for(samples.size(), jobs, [&](std::size_t i) {
        m.samples[i] = run_sample(i, samples[i], cfg, out, comments);
        if (progress) {
            std::lock_guard lock(progress_mutex);
            progress(m.samples[i]);
        }
    });
    write_text((out / "manifest.json").string(), manifest_text(m));
    return m;
}

}  // namespace doughslit::io

#endif  // DOUGHSLIT_IO_DATASET_HPP
