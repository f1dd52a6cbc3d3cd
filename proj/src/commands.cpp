#include "doughslit/cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "doughslit/analysis.hpp"
#include "doughslit/dough.hpp"
#include "doughslit/io.hpp"
#include "doughslit/parallel.hpp"
#include "doughslit/qsolve.hpp"

namespace doughslit::cli {

namespace fs = std::filesystem;

namespace {

/// Built-in defaults < config file < --set overrides.
io::KeyValues layered(const CommonOptions& o) {
    io::KeyValues kv;
    if (!o.config.empty()) kv.merge(io::read_key_values(o.config));
    kv.merge(io::parse_overrides(o.sets));
    return kv;
}

void write_resolved(const fs::path& dir, const std::string& body, std::size_t jobs) {
    io::write_text((dir / "resolved_config.txt").string(), body + "jobs = " + std::to_string(jobs) + "\n");
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- evolve

int cmd_evolve(const CommonOptions& o) {
    const auto cfg = io::apply(io::SimConfig{}, layered(o));
    cfg.validate();
    const std::string text = io::format_config(cfg);
    if (o.dry_run) {
        std::cout << text;
        return 0;
    }
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_resolved(dir, text, o.jobs);
    const auto comments = io::comment_block(text);

    const auto initial = qsolve::init_packet(cfg.grid, cfg.resolved_packet());
    const auto potential = qsolve::build_potential(cfg.grid, cfg.slits);
    io::write_qf2((dir / "initial.qf2").string(), initial, 0.0);
    const auto series = qsolve::evolve(initial, potential, cfg.solver, cfg.n_steps, cfg.record_stride);
    io::write_qf2((dir / "final.qf2").string(), series.final_field, static_cast<double>(cfg.n_steps) * cfg.solver.dt);

    for (const auto& f : series.frames) {
        char name[64];
        std::snprintf(name, sizeof name, "frame_%06zu", f.step);
        io::write_qm2((dir / (std::string(name) + ".qm2")).string(), f.modulus, cfg.grid, f.time);
        io::write_pgm((dir / (std::string(name) + ".pgm")).string(), f.modulus);
    }

    auto write_profile = [&](const qsolve::RecordedFrame& f, const std::string& tag) {
        try {
            const auto p = qsolve::screen_profile(f.modulus, cfg.grid, cfg.slits, cfg.screen_x);
            io::write_text((dir / ("profile_" + tag + ".csv")).string(), io::profile_csv(p, comments));
        } catch (const EmptyProfile& e) {
            std::cerr << "warning: " << tag << " profile skipped: " << e.what() << '\n';
        }
    };
    write_profile(series.frames.back(), "final");
    if (const auto tp = qsolve::select_time_points(series, cfg.slits)) {
        write_profile(series.frames[tp->t1], "T1");
        write_profile(series.frames[tp->t2], "T2");
        write_profile(series.frames[tp->t3], "T3");
        std::cout << "time points: T1=step " << series.frames[tp->t1].step << " T2=step "
                  << series.frames[tp->t2].step << " T3=step " << series.frames[tp->t3].step << '\n';
    } else {
        std::cout << "time points: no probability crossed the barrier\n";
    }
    std::cout << "steps=" << cfg.n_steps << " frames=" << series.frames.size()
              << " final_norm=" << io::format_double(qsolve::l2_norm(series.final_field)) << '\n';
    return 0;
}

// ---------------------------------------------------------------- dough

namespace {

struct FringeKeys {
    analysis::FringeOptions options;

    /// Moves the analysis keys out of `kv` and applies them.
    void take(io::KeyValues& kv) {
        auto grab = [&](const char* key, auto&& fn) {
            auto it = kv.values.find(key);
            if (it == kv.values.end()) return;
            fn(it->second, kv.line_of(key));
            kv.values.erase(it);
            kv.lines.erase(key);
        };
        grab("smooth_window", [&](const std::string& v, std::size_t l) {
            const auto w = io::parse_int(v, l);
            if (w < 1) throw InvalidParameter("smooth_window must be at least 1");
            options.smooth_window = static_cast<std::size_t>(w);
        });
        grab("min_prominence", [&](const std::string& v, std::size_t l) { options.min_prominence = io::parse_double(v, l); });
        grab("cv_threshold", [&](const std::string& v, std::size_t l) { options.cv_threshold = io::parse_double(v, l); });
    }

    std::string text() const {
        return "smooth_window = " + std::to_string(options.smooth_window) +
               "\nmin_prominence = " + io::format_double(options.min_prominence) +
               "\ncv_threshold = " + io::format_double(options.cv_threshold) + "\n";
    }
};


void apply_flags(io::KeyValues& kv, const DoughFlags& f) {
    if (f.mode) kv.set("mode", *f.mode);
    if (f.trials) kv.set("trials", std::to_string(*f.trials));
    if (f.seed) kv.set("master_seed", std::to_string(*f.seed));
    if (f.t_interact) kv.set("t_interact", std::to_string(*f.t_interact));
    if (f.force_levels) kv.set("force_levels", std::to_string(*f.force_levels));
    if (f.weight_levels) kv.set("weight_levels", std::to_string(*f.weight_levels));
    if (f.total_steps) kv.set("total_steps", std::to_string(*f.total_steps));
    if (f.bin) kv.set("bin_size", io::format_double(*f.bin));
    if (f.smooth_window) kv.set("smooth_window", std::to_string(*f.smooth_window));
}

/// DOUGHSLIT_SEED sits just above the built-in default.
io::KeyValues seed_fallback() {
    io::KeyValues kv;
    if (const char* env = std::getenv("DOUGHSLIT_SEED"); env && *env) kv.set("master_seed", env);
    return kv;
}

/// Writes arrivals, histograms, fringe report and SVG for one run into `dir`.
analysis::FringeReport write_dough_outputs(const fs::path& dir, const dough::DoughResult& r,
                                           const analysis::FringeOptions& fo, const io::Comments& comments) {
    fs::create_directories(dir);
    io::write_text((dir / "arrivals.csv").string(), io::arrivals_csv(r, comments));
    io::write_text((dir / "histogram.csv").string(), io::histogram_csv(r.histogram, comments));
    if (r.config.mode == dough::Mode::NoInterference) {
        io::write_text((dir / "histogram_left.csv").string(), io::histogram_csv(r.left, comments));
        io::write_text((dir / "histogram_right.csv").string(), io::histogram_csv(r.right, comments));
    }
    const auto report = analysis::analyze_fringes(r.histogram, fo);
    io::write_text((dir / "fringes.csv").string(), io::fringes_csv(report, comments));
    io::write_text((dir / "histogram.svg").string(),
                   io::histogram_svg(r.histogram, report.envelope, "dough model, " + dough::to_string(r.config.mode)));
    return report;
}

}  // namespace

int cmd_dough(const CommonOptions& o, const DoughFlags& flags) {
    io::KeyValues kv = seed_fallback();
    kv.merge(layered(o));
    apply_flags(kv, flags);
    FringeKeys fk;
    fk.take(kv);
    const auto cfg = dough::apply(dough::DoughConfig{}, kv);
    cfg.validate();
    const std::string text = dough::format_config(cfg) + fk.text();
    if (o.dry_run) {
        std::cout << text;
        return 0;
    }
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_resolved(dir, text, o.jobs);
    const auto r = dough::run(cfg, {o.jobs, false});
    const auto report = write_dough_outputs(dir, r, fk.options, io::comment_block(text));
    std::cout << io::fringe_summary(report.metrics) << " visibility=" << io::format_double(report.metrics.visibility)
              << '\n';
    return 0;
}

// ---------------------------------------------------------------- sweep

namespace {

int sweep_simulation(const CommonOptions& o, io::KeyValues kv) {
    io::SweepSpec spec = io::SweepSpec::defaults();
    auto take = [&](const char* key, auto&& fn) {
        auto it = kv.values.find(key);
        if (it == kv.values.end()) return;
        fn(it->second, kv.line_of(key));
        kv.values.erase(it);
        kv.lines.erase(key);
    };
    take("sweep_x0", [&](const std::string& v, std::size_t l) { spec.x0 = io::parse_double_list(v, l); });
    take("sweep_sigma_x", [&](const std::string& v, std::size_t l) { spec.sigma_x = io::parse_double_list(v, l); });
    take("sweep_sigma_y", [&](const std::string& v, std::size_t l) { spec.sigma_y = io::parse_double_list(v, l); });
    take("sweep_k", [&](const std::string& v, std::size_t l) { spec.k = io::parse_double(v, l); });
    take("sample_cap", [&](const std::string& v, std::size_t l) {
        if (v == "none") spec.sample_cap.reset();
        else spec.sample_cap = static_cast<std::size_t>(io::parse_uint64(v, l));
    });
    const auto cfg = io::apply(io::SimConfig{}, kv);
    cfg.validate();
    spec.validate();
    const auto samples = io::enumerate_sweep(spec, cfg.y0_ratio);
    const std::string text = "kind = simulation\n" + io::format_config(cfg) + "sample_cap = " +
                             (spec.sample_cap ? std::to_string(*spec.sample_cap) : std::string("none")) +
                             "\nsample_count = " + std::to_string(samples.size()) + "\n";
    if (o.dry_run) {
        std::cout << text;
        return 0;
    }
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_resolved(dir, text, o.jobs);
    std::size_t done = 0;
    const auto m = io::generate_dataset(spec, cfg, dir, o.jobs, [&](const io::SampleRecord& s) {
        ++done;
        std::cout << "sample " << done << "/" << samples.size() << " id=" << s.id << " status=" << s.status << '\n'
                  << std::flush;
    });
    std::size_t failed = 0;
    for (const auto& s : m.samples) failed += s.status != "ok";
    std::cout << "manifest: " << (dir / "manifest.json").string() << " samples=" << m.samples.size()
              << " not_ok=" << failed << " config_hash=" << m.config_hash << '\n';
    return 0;
}

int sweep_dough(const CommonOptions& o, io::KeyValues kv) {
    std::vector<int> t_values;
    std::vector<int> f_values;
    auto take_ints = [&](const char* key, std::vector<int>& out) {
        auto it = kv.values.find(key);
        if (it == kv.values.end()) return;
        for (double d : io::parse_double_list(it->second, kv.line_of(key))) {
            if (d != std::floor(d)) throw ParseError(std::string(key) + " expects integers", kv.line_of(key));
            out.push_back(static_cast<int>(d));
        }
        kv.values.erase(it);
        kv.lines.erase(key);
    };
    take_ints("sweep_t_interact", t_values);
    take_ints("sweep_force_levels", f_values);
    FringeKeys fk;
    fk.take(kv);
    const auto base = dough::apply(dough::DoughConfig{}, kv);
    if (t_values.empty()) t_values.push_back(base.t_interact);
    if (f_values.empty()) f_values.push_back(base.force_levels);

    std::vector<dough::DoughConfig> configs;
    for (int f : f_values)
        for (int t : t_values) {
            auto c = base;
            c.force_levels = f;
            c.t_interact = t;
            c.validate();
            configs.push_back(c);
        }
    std::string text = "kind = dough\n" + dough::format_config(base) + fk.text();
    if (o.dry_run) {
        std::cout << text << "runs = " << configs.size() << '\n';
        return 0;
    }
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_resolved(dir, text, o.jobs);

    nlohmann::ordered_json manifest;
    manifest["version"] = io::toolkit_version;
    manifest["kind"] = "dough";
    manifest["config_hash"] = io::hex64(io::fnv1a(text));
    auto runs = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto& c = configs[k];
        char name[32];
        std::snprintf(name, sizeof name, "run_%03zu", k);
        const std::string ctext = dough::format_config(c) + fk.text();
        const auto r = dough::run(c, {o.jobs, false});
        const auto report = write_dough_outputs(dir / name, r, fk.options, io::comment_block(ctext));
        const auto& m = report.metrics;
        std::cout << name << " t_interact=" << c.t_interact << " force_levels=" << c.force_levels << " "
                  << io::fringe_summary(m) << " visibility=" << io::format_double(m.visibility) << '\n';
        nlohmann::ordered_json e;
        e["id"] = k;
        e["dir"] = name;
        e["t_interact"] = c.t_interact;
        e["force_levels"] = c.force_levels;
        e["peaks"] = m.peak_count;
        e["spacing"] = m.spacing ? nlohmann::ordered_json(m.spacing->mean) : nlohmann::ordered_json(nullptr);
        e["cv"] = m.spacing ? nlohmann::ordered_json(m.spacing->cv) : nlohmann::ordered_json(nullptr);
        e["visibility"] = m.visibility;
        e["fringed"] = m.fringed;
        runs.push_back(std::move(e));
    }
    manifest["runs"] = std::move(runs);
    io::write_text((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

}  // namespace

int cmd_sweep(const CommonOptions& o, const std::optional<std::uint64_t>& seed) {
    io::KeyValues kv = layered(o);
    std::string kind = "simulation";
    if (auto it = kv.values.find("kind"); it != kv.values.end()) {
        kind = it->second;
        kv.values.erase(it);
        kv.lines.erase("kind");
    }
    if (kind == "simulation") return sweep_simulation(o, kv);
    if (kind == "dough") {
        io::KeyValues with_seed = seed_fallback();
        with_seed.merge(kv);
        if (seed) with_seed.set("master_seed", std::to_string(*seed));
        return sweep_dough(o, with_seed);
    }
    throw ParseError("unknown sweep kind '" + kind + "' (expected simulation or dough)", kv.line_of("kind"));
}

// ---------------------------------------------------------------- analyze

int cmd_similarity(const std::string& a, const std::string& b) {
    const auto p = io::read_distribution(a);
    const auto q = io::read_distribution(b);
    std::cout << "similarity=" << fmt4(analysis::similarity(p, q)) << '\n';
    return 0;
}

int cmd_fringes(const std::string& path, const analysis::FringeOptions& fo, const std::string& out) {
    const auto table = io::read_csv(path);
    analysis::ScreenHistogram h;
    if (table.header == std::vector<std::string>{"bin_left", "bin_right", "count"}) {
        h = io::read_histogram(path);
    } else {
        // Any other headed CSV: last column on unit bins.
        const auto v = io::read_distribution(path);
        h.first_edge = 0.0;
        h.bin_size = 1.0;
        for (double x : v) {
            if (x < 0 || x != std::floor(x)) throw ParseError(path + ": counts must be nonnegative integers");
            h.counts.push_back(static_cast<std::uint64_t>(x));
            h.total += h.counts.back();
        }
    }
    const auto report = analysis::analyze_fringes(h, fo);
    if (!out.empty()) io::write_text(out, io::fringes_csv(report));
    std::cout << io::fringe_summary(report.metrics) << " visibility=" << io::format_double(report.metrics.visibility)
              << '\n';
    for (const auto& p : report.peaks)
        std::cout << "peak center=" << io::format_double(p.position) << " height=" << io::format_double(p.height) << '\n';
    return 0;
}

int cmd_centrality(const std::string& path, const std::string& radii_text, const std::string& metric_name,
                   const std::string& out) {
    const auto points = io::read_points(path);
    if (points.empty()) throw InvalidParameter(path + ": no points");
    const auto radii = io::parse_double_list(radii_text);
    analysis::PathMetric metric;
    if (metric_name == "hops") metric = analysis::PathMetric::Hops;
    else if (metric_name == "euclidean") metric = analysis::PathMetric::Euclidean;
    else throw InvalidParameter("unknown metric '" + metric_name + "'");
    const auto sweep = analysis::sweep_radius(points, radii, metric);
    for (const auto& s : sweep.samples)
        std::cout << "r=" << io::format_double(s.radius) << " max=" << io::format_double(s.max_closeness)
                  << " argmax_count=" << s.argmax_count << '\n';
    const auto g = analysis::proximity_graph(points, sweep.selected_radius);
    const auto c = analysis::closeness_centrality(g, metric);
    std::cout << "selected r=" << io::format_double(sweep.selected_radius) << " sources=";
    for (std::size_t k = 0; k < sweep.sources.size(); ++k) std::cout << (k ? "," : "") << sweep.sources[k];
    std::cout << '\n';
    for (std::size_t k = 0; k < c.values.size(); ++k)
        std::cout << "node " << k << " closeness=" << io::format_double(c.values[k]) << '\n';
    if (!out.empty())
        io::write_text(out, io::centrality_csv(g, c, {"radius = " + io::format_double(sweep.selected_radius),
                                                     "metric = " + metric_name}));
    return 0;
}

// ---------------------------------------------------------------- render

int cmd_render(const std::string& in, const std::string& out) {
    std::ifstream probe(in, std::ios::binary);
    char magic[4] = {};
    if (!probe.read(magic, 4)) throw ParseError(in + ": too short for a QF2/QM2 header");
    if (std::string(magic, 3) == "QF2") {
        const auto f = io::read_qf2(in);
        io::write_pgm(out, qsolve::modulus(f.field));
    } else if (std::string(magic, 3) == "QM2") {
        io::write_pgm(out, io::read_qm2(in).modulus);
    } else {
        throw ParseError(in + ": not a QF2 or QM2 file");
    }
    std::cout << "wrote " << out << '\n';
    return 0;
}

}  // namespace doughslit::cli
