#ifndef DOUGHSLIT_IO_CSV_HPP
#define DOUGHSLIT_IO_CSV_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doughslit/analysis/graph.hpp"
#include "doughslit/analysis/histogram.hpp"
#include "doughslit/analysis/peaks.hpp"
#include "doughslit/dough/simulate.hpp"
#include "doughslit/error.hpp"
#include "doughslit/io/keyvalue.hpp"
#include "doughslit/qsolve/screen.hpp"

namespace doughslit::io {

/// Lines written as `# ...` ahead of the CSV header.
using Comments = std::vector<std::string>;

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void put_comments(std::ostream& os, const Comments& c) {
    for (const auto& line : c) os << "# " << line << '\n';
}

/// Turns a multi-line `key = value` block into comment lines.
inline Comments comment_block(const std::string& text) {
    Comments c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) c.push_back(line);
    return c;
}

inline std::string profile_csv(const qsolve::ScreenProfile& p, const Comments& c = {}) {
    std::ostringstream os;
    put_comments(os, c);
    os << "y,probability\n";
    for (std::size_t j = 0; j < p.y.size(); ++j) os << format_double(p.y[j]) << ',' << format_double(p.probability[j]) << '\n';
    return os.str();
}

inline std::string histogram_csv(const analysis::ScreenHistogram& h, const Comments& c = {}) {
    std::ostringstream os;
    put_comments(os, c);
    os << "bin_left,bin_right,count\n";
    for (std::size_t k = 0; k < h.size(); ++k)
        os << format_double(h.bin_left(k)) << ',' << format_double(h.bin_right(k)) << ',' << h.counts[k] << '\n';
    return os.str();
}

inline std::string arrivals_csv(const dough::DoughResult& r, const Comments& c = {}) {
    const bool separated = r.config.mode == dough::Mode::NoInterference;
    std::ostringstream os;
    put_comments(os, c);
    os << "trial,W_L,W_R,F_L,F_C,F_R,Y_C,arrival" << (separated ? ",first_slit" : "") << '\n';
    for (const auto& a : r.arrivals) {
        const auto& e = a.event;
        os << a.trial << ',' << e.w_left << ',' << e.w_right << ',' << e.f_left << ',' << e.f_center << ','
           << e.f_right << ',' << format_double(a.start_y) << ',' << format_double(a.arrival);
        if (separated) os << ',' << static_cast<char>(a.first_slit);
        os << '\n';
    }
    return os.str();
}

inline std::string fringe_summary(const analysis::FringeMetrics& m) {
    std::ostringstream os;
    os << "peaks=" << m.peak_count;
    if (m.spacing)
        os << " spacing=" << format_double(m.spacing->mean) << " cv=" << format_double(m.spacing->cv);
    else
        os << " spacing=nan cv=nan";
    os << " fringed=" << (m.fringed ? "true" : "false");
    return os.str();
}

inline std::string fringes_csv(const analysis::FringeReport& r, const Comments& c = {}) {
    std::ostringstream os;
    put_comments(os, c);
    os << "# " << fringe_summary(r.metrics) << " visibility=" << format_double(r.metrics.visibility) << '\n';
    os << "peak_center,height\n";
    for (const auto& p : r.peaks) os << format_double(p.position) << ',' << format_double(p.height) << '\n';
    return os.str();
}

inline std::string centrality_csv(const analysis::ProximityGraph& g, const analysis::Centrality& c,
                                  const Comments& comments = {}) {
    std::vector<bool> is_max(g.points.size(), false);
    for (auto k : c.argmax) is_max[k] = true;
    std::ostringstream os;
    put_comments(os, comments);
    os << "node,x,y,closeness,is_max\n";
    for (std::size_t k = 0; k < g.points.size(); ++k)
        os << k << ',' << format_double(g.points[k].x) << ',' << format_double(g.points[k].y) << ','
           << format_double(c.values[k]) << ',' << (is_max[k] ? 1 : 0) << '\n';
    return os.str();
}

/// Rows of a headed CSV; `#` lines and blank lines are skipped, line numbers are 1-based.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline CsvTable parse_csv(std::istream& in, const std::string& name = "input") {
    CsvTable t;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        auto cells = split_csv_line(body);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size())
            throw ParseError(name + ": expected " + std::to_string(t.header.size()) + " columns, found " +
                                 std::to_string(cells.size()),
                             n);
        t.rows.push_back(std::move(cells));
        t.lines.push_back(n);
    }
    if (t.header.empty()) throw ParseError(name + ": missing CSV header");
    return t;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_csv(in, path);
}

inline void expect_header(const CsvTable& t, const std::vector<std::string>& want, const std::string& name) {
    if (t.header != want) {
        std::string w;
        for (const auto& h : want) w += (w.empty() ? "" : ",") + h;
        throw ParseError(name + ": expected header '" + w + "'", 0);
    }
}

inline std::vector<analysis::Point2> read_points(const std::string& path) {
    const auto t = read_csv(path);
    expect_header(t, {"x", "y"}, path);
    std::vector<analysis::Point2> pts;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        pts.push_back({parse_double(t.rows[r][0], t.lines[r]), parse_double(t.rows[r][1], t.lines[r])});
    return pts;
}

/// The last column of a headed CSV as a distribution (profiles, histograms, bare value lists).
inline std::vector<double> read_distribution(const std::string& path) {
    const auto t = read_csv(path);
    std::vector<double> v;
    for (std::size_t r = 0; r < t.rows.size(); ++r) v.push_back(parse_double(t.rows[r].back(), t.lines[r]));
    return v;
}

inline analysis::ScreenHistogram read_histogram(const std::string& path) {
    const auto t = read_csv(path);
    expect_header(t, {"bin_left", "bin_right", "count"}, path);
    analysis::ScreenHistogram h;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double left = parse_double(t.rows[r][0], t.lines[r]);
        const double right = parse_double(t.rows[r][1], t.lines[r]);
        if (!(right > left)) throw ParseError(path + ": bin edges not increasing", t.lines[r]);
        if (r == 0) {
            h.first_edge = left;
            h.bin_size = right - left;
        } else if (std::abs(left - h.bin_right(r - 1)) > 1e-9 * std::max(1.0, std::abs(left))) {
            throw ParseError(path + ": bins are not contiguous", t.lines[r]);
        }
        const auto count = parse_uint64(t.rows[r][2], t.lines[r]);
        h.counts.push_back(count);
        h.total += count;
    }
    return h;
}

}  // namespace doughslit::io

#endif  // DOUGHSLIT_IO_CSV_HPP
