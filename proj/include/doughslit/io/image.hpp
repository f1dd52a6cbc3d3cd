#ifndef DOUGHSLIT_IO_IMAGE_HPP
#define DOUGHSLIT_IO_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "doughslit/array2d.hpp"
#include "doughslit/io/csv.hpp"

namespace doughslit::io {

/**
 * Binary PGM (P5) heatmap of a frame scaled so its maximum maps to 255.
 * Image columns follow the first array index (x) and rows run from the largest
 * second index (y) at the top down to zero.
 */
inline std::string pgm_bytes(const Array2D<double>& frame) {
    const std::size_t w = frame.rows(), h = frame.cols();
    double top = 0.0;
    for (double v : frame.flat()) top = std::max(top, std::abs(v));
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + w * h);
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t j = h - 1 - r;
        for (std::size_t i = 0; i < w; ++i) {
            const double s = top > 0.0 ? std::abs(frame(i, j)) / top : 0.0;
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * s))));
        }
    }
    return out;
}

inline void write_pgm(const std::string& path, const Array2D<double>& frame) { write_text(path, pgm_bytes(frame)); }

struct SvgSeries {
    std::vector<double> values;
    std::string color;
    double stroke_width = 1.0;
};

/// Self-contained SVG line plot of one or more series sharing an x axis.
inline std::string svg_plot(std::span<const double> x, std::span<const SvgSeries> series, const std::string& title) {
    constexpr double W = 800, H = 400, pad = 40;
    double xmin = 0, xmax = 1, ymax = 0;
    if (!x.empty()) {
        xmin = x.front();
        xmax = x.back();
    }
    if (xmax == xmin) xmax = xmin + 1;
    for (const auto& s : series)
        for (double v : s.values) ymax = std::max(ymax, v);
    if (ymax <= 0) ymax = 1;
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" viewBox=\"0 0 800 400\">\n";
    out += "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(pad) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
    out += "<line x1=\"" + fmt(pad) + "\" y1=\"" + fmt(H - pad) + "\" x2=\"" + fmt(W - pad) + "\" y2=\"" + fmt(H - pad) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(pad) + "\" y1=\"" + fmt(pad) + "\" x2=\"" + fmt(pad) + "\" y2=\"" + fmt(H - pad) +
           "\" stroke=\"black\"/>\n";
    for (const auto& s : series) {
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" + fmt(s.stroke_width) + "\" points=\"";
        const std::size_t n = std::min(x.size(), s.values.size());
        for (std::size_t k = 0; k < n; ++k) {
            const double px = pad + (x[k] - xmin) / (xmax - xmin) * (W - 2 * pad);
            const double py = H - pad - s.values[k] / ymax * (H - 2 * pad);
            out += (k ? " " : "") + fmt(px) + "," + fmt(py);
        }
        out += "\"/>\n";
    }
    out += "<text x=\"" + fmt(pad) + "\" y=\"" + fmt(H - 12) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt(xmin) + "</text>\n";
    out += "<text x=\"" + fmt(W - pad) + "\" y=\"" + fmt(H - 12) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fmt(xmax) + "</text>\n";
    out += "</svg>\n";
    return out;
}

/// Histogram counts in black with the smoothed envelope overlaid in red.
inline std::string histogram_svg(const analysis::ScreenHistogram& h, std::span<const double> envelope,
                                 const std::string& title) {
    std::vector<double> x(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) x[k] = h.bin_center(k);
    const std::vector<SvgSeries> s{{h.values(), "black", 1.0}, {{envelope.begin(), envelope.end()}, "red", 2.0}};
    return svg_plot(x, s, title);
}

}  // namespace doughslit::io

#endif  // DOUGHSLIT_IO_IMAGE_HPP
