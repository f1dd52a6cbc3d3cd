#ifndef DOUGHSLIT_ANALYSIS_GRAPH_HPP
#define DOUGHSLIT_ANALYSIS_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "doughslit/error.hpp"

namespace doughslit::analysis {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Undirected graph joining every pair of points no farther apart than `radius`.
struct ProximityGraph {
    std::vector<Point2> points;
    double radius = 0.0;
    std::vector<std::vector<std::size_t>> adjacency;  ///< sorted neighbour lists

    std::size_t size() const noexcept { return points.size(); }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& a : adjacency) e += a.size();
        return e / 2;
    }
};

inline ProximityGraph proximity_graph(std::span<const Point2> points, double radius) {
    if (!(radius >= 0.0)) throw InvalidParameter("radius must be non-negative");
    ProximityGraph g;
    g.points.assign(points.begin(), points.end());
    g.radius = radius;
    g.adjacency.resize(points.size());
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidParameter("non-finite coordinate");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (distance(points[i], points[j]) <= radius) {
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
            }
    for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
    return g;
}

enum class PathMetric { Hops, Euclidean };

struct Centrality {
    std::vector<double> values;
    double max = 0.0;
    std::vector<std::size_t> argmax;
};

namespace detail {

// Distances from `src` to every node; unreachable stays +inf.
inline std::vector<double> shortest_paths(const ProximityGraph& g, std::size_t src, PathMetric metric) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(g.size(), inf);
    d[src] = 0.0;
    if (metric == PathMetric::Hops) {
        std::queue<std::size_t> q;
        q.push(src);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto v : g.adjacency[u])
                if (d[v] == inf) {
                    d[v] = d[u] + 1.0;
                    q.push(v);
                }
        }
        return d;
    }
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (auto v : g.adjacency[u]) {
            const double nd = du + distance(g.points[u], g.points[v]);
            if (nd < d[v]) {
                d[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    return d;
}

}  // namespace detail

/**
 * Component-normalized closeness: (n_comp - 1) / sum of distances to the
 * other members of the node's connected component; isolated nodes score 0.
 */
inline Centrality closeness_centrality(const ProximityGraph& g, PathMetric metric = PathMetric::Hops) {
    Centrality c;
    c.values.assign(g.size(), 0.0);
    for (std::size_t v = 0; v < g.size(); ++v) {
        const auto d = detail::shortest_paths(g, v, metric);
        double sum = 0.0;
        std::size_t reach = 0;
        for (std::size_t u = 0; u < g.size(); ++u)
            if (u != v && std::isfinite(d[u])) {
                sum += d[u];
                ++reach;
            }
        c.values[v] = reach > 0 && sum > 0.0 ? static_cast<double>(reach) / sum : 0.0;
    }
    if (!c.values.empty()) c.max = *std::max_element(c.values.begin(), c.values.end());
    const double tol = 1e-12 * std::max(1.0, c.max);
    for (std::size_t v = 0; v < g.size(); ++v)
        if (c.max - c.values[v] <= tol) c.argmax.push_back(v);
    return c;
}

struct RadiusSample {
    double radius = 0.0;
    double max_closeness = 0.0;
    std::size_t argmax_count = 0;
};

struct RadiusSweep {
    std::vector<RadiusSample> samples;
    std::size_t selected = 0;  ///< index into samples
    double selected_radius = 0.0;
    std::vector<std::size_t> sources;  ///< argmax nodes at the selected radius
};

/**
 * Picks the radius whose closeness maximum is shared by the fewest nodes,
 * breaking ties by the larger maximum and then by the smaller radius.
 */
inline RadiusSweep sweep_radius(std::span<const Point2> points, std::span<const double> radii,
                                PathMetric metric = PathMetric::Hops) {
    if (points.empty()) throw InvalidParameter("radius sweep needs at least one point");
    if (radii.empty()) throw InvalidParameter("radius grid is empty");
    RadiusSweep s;
    std::vector<std::vector<std::size_t>> argmaxes;
    for (double r : radii) {
        const auto c = closeness_centrality(proximity_graph(points, r), metric);
        s.samples.push_back({r, c.max, c.argmax.size()});
        argmaxes.push_back(c.argmax);
    }
    auto better = [&](const RadiusSample& a, const RadiusSample& b) {
        if (a.argmax_count != b.argmax_count) return a.argmax_count < b.argmax_count;
        if (a.max_closeness != b.max_closeness) return a.max_closeness > b.max_closeness;
        return a.radius < b.radius;
    };
    for (std::size_t k = 1; k < s.samples.size(); ++k)
        if (better(s.samples[k], s.samples[s.selected])) s.selected = k;
    s.selected_radius = s.samples[s.selected].radius;
    s.sources = argmaxes[s.selected];
    return s;
}

}  // namespace doughslit::analysis

#endif  // DOUGHSLIT_ANALYSIS_GRAPH_HPP
