#pragma once

// Reference computations that share no code with the library backends.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline double euclid(double x1, double y1, double x2, double y2) {
    const double dx = x1 - x2, dy = y1 - y2;
    return std::sqrt(dx * dx + dy * dy);
}

inline double chebyshev(double x1, double y1, double x2, double y2) {
    return std::max(std::fabs(x1 - x2), std::fabs(y1 - y2));
}

/// Shorter arc between two positions on a circle.
inline double arc(double a, double b, double circumference) {
    double delta = std::fmod(std::fabs(a - b), circumference);
    return std::min(delta, circumference - delta);
}

/// d(x,y)d(z,w) + d(x,w)d(y,z) - d(x,z)d(y,w) from the six pairwise distances.
inline double ptolemy(double xy, double zw, double xw, double yz, double xz, double yw) {
    return xy * zw + xw * yz - xz * yw;
}

struct Edge {
    std::string u, v;
    double length;
};

struct Location {
    std::size_t edge;
    double offset;  // from edge.u
};

/// Dijkstra over the tree graph with every edge split at the query locations.
inline double subdivided_distance(const std::vector<Edge>& edges, Location a, Location b) {
    std::map<std::string, int> ids;
    auto id = [&](const std::string& name) {
        auto [it, inserted] = ids.emplace(name, static_cast<int>(ids.size()));
        return it->second;
    };
    std::vector<std::vector<std::pair<int, double>>> adj;
    auto link = [&](int x, int y, double w) {
        const auto need = static_cast<std::size_t>(std::max(x, y)) + 1;
        if (adj.size() < need) adj.resize(need);
        adj[x].emplace_back(y, w);
        adj[y].emplace_back(x, w);
    };
    for (const auto& e : edges) {
        id(e.u);
        id(e.v);
    }
    const int qa = static_cast<int>(ids.size());
    const int qb = qa + 1;
    adj.resize(static_cast<std::size_t>(qb) + 1);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const int u = ids[edges[k].u];
        const int v = ids[edges[k].v];
        // Cut points on this edge, sorted by offset.
        std::vector<std::pair<double, int>> cuts{{0.0, u}, {edges[k].length, v}};
        if (a.edge == k) cuts.emplace_back(a.offset, qa);
        if (b.edge == k) cuts.emplace_back(b.offset, qb);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            link(cuts[c].second, cuts[c + 1].second, cuts[c + 1].first - cuts[c].first);
        }
    }
    std::vector<double> dist(adj.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[qa] = 0.0;
    queue.emplace(0.0, qa);
    while (!queue.empty()) {
        auto [d, x] = queue.top();
        queue.pop();
        if (d > dist[x]) continue;
        for (auto [y, w] : adj[x]) {
            if (d + w < dist[y]) {
                dist[y] = d + w;
                queue.emplace(dist[y], y);
            }
        }
    }
    return dist[qb];
}

}  // namespace oracle
