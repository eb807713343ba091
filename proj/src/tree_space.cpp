#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "lionman/errors.hpp"
#include "lionman/spaces.hpp"

namespace lionman {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Sums three nonnegative terms in a fixed (sorted) order so the result does
// not depend on which endpoint the route was computed from.
double ordered_sum(double a, double b, double c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return (a + b) + c;
}

bool point_less(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords().begin(), a.coords().end(),
                                        b.coords().begin(), b.coords().end());
}

}  // namespace

MetricTreeSpace::MetricTreeSpace(const std::vector<TreeEdge>& edges)
    : MetricSpace(SpaceDescriptor::tree(edges)) {
    if (edges.empty()) throw ValidationError("tree needs at least one edge");

    auto index_of = [this](const std::string& name) {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it != names_.end()) return static_cast<std::size_t>(it - names_.begin());
        names_.push_back(name);
        return names_.size() - 1;
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (!(e.length > 0.0) || !std::isfinite(e.length)) {
            throw ValidationError("edge " + std::to_string(i) + " (" + e.u + ", " + e.v +
                                  ") has nonpositive length");
        }
        if (e.u == e.v) {
            throw ValidationError("edge " + std::to_string(i) + " is a self-loop at " + e.u);
        }
        const std::size_t u = index_of(e.u);
        const std::size_t v = index_of(e.v);
        edges_.push_back({u, v, e.length});
    }

    const std::size_t n = names_.size();
    // Union-find: any edge joining an already-connected pair closes a cycle.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const std::size_t a = find(edges_[i].u);
        const std::size_t b = find(edges_[i].v);
        if (a == b) {
            throw ValidationError("edge list contains a cycle (closed by edge " +
                                  std::to_string(i) + ": " + edges[i].u + " " + edges[i].v + ")");
        }
        parent[a] = b;
    }
    if (edges_.size() != n - 1) throw ValidationError("edge list is disconnected");

    incident_.assign(n, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        incident_[edges_[i].u].push_back(i);
        incident_[edges_[i].v].push_back(i);
    }

    dist_.assign(n, std::vector<double>(n, 0.0));
    next_hop_.assign(n, std::vector<std::size_t>(n, kNone));
    for (std::size_t root = 0; root < n; ++root) {
        std::vector<double> d(n, -1.0);
        std::vector<std::size_t> via(n, kNone);
        std::deque<std::size_t> queue{root};
        d[root] = 0.0;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t e : incident_[x]) {
                const std::size_t y = edges_[e].u == x ? edges_[e].v : edges_[e].u;
                if (d[y] >= 0.0) continue;
                d[y] = d[x] + edges_[e].length;
                via[y] = e;
                queue.push_back(y);
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            next_hop_[x][root] = via[x];
            // Keep the matrix exactly symmetric: the smaller index is the root.
            if (root <= x) {
                dist_[root][x] = d[x];
                dist_[x][root] = d[x];
            }
            diameter_ = std::max(diameter_, d[x]);
        }
    }

    cumulative_.resize(edges_.size() + 1, 0.0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        cumulative_[i + 1] = cumulative_[i] + edges_[i].length;
    }
    total_length_ = cumulative_.back();
}

std::optional<std::size_t> MetricTreeSpace::vertex_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

Point MetricTreeSpace::on_edge(std::size_t edge, double offset) const {
    return make_point({static_cast<double>(edge), offset});
}

Point MetricTreeSpace::vertex(const std::string& name) const {
    auto idx = vertex_index(name);
    if (!idx) throw DomainError("unknown tree vertex " + name);
    const std::size_t e = incident_[*idx].front();
    return canonicalize(Point(tag(), {static_cast<double>(e),
                                      edges_[e].u == *idx ? 0.0 : edges_[e].length}));
}

bool MetricTreeSpace::contains(const Point& p) const {
    if (p.dim() != 2 || !std::isfinite(p[0]) || !std::isfinite(p[1])) return false;
    if (p[0] < 0.0 || p[0] != std::floor(p[0])) return false;
    const auto e = static_cast<std::size_t>(p[0]);
    if (e >= edges_.size()) return false;
    return p[1] >= 0.0 && p[1] <= edges_[e].length;
}

std::optional<std::size_t> MetricTreeSpace::as_vertex(const Point& p) const {
    const auto& e = edges_[static_cast<std::size_t>(p[0])];
    if (p[1] == 0.0) return e.u;
    if (p[1] == e.length) return e.v;
    return std::nullopt;
}

Point MetricTreeSpace::canonicalize(const Point& p) const {
    if (!contains(p)) return p;
    auto x = as_vertex(p);
    if (!x) return p;
    const std::size_t e = incident_[*x].front();
    return Point(p.tag(), {static_cast<double>(e), edges_[e].u == *x ? 0.0 : edges_[e].length});
}

Point MetricTreeSpace::walk(std::size_t edge, double offset) const {
    offset = std::clamp(offset, 0.0, edges_[edge].length);
    return canonicalize(Point(tag(), {static_cast<double>(edge), offset}));
}

std::vector<std::size_t> MetricTreeSpace::vertex_path(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> path{from};
    while (from != to) {
        const auto& e = edges_[next_hop_[from][to]];
        from = e.u == from ? e.v : e.u;
        path.push_back(from);
    }
    return path;
}

double MetricTreeSpace::vertex_distance(std::size_t from, std::size_t to) const {
    return dist_[from][to];
}

double MetricTreeSpace::do_distance(const Point& a0, const Point& b0) const {
    const bool swap = point_less(b0, a0);
    const Point& a = swap ? b0 : a0;
    const Point& b = swap ? a0 : b0;

    const auto ea = static_cast<std::size_t>(a[0]);
    const auto eb = static_cast<std::size_t>(b[0]);
    const auto va = as_vertex(a);
    const auto vb = as_vertex(b);
    if (ea == eb && !va && !vb) return std::abs(a[1] - b[1]);

    // Each point attaches to the vertex graph through at most two endpoints.
    struct Attach {
        std::size_t vertex;
        double cost;
    };
    auto attachments = [this](const Point& p, std::optional<std::size_t> v) {
        std::vector<Attach> out;
        if (v) {
            out.push_back({*v, 0.0});
        } else {
            const auto& e = edges_[static_cast<std::size_t>(p[0])];
            out.push_back({e.u, p[1]});
            out.push_back({e.v, e.length - p[1]});
        }
        return out;
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : attachments(a, va)) {
        for (const auto& y : attachments(b, vb)) {
            best = std::min(best, ordered_sum(x.cost, dist_[x.vertex][y.vertex], y.cost));
        }
    }
    return best;
}

std::vector<MetricTreeSpace::Leg> MetricTreeSpace::legs(const Point& a, const Point& b) const {
    const auto ea = static_cast<std::size_t>(a[0]);
    const auto eb = static_cast<std::size_t>(b[0]);
    const auto va = as_vertex(a);
    const auto vb = as_vertex(b);
    if (ea == eb && !va && !vb) return {{ea, a[1], b[1]}};

    struct Attach {
        std::size_t vertex;
        double cost;
        std::optional<Leg> leg;  // partial edge between the point and the vertex
    };
    auto attachments = [this](const Point& p, std::optional<std::size_t> v, bool outbound) {
        std::vector<Attach> out;
        if (v) {
            out.push_back({*v, 0.0, std::nullopt});
            return out;
        }
        const auto e = static_cast<std::size_t>(p[0]);
        const auto& edge = edges_[e];
        const Leg to_u = outbound ? Leg{e, p[1], 0.0} : Leg{e, 0.0, p[1]};
        const Leg to_v = outbound ? Leg{e, p[1], edge.length} : Leg{e, edge.length, p[1]};
        out.push_back({edge.u, p[1], to_u});
        out.push_back({edge.v, edge.length - p[1], to_v});
        return out;
    };

    const Attach* best_x = nullptr;
    const Attach* best_y = nullptr;
    double best = std::numeric_limits<double>::infinity();
    const auto xs = attachments(a, va, true);
    const auto ys = attachments(b, vb, false);
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            const double c = x.cost + dist_[x.vertex][y.vertex] + y.cost;
            if (c < best) {
                best = c;
                best_x = &x;
                best_y = &y;
            }
        }
    }

    std::vector<Leg> out;
    if (best_x->leg) out.push_back(*best_x->leg);
    const auto path = vertex_path(best_x->vertex, best_y->vertex);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const std::size_t e = next_hop_[path[i]][path[i + 1]];
        const auto& edge = edges_[e];
        if (edge.u == path[i]) {
            out.push_back({e, 0.0, edge.length});
        } else {
            out.push_back({e, edge.length, 0.0});
        }
    }
    if (best_y->leg) out.push_back(*best_y->leg);
    return out;
}

GeodesicPath MetricTreeSpace::do_geodesic(const Point& a, const Point& b) const {
    const auto route = legs(a, b);
    const double length = do_distance(a, b);
    return GeodesicPath(a, b, length, [this, route](double s) {
        double start = 0.0;
        for (const auto& leg : route) {
            const double span = std::abs(leg.to_offset - leg.from_offset);
            if (s <= start + span || &leg == &route.back()) {
                const double along = std::min(s - start, span);
                const double sign = leg.to_offset >= leg.from_offset ? 1.0 : -1.0;
                return walk(leg.edge, leg.from_offset + sign * along);
            }
            start += span;
        }
        return walk(route.back().edge, route.back().to_offset);
    });
}

Point MetricTreeSpace::do_sample(Rng& rng) const {
    const double u = rng.uniform() * total_length_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto e = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
    const std::size_t edge = std::min(e, edges_.size() - 1);
    return walk(edge, u - cumulative_[edge]);
}

std::vector<std::size_t> MetricTreeSpace::branches(std::size_t at,
                                                   std::optional<std::size_t> came_by) const {
    std::vector<std::size_t> out;
    for (std::size_t e : incident_[at]) {
        if (!came_by || e != *came_by) out.push_back(e);
    }
    return out;
}

Point MetricTreeSpace::descend(std::size_t at, std::optional<std::size_t> came_by,
                               double remaining, Rng* branch) const {
    for (;;) {
        const auto options = branches(at, came_by);
        if (options.empty() || remaining <= 0.0) {
            const std::size_t e = incident_[at].front();
            return walk(e, edges_[e].u == at ? 0.0 : edges_[e].length);
        }
        const std::size_t e =
            branch != nullptr ? options[branch->below(options.size())] : options.front();
        const auto& edge = edges_[e];
        if (remaining <= edge.length) {
            return walk(e, edge.u == at ? remaining : edge.length - remaining);
        }
        remaining -= edge.length;
        at = edge.u == at ? edge.v : edge.u;
        came_by = e;
    }
}

Point MetricTreeSpace::do_extend(const Point& from, const Point& through, double extra,
                                 Rng* branch) const {
    const auto route = legs(from, through);
    const Leg& last = route.back();
    const auto& edge = edges_[last.edge];
    if (!as_vertex(through)) {
        // Keep travelling along the current edge in the arrival direction.
        const bool forward = last.to_offset > last.from_offset;
        const double room = forward ? edge.length - through[1] : through[1];
        if (extra <= room) return walk(last.edge, through[1] + (forward ? extra : -extra));
        return descend(forward ? edge.v : edge.u, last.edge, extra - room, branch);
    }
    return descend(*as_vertex(through), last.edge, extra, branch);
}

void MetricTreeSpace::explore(std::size_t at, std::optional<std::size_t> came_by,
                              double remaining, std::vector<Point>& out) const {
    const auto options = branches(at, came_by);
    if (options.empty()) {
        const std::size_t e = incident_[at].front();
        out.push_back(walk(e, edges_[e].u == at ? 0.0 : edges_[e].length));
        return;
    }
    for (std::size_t e : options) {
        const auto& edge = edges_[e];
        if (remaining <= edge.length) {
            out.push_back(walk(e, edge.u == at ? remaining : edge.length - remaining));
        } else {
            explore(edge.u == at ? edge.v : edge.u, e, remaining - edge.length, out);
        }
    }
}

std::vector<Point> MetricTreeSpace::do_step_candidates(const Point& from, double step, int,
                                                       Rng&) const {
    std::vector<Point> out;
    if (auto v = as_vertex(from)) {
        explore(*v, std::nullopt, step, out);
        return out;
    }
    const auto e = static_cast<std::size_t>(from[0]);
    const auto& edge = edges_[e];
    const double o = from[1];
    if (step <= o) {
        out.push_back(walk(e, o - step));
    } else {
        explore(edge.u, e, step - o, out);
    }
    if (step <= edge.length - o) {
        out.push_back(walk(e, o + step));
    } else {
        explore(edge.v, e, step - (edge.length - o), out);
    }
    return out;
}

std::vector<Point> MetricTreeSpace::grid_points(int resolution) const {
    std::vector<Point> out;
    for (std::size_t x = 0; x < names_.size(); ++x) out.push_back(vertex(names_[x]));
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        for (int k = 1; k < resolution; ++k) {
            out.push_back(walk(e, edges_[e].length * k / resolution));
        }
    }
    return out;
}

std::vector<TreeEdge> parse_tree_edges(std::istream& in) {
    std::vector<TreeEdge> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string u;
        if (!(fields >> u) || u.front() == '#') continue;
        std::string v;
        std::string length_text;
        std::string trailing;
        if (!(fields >> v >> length_text) || (fields >> trailing)) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": expected `u v length`");
        }
        double length = 0.0;
        try {
            std::size_t used = 0;
            length = std::stod(length_text, &used);
            if (used != length_text.size()) throw std::invalid_argument(length_text);
        } catch (const std::exception&) {
            throw ValidationError("line " + std::to_string(line_no) + ": bad length '" +
                                  length_text + "'");
        }
        edges.push_back({u, v, length});
    }
    return edges;
}

}  // namespace lionman
