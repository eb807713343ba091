#include "lionman/metric_space.hpp"

#include <charconv>
#include <cmath>

#include "lionman/errors.hpp"

namespace lionman {

namespace {

std::string number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::Plane: return "plane";
        case SpaceKind::Disk: return "disk";
        case SpaceKind::ChebyshevDisk: return "chebyshev_disk";
        case SpaceKind::Circle: return "circle";
        case SpaceKind::Tree: return "tree";
    }
    return "unknown";
}

std::optional<SpaceKind> parse_space_kind(const std::string& name) {
    std::string n = name;
    for (auto& c : n) {
        if (c == '-') c = '_';
    }
    if (n == "plane") return SpaceKind::Plane;
    if (n == "disk") return SpaceKind::Disk;
    if (n == "chebyshev_disk" || n == "chebyshev") return SpaceKind::ChebyshevDisk;
    if (n == "circle") return SpaceKind::Circle;
    if (n == "tree") return SpaceKind::Tree;
    return std::nullopt;
}

bool is_compact_kind(SpaceKind kind) { return kind != SpaceKind::Plane; }

SpaceDescriptor SpaceDescriptor::plane() { return {SpaceKind::Plane, {}, {}}; }

SpaceDescriptor SpaceDescriptor::disk(double radius) {
    return {SpaceKind::Disk, {{"radius", radius}}, {}};
}

SpaceDescriptor SpaceDescriptor::chebyshev_disk(double radius) {
    return {SpaceKind::ChebyshevDisk, {{"radius", radius}}, {}};
}

SpaceDescriptor SpaceDescriptor::circle(double circumference, int tie_break) {
    return {SpaceKind::Circle,
            {{"circumference", circumference}, {"tie_break", static_cast<double>(tie_break)}},
            {}};
}

SpaceDescriptor SpaceDescriptor::tree(std::vector<TreeEdge> edges) {
    return {SpaceKind::Tree, {}, std::move(edges)};
}

double SpaceDescriptor::parameter(const std::string& name, double fallback) const {
    auto it = parameters.find(name);
    return it == parameters.end() ? fallback : it->second;
}

std::string SpaceDescriptor::canonical() const {
    std::string out = to_string(kind);
    for (const auto& [name, value] : parameters) {
        out += ";" + name + "=" + number(value);
    }
    for (const auto& e : edges) {
        out += ";" + e.u + "-" + e.v + ":" + number(e.length);
    }
    return out;
}

MetricSpace::MetricSpace(SpaceDescriptor descriptor)
    : descriptor_(std::move(descriptor)), tag_{fnv1a(descriptor_.canonical())} {}

void MetricSpace::require_member(const Point& p) const {
    if (p.tag() != tag_) {
        throw UsageError("point " + to_string(p) + " belongs to a different space than " +
                         descriptor_.canonical());
    }
    if (!contains(p)) {
        throw DomainError("point " + to_string(p) + " lies outside " + descriptor_.canonical());
    }
}

double MetricSpace::distance(const Point& a, const Point& b) const {
    require_member(a);
    require_member(b);
    if (a == b) return 0.0;
    return do_distance(a, b);
}

GeodesicPath MetricSpace::geodesic(const Point& a, const Point& b) const {
    require_member(a);
    require_member(b);
    if (a == b) return GeodesicPath::constant(a);
    return do_geodesic(a, b);
}

Point MetricSpace::sample_point(Rng& rng) const { return do_sample(rng); }

Point MetricSpace::extend(const Point& from, const Point& through, double extra,
                          Rng* branch) const {
    require_member(from);
    require_member(through);
    if (from == through || extra <= 0.0) return through;
    return do_extend(from, through, extra, branch);
}

std::vector<Point> MetricSpace::step_candidates(const Point& from, double step, int k,
                                                Rng& rng) const {
    require_member(from);
    if (step <= 0.0) return {from};
    return do_step_candidates(from, step, k, rng);
}

Point MetricSpace::make_point(std::initializer_list<double> coords) const {
    Point p = canonicalize(Point(tag_, coords));
    require_member(p);
    return p;
}

Point MetricSpace::make_point(std::span<const double> coords) const {
    Point p = canonicalize(Point(tag_, coords));
    require_member(p);
    return p;
}

double distance(const MetricSpace& space, const Point& a, const Point& b) {
    return space.distance(a, b);
}

GeodesicPath geodesic(const MetricSpace& space, const Point& a, const Point& b) {
    return space.geodesic(a, b);
}

Point sample_point(const MetricSpace& space, Rng& rng) { return space.sample_point(rng); }

double between_residual(const MetricSpace& space, const Point& a, const Point& b,
                        const Point& c) {
    return space.distance(a, b) + space.distance(b, c) - space.distance(a, c);
}

bool between(const MetricSpace& space, const Point& a, const Point& b, const Point& c,
             double tol) {
    return std::abs(between_residual(space, a, b, c)) <= tol;
}

}  // namespace lionman
