#include "lionman/property_checkers.hpp"

#include <algorithm>
#include <cmath>

namespace lionman {

namespace {

constexpr double kPtolemyThreshold = 1e-9;
// Grid points beyond this count are strided down before quadruple scans.
constexpr std::size_t kMaxGridPoints = 96;
constexpr std::size_t kBetweennessGridPoints = 16;

double scale_of(const MetricSpace& space) { return space.diameter_bound().value_or(2.0); }

double min_pairwise(const MetricSpace& space, const std::array<const Point*, 4>& pts) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            m = std::min(m, space.distance(*pts[i], *pts[j]));
        }
    }
    return m;
}

/// Moves p a tiny distance toward a random point; used to probe the edge of
/// the hypothesis set.
Point nudge(const MetricSpace& space, const Point& p, Rng& rng) {
    const Point target = space.sample_point(rng);
    const auto path = space.geodesic(p, target);
    return path.point_at(std::min(path.length(), 1e-9 * rng.uniform()));
}

std::vector<Point> strided(std::vector<Point> pts, std::size_t cap) {
    if (pts.size() <= cap) return pts;
    std::vector<Point> out;
    const double stride = static_cast<double>(pts.size()) / static_cast<double>(cap);
    for (std::size_t i = 0; i < cap; ++i) {
        out.push_back(pts[static_cast<std::size_t>(static_cast<double>(i) * stride)]);
    }
    return out;
}

template <typename MarginFn>
void scan_grid_quadruples(const std::vector<Point>& grid, PropertyReport& report,
                          MarginFn&& margin_of) {
    const std::size_t n = grid.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t d = 0; d < n; ++d) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    Quadruple q{grid[a], grid[b], grid[c], grid[d]};
                    ++report.samples;
                    if (auto m = margin_of(q)) {
                        ++report.applicable;
                        if (*m < report.worst_margin) report.worst_margin = *m;
                        if (*m < -report.tolerance) {
                            report.record({{q.a, q.b, q.c, q.d}, {}, *m});
                        }
                    }
                }
            }
        }
    }
}

void tally(PropertyReport& report, const Quadruple& q, std::optional<double> m) {
    ++report.samples;
    if (!m) return;
    ++report.applicable;
    report.worst_margin = std::min(report.worst_margin, *m);
    if (*m < -report.tolerance) report.record({{q.a, q.b, q.c, q.d}, {}, *m});
}

}  // namespace

void PropertyReport::record(Witness w) {
    ++violation_count;
    if (violations.size() < kMaxWitnesses) violations.push_back(std::move(w));
}

std::optional<double> betweenness_margin(const MetricSpace& space, const Quadruple& q,
                                         double tol) {
    if (min_pairwise(space, {&q.a, &q.b, &q.c, &q.d}) <= tol) return std::nullopt;
    if (!between(space, q.a, q.b, q.c, tol) || !between(space, q.b, q.c, q.d, tol)) {
        return std::nullopt;
    }
    const double r1 = std::abs(between_residual(space, q.a, q.b, q.d));
    const double r2 = std::abs(between_residual(space, q.a, q.c, q.d));
    return -std::max(r1, r2);
}

PropertyReport check_betweenness(const MetricSpace& space, std::size_t n_samples, double tol,
                                 std::uint64_t seed) {
    PropertyReport report;
    report.property = "betweenness";
    report.space = space.descriptor().canonical();
    report.tolerance = tol;
    report.metadata["construction"] =
        "grid quadruples, then B,C on a canonical geodesic with A,D geodesic extensions "
        "(random branches), nudged variants, and uniform quadruples";

    auto margin_of = [&](const Quadruple& q) { return betweenness_margin(space, q, tol); };
    const auto grid = strided(space.grid_points(4), kBetweennessGridPoints);
    scan_grid_quadruples(grid, report, margin_of);
    report.metadata["grid_points"] = std::to_string(grid.size());

    Rng rng(seed);
    const double scale = scale_of(space);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t family = i % 4;
        Quadruple q;
        if (family == 3) {
            q = {space.sample_point(rng), space.sample_point(rng), space.sample_point(rng),
                 space.sample_point(rng)};
        } else {
            const Point b = space.sample_point(rng);
            const Point y = space.sample_point(rng);
            const auto bc = space.geodesic(b, y);
            const Point c = bc.point_at(bc.length() * rng.uniform());
            const Point a = space.extend(c, b, scale * rng.uniform(), &rng);
            const Point d = space.extend(b, c, scale * rng.uniform(), &rng);
            q = {a, b, c, d};
            if (family == 2) {
                Point* slot[] = {&q.a, &q.b, &q.c, &q.d};
                Point& victim = *slot[rng.below(4)];
                victim = nudge(space, victim, rng);
            }
        }
        tally(report, q, margin_of(q));
    }
    return report;
}

std::optional<double> transitivity_margin(const MetricSpace& space, const Quadruple& q,
                                          double tol) {
    if (min_pairwise(space, {&q.a, &q.b, &q.c, &q.d}) <= tol) return std::nullopt;
    const double hyp = tol / 2.0;
    if (!between(space, q.a, q.b, q.d, hyp) || !between(space, q.b, q.c, q.d, hyp)) {
        return std::nullopt;
    }
    return -std::abs(between_residual(space, q.a, q.c, q.d));
}

PropertyReport check_between_transitivity(const MetricSpace& space, std::size_t n_samples,
                                          double tol, std::uint64_t seed) {
    PropertyReport report;
    report.property = "between_transitivity";
    report.space = space.descriptor().canonical();
    report.tolerance = tol;
    report.metadata["construction"] =
        "A,D uniform; B on geodesic(A,D); C on geodesic(B,D); nudged variants; uniform "
        "quadruples";

    Rng rng(seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t family = i % 4;
        Quadruple q;
        if (family == 3) {
            q = {space.sample_point(rng), space.sample_point(rng), space.sample_point(rng),
                 space.sample_point(rng)};
        } else {
            const Point a = space.sample_point(rng);
            const Point d = space.sample_point(rng);
            const auto ad = space.geodesic(a, d);
            const Point b = ad.point_at(ad.length() * rng.uniform());
            const auto bd = space.geodesic(b, d);
            const Point c = bd.point_at(bd.length() * rng.uniform());
            q = {a, b, c, d};
            if (family == 2) {
                Point* slot[] = {&q.a, &q.b, &q.c, &q.d};
                Point& victim = *slot[rng.below(4)];
                victim = nudge(space, victim, rng);
            }
        }
        tally(report, q, transitivity_margin(space, q, tol));
    }
    return report;
}

double check_ptolemy(const MetricSpace& space, const Quadruple& q) {
    const double xy = space.distance(q.a, q.b);
    const double zw = space.distance(q.c, q.d);
    const double xw = space.distance(q.a, q.d);
    const double yz = space.distance(q.b, q.c);
    const double xz = space.distance(q.a, q.c);
    const double yw = space.distance(q.b, q.d);
    return xy * zw + xw * yz - xz * yw;
}

std::optional<PtolemySearchResult> search_ptolemy_violation(const MetricSpace& space,
                                                            int grid_resolution,
                                                            std::uint64_t seed) {
    const auto grid = strided(space.grid_points(grid_resolution), kMaxGridPoints);
    const std::size_t n = grid.size();
    std::vector<double> dm(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dm[i * n + j] = dm[j * n + i] = space.distance(grid[i], grid[j]);
        }
    }
    auto d = [&](std::size_t i, std::size_t j) { return dm[i * n + j]; };

    std::optional<PtolemySearchResult> best;
    std::size_t evaluated = 0;
    std::array<std::size_t, 4> best_idx{};
    double best_margin = -kPtolemyThreshold;
    bool found = false;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t w = 0; w < n; ++w) {
                    ++evaluated;
                    const double m = d(x, y) * d(z, w) + d(x, w) * d(y, z) - d(x, z) * d(y, w);
                    if (m < best_margin) {
                        best_margin = m;
                        best_idx = {x, y, z, w};
                        found = true;
                    }
                }
            }
        }
    }
    if (found) {
        const auto& [x, y, z, w] = best_idx;
        best = PtolemySearchResult{{grid[x], grid[y], grid[z], grid[w]}, best_margin, 0};
    }

    Rng rng(seed);
    constexpr std::size_t kRandomQuadruples = 10000;
    for (std::size_t i = 0; i < kRandomQuadruples; ++i) {
        Quadruple q{space.sample_point(rng), space.sample_point(rng), space.sample_point(rng),
                    space.sample_point(rng)};
        ++evaluated;
        const double m = check_ptolemy(space, q);
        if (m < best_margin) {
            best_margin = m;
            best = PtolemySearchResult{q, m, 0};
        }
    }
    if (best) best->evaluated = evaluated;
    return best;
}

double convexity_margin(const MetricSpace& space, const Point& a1, const Point& b1,
                        const Point& a2, const Point& b2, double t0, double t1) {
    const auto g1 = space.geodesic(a1, b1);
    const auto g2 = space.geodesic(a2, b2);
    auto f = [&](double t) {
        return space.distance(g1.point_at(t * g1.length()), g2.point_at(t * g2.length()));
    };
    return 0.5 * (f(t0) + f(t1)) - f(0.5 * (t0 + t1));
}

PropertyReport check_metric_convexity(const MetricSpace& space, std::size_t n_samples,
                                      double tol, std::uint64_t seed) {
    PropertyReport report;
    report.property = "metric_convexity";
    report.space = space.descriptor().canonical();
    report.tolerance = tol;
    report.metadata["definition"] =
        "midpoint convexity of t -> d(g1(t), g2(t)) for canonical geodesics g1, g2 "
        "affinely reparametrized to [0,1]";

    Rng rng(seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const Point a1 = space.sample_point(rng);
        const Point b1 = space.sample_point(rng);
        Point a2 = space.sample_point(rng);
        Point b2 = space.sample_point(rng);
        switch (i % 3) {
            case 1: b2 = a2; break;  // constant second curve
            case 2: a2 = a1; break;  // shared start
            default: break;
        }
        double t0 = rng.uniform();
        double t1 = rng.uniform();
        if (t0 > t1) std::swap(t0, t1);
        const double m = convexity_margin(space, a1, b1, a2, b2, t0, t1);
        ++report.samples;
        ++report.applicable;
        report.worst_margin = std::min(report.worst_margin, m);
        if (m < -tol) report.record({{a1, b1, a2, b2}, {t0, t1}, m});
    }
    return report;
}

}  // namespace lionman
