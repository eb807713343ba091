#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lionman/metric_space.hpp"

namespace lionman {

/// A sampled configuration that broke (or probed) a property. `points` are
/// the property's named points in order; `params` holds any real parameters
/// (geodesic times for convexity witnesses).
struct Witness {
    std::vector<Point> points;
    std::vector<double> params;
    double margin = 0.0;
};

/// Outcome of a sampled property check. Margins are slacks: negative means
/// the property's inequality or equality is off by that much.
struct PropertyReport {
    std::string property;
    std::string space;
    std::size_t samples = 0;     // configurations drawn (grid + random)
    std::size_t applicable = 0;  // configurations meeting the hypotheses
    double tolerance = 0.0;
    std::vector<Witness> violations;  // first kMaxWitnesses only
    std::size_t violation_count = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::map<std::string, std::string> metadata;

    static constexpr std::size_t kMaxWitnesses = 64;

    bool passed() const noexcept { return violation_count == 0; }
    void record(Witness w);
};

struct Quadruple {
    Point a, b, c, d;
};

/// Betweenness property: B between A,C and C between B,D imply B and C both
/// between A and D. Margin is minus the larger conclusion residual.
PropertyReport check_betweenness(const MetricSpace& space, std::size_t n_samples, double tol,
                                 std::uint64_t seed);

/// Margin of one quadruple, or nullopt when the hypotheses (within tol) or
/// pairwise distinctness fail.
std::optional<double> betweenness_margin(const MetricSpace& space, const Quadruple& q,
                                         double tol);

/// B between A,D and C between B,D imply C between A,D. Holds in every
/// metric space; hypotheses are accepted at tol/2 so the triangle-inequality
/// chain bounds the conclusion residual by tol.
PropertyReport check_between_transitivity(const MetricSpace& space, std::size_t n_samples,
                                          double tol, std::uint64_t seed);

std::optional<double> transitivity_margin(const MetricSpace& space, const Quadruple& q,
                                          double tol);

/// d(x,y)d(z,w) + d(x,w)d(y,z) - d(x,z)d(y,w); negative means violation.
double check_ptolemy(const MetricSpace& space, const Quadruple& q);

struct PtolemySearchResult {
    Quadruple quadruple;
    double margin;
    std::size_t evaluated;
};

/// Exhaustive scan of the space's grid at `grid_resolution` followed by
/// random quadruples. Returns the most negative quadruple found if its
/// margin is below -1e-9.
std::optional<PtolemySearchResult> search_ptolemy_violation(const MetricSpace& space,
                                                            int grid_resolution,
                                                            std::uint64_t seed);

/// Midpoint convexity of t -> d(g1(t), g2(t)) for canonical geodesics
/// g1, g2 reparametrized to [0, 1].
PropertyReport check_metric_convexity(const MetricSpace& space, std::size_t n_samples,
                                      double tol, std::uint64_t seed);

/// (f(t0) + f(t1)) / 2 - f((t0 + t1) / 2) for the pair a1->b1, a2->b2.
double convexity_margin(const MetricSpace& space, const Point& a1, const Point& b1,
                        const Point& a2, const Point& b2, double t0, double t1);

}  // namespace lionman
