#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lionman/metric_space.hpp"
#include "lionman/pursuit.hpp"

namespace lionman {

/// A point of K^2: (Lion, Man).
using PointPair = std::pair<Point, Point>;

/// max(d(p1, q1), d(p2, q2)).
double rho(const MetricSpace& space, const PointPair& p, const PointPair& q);

struct GoodCurveItem {
    bool pass = true;
    double worst_margin = 0.0;  // most negative slack; >= -tol when passing
    std::optional<std::int64_t> first_failure;  // moment (or sample) index
};

struct GoodCurveReport {
    double tau_a = 0.0;
    double tau_b = 0.0;
    GoodCurveItem lipschitz;   // item 1: both curves 1-Lipschitz on the samples
    GoodCurveItem aim;         // item 2: L(tau_{i+1}) between L(tau_i) and M(tau_i)
    GoodCurveItem step;        // item 3: d(L(tau_i), L(tau_{i+1})) = epsilon
    GoodCurveItem separation;  // item 4: d(L(tau_i), M(tau_i)) >= epsilon

    bool pass() const { return lipschitz.pass && aim.pass && step.pass && separation.pass; }
};

/// Checks the good-curve items on [tau_a, tau_b]. Both endpoints must be
/// correction moments present in the trace; otherwise UsageError.
GoodCurveReport validate_good_curve(const MetricSpace& space, const Trace& trace, double tau_a,
                                    double tau_b, double tol);

/// Index of the last moment with separation >= epsilon before capture
/// (i.e. the end of the good part of an engine trace).
std::int64_t last_good_moment(const Trace& trace);

struct MonotoneReport {
    bool pass = true;
    double worst_increase = 0.0;  // max over i of d(tau_{i+1}) - d(tau_i)
    std::optional<std::int64_t> worst_index;
};

MonotoneReport check_distance_monotone(const Trace& trace, double tol);

struct StepClassification {
    bool stmt1 = false;  // distance constant over the interval (substep resolution)
    bool stmt2 = false;  // equal distance at both moments
    bool stmt3 = false;  // Man steps epsilon, and M(tau_i) between L(tau_i), M(tau_{i+1})
    // Raw deviations each flag compares against tol.
    double deviation1 = 0.0;
    double deviation2 = 0.0;
    double deviation3 = 0.0;

    bool agree() const { return stmt1 == stmt2 && stmt2 == stmt3; }
};

StepClassification classify_constant_step(const MetricSpace& space, const Trace& trace,
                                          std::int64_t i, double tol);

struct LionGeodesicReport {
    bool applicable = false;  // d(tau_i) == d(tau_j) within tol
    double endpoint_distance = 0.0;
    double arc_length = 0.0;  // (j - i) * epsilon
    bool is_geodesic = false;
};

LionGeodesicReport check_lion_geodesic(const MetricSpace& space, const Trace& trace,
                                       std::int64_t i, std::int64_t j, double tol);

struct RoundRecord {
    std::int64_t i;
    std::int64_t j;
    PointPair center;
    double radius;
};

/// Rounds for the closed rho-ball of `radius` around `center`, scanned over
/// the joint positions at successive correction moments. Requires
/// radius < epsilon / 2 (ValidationError otherwise).
std::vector<RoundRecord> detect_rounds(const MetricSpace& space, std::span<const Moment> moments,
                                       const PointPair& center, double radius, double epsilon);

/// Moment position whose closed rho-ball of `radius` contains the most moment
/// positions (earliest on ties).
PointPair most_revisited_center(const MetricSpace& space, std::span<const Moment> moments,
                                double radius);

}  // namespace lionman
