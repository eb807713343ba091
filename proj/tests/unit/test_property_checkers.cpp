#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lionman/experiment.hpp"
#include "lionman/property_checkers.hpp"
#include "lionman/spaces.hpp"
#include "oracles.hpp"

using namespace lionman;

namespace {

constexpr double kPi = std::numbers::pi;

// Betweenness margin recomputed from raw distances.
double betweenness_oracle(const MetricSpace& s, const std::vector<Point>& q) {
    auto d = [&](int i, int j) { return s.distance(q[i], q[j]); };
    const double r1 = d(0, 1) + d(1, 3) - d(0, 3);
    const double r2 = d(0, 2) + d(2, 3) - d(0, 3);
    return -std::max(std::fabs(r1), std::fabs(r2));
}

void check_witnesses_replay(const MetricSpace& s, const PropertyReport& r) {
    for (const auto& w : r.violations) {
        if (r.property == "betweenness") {
            REQUIRE(std::fabs(betweenness_oracle(s, w.points) - w.margin) <= 1e-12);
        }
    }
}

}  // namespace

TEST_CASE("betweenness holds on the Euclidean disk") {
    auto disk = make_space(SpaceDescriptor::disk(1.0));
    auto r = check_betweenness(*disk, 100000, 1e-7, 1);
    CHECK(r.passed());
    CHECK(r.applicable > 10000);
    CHECK(r.worst_margin >= -1e-7);
}

TEST_CASE("betweenness holds on the metric tree") {
    auto tree = make_space(SpaceDescriptor::tree(preset_tree_edges()));
    auto r = check_betweenness(*tree, 20000, 1e-7, 2);
    CHECK(r.passed());
    CHECK(r.applicable > 1000);
}

TEST_CASE("betweenness fails on the circle with the quarter quadruple") {
    CircleSpace circle(2 * kPi, +1);
    Quadruple q{circle.at(0), circle.at(kPi / 2), circle.at(kPi), circle.at(1.5 * kPi)};
    auto margin = betweenness_margin(circle, q, 1e-9);
    REQUIRE(margin);
    // d(A,B)+d(B,D)-d(A,D) = pi/2 + pi - pi/2.
    const double ab = oracle::arc(0, kPi / 2, 2 * kPi);
    const double bd = oracle::arc(kPi / 2, 1.5 * kPi, 2 * kPi);
    const double ad = oracle::arc(0, 1.5 * kPi, 2 * kPi);
    CHECK(*margin == doctest::Approx(-(ab + bd - ad)).epsilon(1e-12));
    CHECK(*margin == doctest::Approx(-kPi));

    auto r = check_betweenness(circle, 1000, 1e-7, 1);
    CHECK_FALSE(r.passed());
    REQUIRE_FALSE(r.violations.empty());
    check_witnesses_replay(circle, r);
}

TEST_CASE("betweenness fails on the Chebyshev disk") {
    // A hand-checked counterexample: both hypotheses are exact equalities,
    // but d(A,B) + d(B,D) = 1.5 while d(A,D) = 0.5.
    auto cheb = make_space(SpaceDescriptor::chebyshev_disk(1.0));
    auto p = [&](double x, double y) { return cheb->make_point({x, y}); };
    Quadruple q{p(-1, 0), p(-0.5, -0.5), p(0, 0), p(-0.5, 0.5)};
    CHECK(between(*cheb, q.a, q.b, q.c, 0.0));
    CHECK(between(*cheb, q.b, q.c, q.d, 0.0));
    CHECK_FALSE(between(*cheb, q.a, q.b, q.d, 1e-7));
    auto margin = betweenness_margin(*cheb, q, 1e-9);
    REQUIRE(margin);
    CHECK(*margin == -1.0);

    auto r = check_betweenness(*cheb, 100000, 1e-7, 1);
    CHECK_FALSE(r.passed());
    check_witnesses_replay(*cheb, r);
}

TEST_CASE("transitivity holds on every backend") {
    auto disk = make_space(SpaceDescriptor::disk(1.0));
    auto p = [&](double x, double y) { return disk->make_point({x, y}); };
    auto m = transitivity_margin(*disk, {p(0, 0), p(0.2, 0), p(0.5, 0), p(1, 0)}, 1e-9);
    REQUIRE(m);
    CHECK(*m >= -1e-12);
    CHECK_FALSE(transitivity_margin(*disk, {p(0, 0), p(0, 0), p(0.5, 0), p(1, 0)}, 1e-9));

    for (auto d : {SpaceDescriptor::disk(1.0), SpaceDescriptor::chebyshev_disk(1.0),
                   SpaceDescriptor::circle(2 * kPi), SpaceDescriptor::tree(preset_tree_edges())}) {
        auto space = make_space(d);
        CAPTURE(d.canonical());
        auto r = check_between_transitivity(*space, 100000, 1e-7, 5);
        CHECK(r.passed());
        CHECK(r.applicable > 0);
    }
}

TEST_CASE("ptolemy margins") {
    auto cheb = make_space(SpaceDescriptor::chebyshev_disk(1.0));
    auto p = [&](double x, double y) { return cheb->make_point({x, y}); };
    CHECK(check_ptolemy(*cheb, {p(0, 1), p(1, 0), p(0, -1), p(0, -1)}) == 0.0);
    CHECK(check_ptolemy(*cheb, {p(0, 1), p(1, 0), p(0, -1), p(-1, 0)}) == -2.0);
    // Oracle from the six Chebyshev distances.
    auto c = [](double x1, double y1, double x2, double y2) { return oracle::chebyshev(x1, y1, x2, y2); };
    CHECK(oracle::ptolemy(c(0, 1, 1, 0), c(0, -1, -1, 0), c(0, 1, -1, 0), c(1, 0, 0, -1), c(0, 1, 0, -1),
                          c(1, 0, -1, 0)) == -2.0);

    auto found = search_ptolemy_violation(*cheb, 8, 1);
    REQUIRE(found);
    CHECK(found->margin <= -1.0);
    CHECK(check_ptolemy(*cheb, found->quadruple) == doctest::Approx(found->margin).epsilon(1e-12));

    auto disk = make_space(SpaceDescriptor::disk(1.0));
    CHECK_FALSE(search_ptolemy_violation(*disk, 8, 1));
    Rng rng(6);
    for (int i = 0; i < 10000; ++i) {
        Quadruple q{disk->sample_point(rng), disk->sample_point(rng), disk->sample_point(rng),
                    disk->sample_point(rng)};
        REQUIRE(check_ptolemy(*disk, q) >= -1e-9);
    }

    CircleSpace circle(2 * kPi, +1);
    auto on_circle = search_ptolemy_violation(circle, 16, 1);
    if (on_circle) CHECK(check_ptolemy(circle, on_circle->quadruple) < -1e-9);
}

TEST_CASE("metric convexity") {
    for (auto d : {SpaceDescriptor::disk(1.0), SpaceDescriptor::chebyshev_disk(1.0)}) {
        auto space = make_space(d);
        auto r = check_metric_convexity(*space, 10000, 1e-7, 3);
        CHECK(r.passed());
        CHECK(r.metadata.count("definition") == 1);
    }

    CircleSpace circle(2 * kPi, +1);
    auto zero = circle.at(0);
    const double margin = convexity_margin(circle, zero, zero, circle.at(kPi - 0.1), circle.at(kPi + 0.1), 0.0, 1.0);
    // f(0) = f(1) = pi - 0.1, f(1/2) = pi.
    CHECK(margin == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK_FALSE(check_metric_convexity(circle, 10000, 1e-7, 3).passed());
}

TEST_CASE("reports are deterministic") {
    CircleSpace circle(1.0, +1);
    auto a = check_betweenness(circle, 500, 1e-7, 9);
    auto b = check_betweenness(circle, 500, 1e-7, 9);
    CHECK(a.violation_count == b.violation_count);
    CHECK(a.worst_margin == b.worst_margin);
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) CHECK(a.violations[i].points == b.violations[i].points);
}

TEST_CASE("report invariant: violations iff worst margin below tolerance") {
    auto disk = make_space(SpaceDescriptor::disk(1.0));
    auto good = check_betweenness(*disk, 2000, 1e-7, 4);
    CHECK(good.violations.empty() == (good.worst_margin >= -good.tolerance));
    CircleSpace circle(1.0, +1);
    auto bad = check_betweenness(circle, 2000, 1e-7, 4);
    CHECK(bad.violations.empty() == (bad.worst_margin >= -bad.tolerance));
}
