#include <cmath>

#include "lionman/errors.hpp"
#include "lionman/spaces.hpp"

namespace lionman {

CircleSpace::CircleSpace(double circumference, int tie_break)
    : MetricSpace(SpaceDescriptor::circle(circumference, tie_break)),
      circumference_(circumference), tie_break_(tie_break) {}

double CircleSpace::wrap(double angle) const {
    double r = std::fmod(angle, circumference_);
    if (r < 0.0) r += circumference_;
    if (r >= circumference_) r -= circumference_;
    return r;
}

bool CircleSpace::contains(const Point& p) const {
    return p.dim() == 1 && p[0] >= 0.0 && p[0] < circumference_;
}

double CircleSpace::do_distance(const Point& a, const Point& b) const {
    const double delta = std::abs(a[0] - b[0]);
    return std::min(delta, circumference_ - delta);
}

double CircleSpace::signed_arc(double a, double b) const {
    double ccw = b - a;
    if (ccw < 0.0) ccw += circumference_;
    const double cw = circumference_ - ccw;
    if (ccw < cw) return ccw;
    if (cw < ccw) return -cw;
    return tie_break_ > 0 ? ccw : -cw;
}

GeodesicPath CircleSpace::do_geodesic(const Point& a, const Point& b) const {
    const double direction = signed_arc(a[0], b[0]) >= 0.0 ? 1.0 : -1.0;
    const double length = do_distance(a, b);
    const double origin = a[0];
    const SpaceTag t = tag();
    const double c = circumference_;
    return GeodesicPath(a, b, length, [=](double s) {
        double r = std::fmod(origin + direction * s, c);
        if (r < 0.0) r += c;
        if (r >= c) r -= c;
        return Point(t, {r});
    });
}

Point CircleSpace::do_sample(Rng& rng) const {
    return Point(tag(), {wrap(rng.uniform() * circumference_)});
}

Point CircleSpace::do_extend(const Point& from, const Point& through, double extra,
                             Rng*) const {
    const double direction = signed_arc(from[0], through[0]) >= 0.0 ? 1.0 : -1.0;
    const double room = circumference_ / 2.0 - do_distance(from, through);
    const double step = std::min(extra, std::max(0.0, room));
    return Point(tag(), {wrap(through[0] + direction * step)});
}

std::vector<Point> CircleSpace::do_step_candidates(const Point& from, double step, int,
                                                   Rng&) const {
    const double s = std::min(step, circumference_ / 2.0);
    return {Point(tag(), {wrap(from[0] + s)}), Point(tag(), {wrap(from[0] - s)})};
}

std::vector<Point> CircleSpace::grid_points(int resolution) const {
    std::vector<Point> out;
    for (int k = 0; k < resolution; ++k) {
        out.emplace_back(tag(), std::initializer_list<double>{circumference_ * k / resolution});
    }
    return out;
}

}  // namespace lionman
