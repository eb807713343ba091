#include "lionman/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lionman/errors.hpp"

namespace lionman {

namespace {
// Parameters this close outside [0, length] are treated as rounding noise.
double slack(double length) { return 1e-12 * std::max(1.0, length); }
}  // namespace

GeodesicPath::GeodesicPath(Point start, Point end, double length, Evaluator evaluator)
    : start_(std::move(start)), end_(std::move(end)), length_(length),
      evaluator_(std::move(evaluator)) {}

GeodesicPath GeodesicPath::constant(const Point& p) {
    return GeodesicPath(p, p, 0.0, [p](double) { return p; });
}

Point GeodesicPath::point_at(double s) const {
    if (!(s >= -slack(length_) && s <= length_ + slack(length_))) {
        throw RangeError("arc parameter " + std::to_string(s) + " outside [0, " +
                         std::to_string(length_) + "]");
    }
    return point_at_clamped(s);
}

Point GeodesicPath::point_at_clamped(double s) const {
    if (s <= 0.0) return start_;
    if (s >= length_) return end_;
    return evaluator_(s);
}

}  // namespace lionman
