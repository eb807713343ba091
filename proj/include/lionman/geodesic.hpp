#pragma once

#include <functional>

#include "lionman/point.hpp"

namespace lionman {

/// Arc-length parametrized geodesic segment. The evaluator maps s in
/// [0, length] to the point at distance s from start.
class GeodesicPath {
public:
    using Evaluator = std::function<Point(double)>;

    GeodesicPath(Point start, Point end, double length, Evaluator evaluator);

    /// Degenerate path sitting at one point.
    static GeodesicPath constant(const Point& p);

    const Point& start() const noexcept { return start_; }
    const Point& end() const noexcept { return end_; }
    double length() const noexcept { return length_; }

    /// Point at arc length s. Endpoints are returned bitwise; s outside
    /// [0, length] throws RangeError.
    Point point_at(double s) const;

    /// Like point_at but clamps s into [0, length]; used for "move then wait".
    Point point_at_clamped(double s) const;

private:
    Point start_;
    Point end_;
    double length_;
    Evaluator evaluator_;
};

inline Point point_at(const GeodesicPath& path, double s) { return path.point_at(s); }

}  // namespace lionman
