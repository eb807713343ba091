#include <algorithm>
#include <cmath>
#include <numbers>

#include "lionman/errors.hpp"
#include "lionman/spaces.hpp"

namespace lionman {

namespace {
constexpr double kMembershipTol = 1e-12;
}

PlanarSpace::PlanarSpace(SpaceDescriptor descriptor, Norm norm, std::optional<double> radius)
    : MetricSpace(std::move(descriptor)), norm_(norm), radius_(radius) {}

EuclideanPlaneSpace::EuclideanPlaneSpace()
    : PlanarSpace(SpaceDescriptor::plane(), Norm::Euclidean, std::nullopt) {}

EuclideanDiskSpace::EuclideanDiskSpace(double radius)
    : PlanarSpace(SpaceDescriptor::disk(radius), Norm::Euclidean, radius) {}

ChebyshevDiskSpace::ChebyshevDiskSpace(double radius)
    : PlanarSpace(SpaceDescriptor::chebyshev_disk(radius), Norm::Chebyshev, radius) {}

double PlanarSpace::norm_of(double dx, double dy) const {
    if (norm_ == Norm::Chebyshev) return std::max(std::abs(dx), std::abs(dy));
    return std::hypot(dx, dy);
}

std::optional<double> PlanarSpace::diameter_bound() const {
    // Both norms give 2r on a Euclidean disk: the horizontal diameter is extremal.
    if (!radius_) return std::nullopt;
    return 2.0 * *radius_;
}

bool PlanarSpace::contains(const Point& p) const {
    if (p.dim() != 2 || !std::isfinite(p[0]) || !std::isfinite(p[1])) return false;
    if (!radius_) return true;
    return std::hypot(p[0], p[1]) <= *radius_ + kMembershipTol;
}

double PlanarSpace::do_distance(const Point& a, const Point& b) const {
    return norm_of(b[0] - a[0], b[1] - a[1]);
}

GeodesicPath PlanarSpace::do_geodesic(const Point& a, const Point& b) const {
    const double length = do_distance(a, b);
    const double dx = b[0] - a[0];
    const double dy = b[1] - a[1];
    const SpaceTag tag = this->tag();
    // Affine segment; for the l-infinity norm this is the canonical choice
    // among the (non-unique) geodesics.
    return GeodesicPath(a, b, length, [=](double s) {
        const double f = s / length;
        return Point(tag, {a[0] + f * dx, a[1] + f * dy});
    });
}

Point PlanarSpace::do_sample(Rng& rng) const {
    if (!radius_) {
        const double e = EuclideanPlaneSpace::kSampleExtent;
        const double x = rng.uniform(-e, e);
        const double y = rng.uniform(-e, e);
        return Point(tag(), {x, y});
    }
    const double r = *radius_;
    for (;;) {
        const double x = rng.uniform(-r, r);
        const double y = rng.uniform(-r, r);
        if (x * x + y * y <= r * r) return Point(tag(), {x, y});
    }
}

Point PlanarSpace::ray(const Point& p, double ux, double uy, double step) const {
    double t = step;
    if (radius_) {
        // Largest t with |p + t u|_2 <= r.
        const double a = ux * ux + uy * uy;
        const double b = p[0] * ux + p[1] * uy;
        const double c = p[0] * p[0] + p[1] * p[1] - *radius_ * *radius_;
        const double disc = std::max(0.0, b * b - a * c);
        const double t_max = std::max(0.0, (-b + std::sqrt(disc)) / a);
        t = std::min(step, t_max);
    }
    double x = p[0] + t * ux;
    double y = p[1] + t * uy;
    if (radius_) {
        const double n = std::hypot(x, y);
        if (n > *radius_) {
            x *= *radius_ / n;
            y *= *radius_ / n;
        }
    }
    return Point(tag(), {x, y});
}

Point PlanarSpace::do_extend(const Point& from, const Point& through, double extra,
                             Rng* branch) const {
    const double dx = through[0] - from[0];
    const double dy = through[1] - from[1];
    const double n = norm_of(dx, dy);
    double ux = dx / n;
    double uy = dy / n;
    if (norm_ == Norm::Chebyshev && branch != nullptr) {
        // Any unit direction sharing a dominant coordinate (with sign) keeps
        // the l-infinity distance additive.
        const bool x_dom = std::abs(ux) >= 1.0 - 1e-12;
        const bool y_dom = std::abs(uy) >= 1.0 - 1e-12;
        const bool use_x = x_dom && (!y_dom || branch->uniform() < 0.5);
        if (use_x) {
            ux = ux > 0 ? 1.0 : -1.0;
            uy = branch->uniform(-1.0, 1.0);
        } else {
            uy = uy > 0 ? 1.0 : -1.0;
            ux = branch->uniform(-1.0, 1.0);
        }
    }
    return ray(through, ux, uy, extra);
}

std::vector<Point> PlanarSpace::do_step_candidates(const Point& from, double step, int k,
                                                   Rng& rng) const {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(std::max(k, 0)));
    const double phase = rng.uniform();
    for (int j = 0; j < k; ++j) {
        const double u = (phase + j) / k;  // fraction of the unit sphere's perimeter
        double ux = 0.0;
        double uy = 0.0;
        if (norm_ == Norm::Euclidean) {
            const double angle = 2.0 * std::numbers::pi * u;
            ux = std::cos(angle);
            uy = std::sin(angle);
        } else {
            // Unit l-infinity sphere: the square boundary, perimeter 8.
            const double s = 8.0 * u;
            if (s < 2.0) {
                ux = 1.0, uy = -1.0 + s;
            } else if (s < 4.0) {
                ux = 1.0 - (s - 2.0), uy = 1.0;
            } else if (s < 6.0) {
                ux = -1.0, uy = 1.0 - (s - 4.0);
            } else {
                ux = -1.0 + (s - 6.0), uy = -1.0;
            }
        }
        out.push_back(ray(from, ux, uy, step));
    }
    return out;
}

std::vector<Point> PlanarSpace::grid_points(int resolution) const {
    const double r = radius_.value_or(1.0);
    const double h = 2.0 * r / resolution;
    std::vector<Point> out;
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; j <= resolution; ++j) {
            Point p(tag(), {-r + i * h, -r + j * h});
            if (contains(p)) out.push_back(p);
        }
    }
    return out;
}

}  // namespace lionman
