#include <cmath>
#include <memory>

#include "lionman/errors.hpp"
#include "lionman/spaces.hpp"

namespace lionman {

namespace {

double positive(const SpaceDescriptor& d, const std::string& name, double fallback) {
    const double v = d.parameter(name, fallback);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(name + " must be positive, got " + std::to_string(v));
    }
    return v;
}

}  // namespace

SpacePtr make_space(const SpaceDescriptor& descriptor) {
    switch (descriptor.kind) {
        case SpaceKind::Plane:
            return std::make_shared<EuclideanPlaneSpace>();
        case SpaceKind::Disk:
            return std::make_shared<EuclideanDiskSpace>(positive(descriptor, "radius", 1.0));
        case SpaceKind::ChebyshevDisk:
            return std::make_shared<ChebyshevDiskSpace>(positive(descriptor, "radius", 1.0));
        case SpaceKind::Circle: {
            const double c = positive(descriptor, "circumference", 1.0);
            const double tie = descriptor.parameter("tie_break", 1.0);
            if (tie != 1.0 && tie != -1.0) {
                throw ValidationError("tie_break must be +1 or -1");
            }
            return std::make_shared<CircleSpace>(c, static_cast<int>(tie));
        }
        case SpaceKind::Tree:
            return std::make_shared<MetricTreeSpace>(descriptor.edges);
    }
    throw ValidationError("unknown space kind");
}

}  // namespace lionman
