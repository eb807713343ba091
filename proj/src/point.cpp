#include "lionman/point.hpp"

#include <algorithm>
#include <charconv>

#include "lionman/errors.hpp"

namespace lionman {

Point::Point(SpaceTag tag, std::initializer_list<double> coords)
    : Point(tag, std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(SpaceTag tag, std::span<const double> coords) : dim_(coords.size()), tag_(tag) {
    if (coords.size() > kMaxDim) {
        throw UsageError("point dimension exceeds " + std::to_string(kMaxDim));
    }
    std::copy(coords.begin(), coords.end(), coords_.begin());
}

bool operator==(const Point& a, const Point& b) noexcept {
    if (a.tag_ != b.tag_ || a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i) {
        if (a.coords_[i] != b.coords_[i]) return false;
    }
    return true;
}

std::string to_string(const Point& p) {
    std::string out = "(";
    char buf[32];
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ", ";
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p[i]);
        out.append(buf, end);
    }
    out += ")";
    return out;
}

}  // namespace lionman
