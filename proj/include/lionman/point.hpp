#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace lionman {

/// Identifies the space a point belongs to. Derived from the space descriptor,
/// so two spaces built from equal descriptors share a tag.
struct SpaceTag {
    std::uint64_t value = 0;
    friend bool operator==(SpaceTag, SpaceTag) = default;
};

/// An element of a playing space. Coordinates are interpreted by the owning
/// backend: (x, y) for planar carriers, an angle for the circle,
/// (edge index, offset) for metric trees.
class Point {
public:
    static constexpr std::size_t kMaxDim = 2;

    Point() = default;
    Point(SpaceTag tag, std::initializer_list<double> coords);
    Point(SpaceTag tag, std::span<const double> coords);

    SpaceTag tag() const noexcept { return tag_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> coords() const noexcept { return {coords_.data(), dim_}; }
    double operator[](std::size_t i) const { return coords_[i]; }

    /// Exact coordinate equality; points from different spaces never compare equal.
    friend bool operator==(const Point& a, const Point& b) noexcept;

private:
    std::array<double, kMaxDim> coords_{};
    std::size_t dim_ = 0;
    SpaceTag tag_{};
};

std::string to_string(const Point& p);

}  // namespace lionman
