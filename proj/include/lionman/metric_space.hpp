#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lionman/geodesic.hpp"
#include "lionman/point.hpp"
#include "lionman/rng.hpp"

namespace lionman {

enum class SpaceKind { Plane, Disk, ChebyshevDisk, Circle, Tree };

std::string to_string(SpaceKind kind);
/// Accepts both the snake_case and the hyphenated CLI spelling.
std::optional<SpaceKind> parse_space_kind(const std::string& name);

struct TreeEdge {
    std::string u;
    std::string v;
    double length = 0.0;
};

/// Declarative description of a space; make_space() turns it into a backend.
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::Disk;
    std::map<std::string, double> parameters;
    std::vector<TreeEdge> edges;

    static SpaceDescriptor plane();
    static SpaceDescriptor disk(double radius = 1.0);
    static SpaceDescriptor chebyshev_disk(double radius = 1.0);
    /// tie_break is +1 (counterclockwise) or -1 for antipodal pairs.
    static SpaceDescriptor circle(double circumference, int tie_break = +1);
    static SpaceDescriptor tree(std::vector<TreeEdge> edges);

    double parameter(const std::string& name, double fallback) const;

    /// Stable textual form; also the source of the space tag.
    std::string canonical() const;
};

/// Compact kinds: disk, Chebyshev disk, circle, tree.
bool is_compact_kind(SpaceKind kind);

/// Contract every playing space implements. Instances are immutable.
class MetricSpace {
public:
    explicit MetricSpace(SpaceDescriptor descriptor);
    virtual ~MetricSpace() = default;

    MetricSpace(const MetricSpace&) = delete;
    MetricSpace& operator=(const MetricSpace&) = delete;

    const SpaceDescriptor& descriptor() const noexcept { return descriptor_; }
    SpaceTag tag() const noexcept { return tag_; }
    SpaceKind kind() const noexcept { return descriptor_.kind; }
    bool compact() const noexcept { return is_compact_kind(descriptor_.kind); }

    /// Upper bound on pairwise distances, nullopt when unbounded.
    virtual std::optional<double> diameter_bound() const = 0;

    /// Membership predicate on coordinates (the tag is not inspected).
    virtual bool contains(const Point& p) const = 0;

    /// Throws UsageError on a foreign tag, DomainError outside the carrier.
    void require_member(const Point& p) const;

    double distance(const Point& a, const Point& b) const;

    /// Canonical geodesic from a to b. Deterministic.
    GeodesicPath geodesic(const Point& a, const Point& b) const;

    Point sample_point(Rng& rng) const;

    /// Continues a geodesic from `from` through `through` by up to `extra`,
    /// returning P with d(through, P) <= extra and
    /// d(from, P) = d(from, through) + d(through, P). Stops early at the
    /// carrier boundary or where no straight continuation exists. When the
    /// continuation branches, `branch` picks one at random; null picks the
    /// canonical branch.
    Point extend(const Point& from, const Point& through, double extra, Rng* branch) const;

    /// Points reachable from `from` by moving `step` in each available
    /// direction (k directions on continuous carriers), clipped to the carrier.
    std::vector<Point> step_candidates(const Point& from, double step, int k, Rng& rng) const;

    /// Deterministic finite point set used by exhaustive searches.
    virtual std::vector<Point> grid_points(int resolution) const = 0;

    /// Canonicalizes and validates; throws DomainError outside the carrier.
    Point make_point(std::initializer_list<double> coords) const;
    Point make_point(std::span<const double> coords) const;

protected:
    virtual double do_distance(const Point& a, const Point& b) const = 0;
    virtual GeodesicPath do_geodesic(const Point& a, const Point& b) const = 0;
    virtual Point do_sample(Rng& rng) const = 0;
    virtual Point do_extend(const Point& from, const Point& through, double extra,
                            Rng* branch) const = 0;
    virtual std::vector<Point> do_step_candidates(const Point& from, double step, int k,
                                                  Rng& rng) const = 0;
    /// Hook for backends that normalize coordinates (tree vertices).
    virtual Point canonicalize(const Point& p) const { return p; }

private:
    SpaceDescriptor descriptor_;
    SpaceTag tag_;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

// Free-function forms of the contract.
double distance(const MetricSpace& space, const Point& a, const Point& b);
GeodesicPath geodesic(const MetricSpace& space, const Point& a, const Point& b);
Point sample_point(const MetricSpace& space, Rng& rng);

/// True iff b lies between a and c: |d(a,b) + d(b,c) - d(a,c)| <= tol.
bool between(const MetricSpace& space, const Point& a, const Point& b, const Point& c,
             double tol);

/// Signed residual d(a,b) + d(b,c) - d(a,c) (nonnegative up to rounding).
double between_residual(const MetricSpace& space, const Point& a, const Point& b,
                        const Point& c);

}  // namespace lionman
