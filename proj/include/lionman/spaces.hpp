#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lionman/metric_space.hpp"

namespace lionman {

/// Backends whose carrier is a subset of R^2 with a norm metric.
class PlanarSpace : public MetricSpace {
public:
    enum class Norm { Euclidean, Chebyshev };

    PlanarSpace(SpaceDescriptor descriptor, Norm norm, std::optional<double> radius);

    Norm norm() const noexcept { return norm_; }
    /// Carrier radius (Euclidean disk), nullopt for the unbounded plane.
    std::optional<double> radius() const noexcept { return radius_; }

    Point at(double x, double y) const { return make_point({x, y}); }

    std::optional<double> diameter_bound() const override;
    bool contains(const Point& p) const override;
    std::vector<Point> grid_points(int resolution) const override;

protected:
    double do_distance(const Point& a, const Point& b) const override;
    GeodesicPath do_geodesic(const Point& a, const Point& b) const override;
    Point do_sample(Rng& rng) const override;
    Point do_extend(const Point& from, const Point& through, double extra,
                    Rng* branch) const override;
    std::vector<Point> do_step_candidates(const Point& from, double step, int k,
                                          Rng& rng) const override;

private:
    double norm_of(double dx, double dy) const;
    /// Moves from p along direction (ux, uy) (unit in the active norm) by up
    /// to `step`, stopping at the carrier boundary.
    Point ray(const Point& p, double ux, double uy, double step) const;

    Norm norm_;
    std::optional<double> radius_;
};

class EuclideanPlaneSpace final : public PlanarSpace {
public:
    /// Sampling region half-width; the plane itself is unbounded.
    static constexpr double kSampleExtent = 10.0;
    EuclideanPlaneSpace();
};

class EuclideanDiskSpace final : public PlanarSpace {
public:
    explicit EuclideanDiskSpace(double radius);
};

/// Euclidean disk carrier with the l-infinity metric.
class ChebyshevDiskSpace final : public PlanarSpace {
public:
    explicit ChebyshevDiskSpace(double radius);
};

/// Circle with the intrinsic arc-length metric. Points are angles
/// (arc positions) in [0, circumference).
class CircleSpace final : public MetricSpace {
public:
    CircleSpace(double circumference, int tie_break);

    double circumference() const noexcept { return circumference_; }
    int tie_break() const noexcept { return tie_break_; }
    Point at(double angle) const { return make_point({wrap(angle)}); }
    double wrap(double angle) const;

    std::optional<double> diameter_bound() const override { return circumference_ / 2.0; }
    bool contains(const Point& p) const override;
    std::vector<Point> grid_points(int resolution) const override;

protected:
    double do_distance(const Point& a, const Point& b) const override;
    GeodesicPath do_geodesic(const Point& a, const Point& b) const override;
    Point do_sample(Rng& rng) const override;
    Point do_extend(const Point& from, const Point& through, double extra,
                    Rng* branch) const override;
    std::vector<Point> do_step_candidates(const Point& from, double step, int k,
                                          Rng& rng) const override;

private:
    /// Signed arc length of the canonical geodesic from a to b.
    double signed_arc(double a, double b) const;

    double circumference_;
    int tie_break_;
};

/// Finite metric tree. Points are (edge index, offset from the edge's first
/// endpoint). Vertices are stored on their smallest-index incident edge.
class MetricTreeSpace final : public MetricSpace {
public:
    explicit MetricTreeSpace(const std::vector<TreeEdge>& edges);

    std::size_t vertex_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    double total_length() const noexcept { return total_length_; }

    /// Point on edge `edge` at `offset` from its first endpoint.
    Point on_edge(std::size_t edge, double offset) const;
    Point vertex(const std::string& name) const;
    std::optional<std::size_t> vertex_index(const std::string& name) const;

    /// Unique vertex path between two vertices (inclusive).
    std::vector<std::size_t> vertex_path(std::size_t from, std::size_t to) const;
    double vertex_distance(std::size_t from, std::size_t to) const;

    std::optional<double> diameter_bound() const override { return diameter_; }
    bool contains(const Point& p) const override;
    std::vector<Point> grid_points(int resolution) const override;

    struct Edge {
        std::size_t u;
        std::size_t v;
        double length;
    };
    const std::vector<Edge>& edges() const noexcept { return edges_; }

protected:
    double do_distance(const Point& a, const Point& b) const override;
    GeodesicPath do_geodesic(const Point& a, const Point& b) const override;
    Point do_sample(Rng& rng) const override;
    Point do_extend(const Point& from, const Point& through, double extra,
                    Rng* branch) const override;
    std::vector<Point> do_step_candidates(const Point& from, double step, int k,
                                          Rng& rng) const override;
    Point canonicalize(const Point& p) const override;

private:
    struct Leg {
        std::size_t edge;
        double from_offset;
        double to_offset;
    };
    /// Legs of the unique path between two points, in travel order.
    std::vector<Leg> legs(const Point& a, const Point& b) const;
    /// Vertex index if p sits exactly on a vertex.
    std::optional<std::size_t> as_vertex(const Point& p) const;
    Point walk(std::size_t edge, double offset) const;
    /// Walks `remaining` away from vertex `at`, never re-entering `came_by`.
    void explore(std::size_t at, std::optional<std::size_t> came_by, double remaining,
                 std::vector<Point>& out) const;
    Point descend(std::size_t at, std::optional<std::size_t> came_by, double remaining,
                  Rng* branch) const;
    std::vector<std::size_t> branches(std::size_t at, std::optional<std::size_t> came_by) const;

    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;  // vertex -> edge indices, ascending
    std::vector<std::vector<double>> dist_;           // all-pairs vertex distances
    std::vector<std::vector<std::size_t>> next_hop_;  // next_hop_[a][b]: edge leaving a toward b
    std::vector<double> cumulative_;                  // prefix sums of edge lengths
    double total_length_ = 0.0;
    double diameter_ = 0.0;
};

/// Builds the backend for a descriptor; throws ValidationError on bad parameters.
SpacePtr make_space(const SpaceDescriptor& descriptor);

/// Reads `u v length` triples, one per line. Blank lines and lines starting
/// with '#' are skipped.
std::vector<TreeEdge> parse_tree_edges(std::istream& in);

}  // namespace lionman
