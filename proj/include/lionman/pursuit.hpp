#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lionman/metric_space.hpp"

namespace lionman {

/// Game timing. Correction moments are tau_i = i * epsilon; each interval is
/// sampled at `substeps_per_interval` equal substeps.
struct GameConfig {
    double epsilon = 0.1;
    int substeps_per_interval = 10;
    std::int64_t horizon_steps = 1000;
    double capture_tol = 0.0;

    double substep() const { return epsilon / substeps_per_interval; }
    /// Throws ValidationError on a nonpositive epsilon, fewer than 10
    /// substeps per interval, or a nonpositive horizon.
    void validate() const;
};

/// ceil(10 * (diameter / epsilon)^2); throws ValidationError on unbounded spaces.
std::int64_t default_horizon(const MetricSpace& space, double epsilon);

/// Config with the default horizon for a compact space.
GameConfig make_game_config(const MetricSpace& space, double epsilon, int substeps = 10);

enum class EvaderKind { Stationary, GreedyMaxDistance, RadialFlee, CircleRunner, Scripted };

std::string to_string(EvaderKind kind);
std::optional<EvaderKind> parse_evader_kind(const std::string& name);

struct EvaderStrategy {
    EvaderKind kind = EvaderKind::Stationary;
    /// greedy_max_distance: number of candidate directions.
    int k = 32;
    /// circle_runner: +1 / -1, or 0 to run away from the Lion's initial aim.
    int orientation = 0;
    /// scripted: one target per correction interval.
    std::vector<Point> waypoints;

    static EvaderStrategy stationary() { return {EvaderKind::Stationary, 32, 0, {}}; }
    static EvaderStrategy greedy(int k = 32) { return {EvaderKind::GreedyMaxDistance, k, 0, {}}; }
    static EvaderStrategy radial_flee() { return {EvaderKind::RadialFlee, 32, 0, {}}; }
    static EvaderStrategy circle_runner(int orientation = 0) {
        return {EvaderKind::CircleRunner, 32, orientation, {}};
    }
    static EvaderStrategy scripted(std::vector<Point> waypoints) {
        return {EvaderKind::Scripted, 32, 0, std::move(waypoints)};
    }

    /// e.g. "greedy_max_distance(k=32)".
    std::string describe() const;
};

/// Lion's motion over one correction interval: along the canonical geodesic
/// to the evader's current position, at unit speed, waiting at the end if the
/// evader is closer than epsilon.
struct LionStep {
    GeodesicPath path;
    double travel;  // min(epsilon, path length)

    Point position_at(double local_t) const { return path.point_at_clamped(local_t); }
    Point end() const { return path.point_at(travel); }
};

LionStep lion_step(const MetricSpace& space, const Point& lion, const Point& man, double epsilon);

/// Lion's position at the next correction moment.
Point predict_lion(const MetricSpace& space, const Point& lion, const Point& man, double epsilon);

/// Per-game evader state (scripted progress, resolved runner orientation).
class Evader {
public:
    explicit Evader(EvaderStrategy strategy);

    const EvaderStrategy& strategy() const noexcept { return strategy_; }

    /// Target for the next interval, within epsilon of `man`.
    Point move(const MetricSpace& space, const Point& man, const Point& lion, double epsilon,
               Rng& rng);

private:
    EvaderStrategy strategy_;
    std::size_t next_waypoint_ = 0;
    int resolved_orientation_ = 0;
};

/// Stateless form for a single decision (scripted strategies use their first
/// waypoint).
Point evader_move(const EvaderStrategy& strategy, const MetricSpace& space, const Point& man,
                  const Point& lion, double epsilon, Rng& rng);

/// Clips a target to lie within `radius` (plus 1e-12 relative slack) of `from`
/// along the canonical geodesic.
Point clip_to(const MetricSpace& space, const Point& from, const Point& target, double radius);

struct Moment {
    std::int64_t index;
    double tau;
    Point lion;
    Point man;
};

struct Sample {
    double t;
    Point lion;
    Point man;
    double d;
};

struct Captured {
    double t;
};
struct Evaded {
    double horizon;
};
using Outcome = std::variant<Captured, Evaded>;

inline bool is_captured(const Outcome& o) { return std::holds_alternative<Captured>(o); }
std::string describe(const Outcome& o);

struct Trace {
    SpaceDescriptor space;
    GameConfig config;
    std::string evader;
    std::uint64_t seed = 0;
    std::vector<Moment> moments;
    std::vector<Sample> samples;
};

struct GameResult {
    Trace trace;
    Outcome outcome;
};

GameResult run_game(const MetricSpace& space, const GameConfig& config, const Point& lion0,
                    const Point& man0, const EvaderStrategy& evader, std::uint64_t seed);

/// (t, d) at every substep sample. Throws UsageError on an empty trace.
std::vector<std::pair<double, double>> distance_profile(const Trace& trace);

struct SweepRow {
    double epsilon;
    std::string evader;
    int trial;
    Outcome outcome;
};

/// Seeded start pair with d > min_separation (per-trial stream).
std::pair<Point, Point> seeded_start(const MetricSpace& space, double min_separation,
                                     std::uint64_t seed, int trial);

/// Runs every (epsilon, evader, trial) combination. Trial starts depend only
/// on (seed, trial) and are separated by more than the largest epsilon.
/// horizon_override replaces the default horizon (required on the plane).
std::vector<SweepRow> sweep_capture_time(const MetricSpace& space,
                                         const std::vector<double>& epsilons,
                                         const std::vector<EvaderStrategy>& evaders, int trials,
                                         std::uint64_t seed,
                                         std::optional<std::int64_t> horizon_override = {});

}  // namespace lionman
