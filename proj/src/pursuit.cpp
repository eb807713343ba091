#include "lionman/pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lionman/errors.hpp"
#include "lionman/spaces.hpp"

namespace lionman {

void GameConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("epsilon must be positive");
    }
    if (substeps_per_interval < 10) {
        throw ValidationError("substep must be at most epsilon/10 (substeps_per_interval >= 10)");
    }
    if (horizon_steps <= 0) throw ValidationError("horizon_steps must be positive");
    if (!(capture_tol >= 0.0) || capture_tol >= epsilon) {
        throw ValidationError("capture_tol must lie in [0, epsilon)");
    }
}

std::int64_t default_horizon(const MetricSpace& space, double epsilon) {
    const auto diameter = space.diameter_bound();
    if (!space.compact() || !diameter) {
        throw ValidationError("no default horizon on a non-compact space; set horizon_steps");
    }
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    const double ratio = *diameter / epsilon;
    return static_cast<std::int64_t>(std::ceil(10.0 * ratio * ratio));
}

GameConfig make_game_config(const MetricSpace& space, double epsilon, int substeps) {
    GameConfig config;
    config.epsilon = epsilon;
    config.substeps_per_interval = substeps;
    config.horizon_steps = default_horizon(space, epsilon);
    return config;
}

std::string to_string(EvaderKind kind) {
    switch (kind) {
        case EvaderKind::Stationary: return "stationary";
        case EvaderKind::GreedyMaxDistance: return "greedy_max_distance";
        case EvaderKind::RadialFlee: return "radial_flee";
        case EvaderKind::CircleRunner: return "circle_runner";
        case EvaderKind::Scripted: return "scripted";
    }
    return "unknown";
}

std::optional<EvaderKind> parse_evader_kind(const std::string& name) {
    for (auto kind : {EvaderKind::Stationary, EvaderKind::GreedyMaxDistance,
                      EvaderKind::RadialFlee, EvaderKind::CircleRunner, EvaderKind::Scripted}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

std::string EvaderStrategy::describe() const {
    switch (kind) {
        case EvaderKind::GreedyMaxDistance: return "greedy_max_distance(k=" + std::to_string(k) + ")";
        case EvaderKind::CircleRunner:
            return "circle_runner(orientation=" + std::to_string(orientation) + ")";
        case EvaderKind::Scripted:
            return "scripted(waypoints=" + std::to_string(waypoints.size()) + ")";
        default: return to_string(kind);
    }
}

LionStep lion_step(const MetricSpace& space, const Point& lion, const Point& man, double epsilon) {
    auto path = space.geodesic(lion, man);
    const double travel = std::min(epsilon, path.length());
    return LionStep{std::move(path), travel};
}

Point predict_lion(const MetricSpace& space, const Point& lion, const Point& man, double epsilon) {
    return lion_step(space, lion, man, epsilon).end();
}

Point clip_to(const MetricSpace& space, const Point& from, const Point& target, double radius) {
    const auto path = space.geodesic(from, target);
    // Targets within rounding of the radius are accepted as is.
    if (path.length() <= radius + 1e-12 * std::max(1.0, radius)) return target;
    return path.point_at(radius);
}

Evader::Evader(EvaderStrategy strategy) : strategy_(std::move(strategy)) {
    resolved_orientation_ = strategy_.orientation;
}

Point Evader::move(const MetricSpace& space, const Point& man, const Point& lion, double epsilon,
                   Rng& rng) {
    Point target = man;
    switch (strategy_.kind) {
        case EvaderKind::Stationary:
            break;
        case EvaderKind::GreedyMaxDistance: {
            const Point predicted = predict_lion(space, lion, man, epsilon);
            double best = space.distance(predicted, man);
            for (const auto& c : space.step_candidates(man, epsilon, strategy_.k, rng)) {
                const double d = space.distance(predicted, c);
                if (d > best) {
                    best = d;
                    target = c;
                }
            }
            break;
        }
        case EvaderKind::RadialFlee:
            target = space.extend(lion, man, epsilon, nullptr);
            break;
        case EvaderKind::CircleRunner: {
            const auto* circle = dynamic_cast<const CircleSpace*>(&space);
            if (circle == nullptr) {
                throw ValidationError("circle_runner requires a circle space");
            }
            if (resolved_orientation_ == 0) {
                // Run the way the Lion is about to move.
                const auto aim = space.geodesic(lion, man);
                resolved_orientation_ = 1;
                if (aim.length() > 0.0) {
                    const double mid = aim.point_at(aim.length() / 2.0)[0];
                    if (circle->wrap(mid - lion[0]) > circle->circumference() / 2.0) {
                        resolved_orientation_ = -1;
                    }
                }
            }
            target = circle->at(man[0] + resolved_orientation_ * epsilon);
            break;
        }
        case EvaderKind::Scripted: {
            if (next_waypoint_ >= strategy_.waypoints.size()) break;
            const Point& goal = strategy_.waypoints[next_waypoint_];
            target = clip_to(space, man, goal, epsilon);
            if (target == goal) ++next_waypoint_;
            break;
        }
    }
    return clip_to(space, man, target, epsilon);
}

Point evader_move(const EvaderStrategy& strategy, const MetricSpace& space, const Point& man,
                  const Point& lion, double epsilon, Rng& rng) {
    Evader evader(strategy);
    return evader.move(space, man, lion, epsilon, rng);
}

std::string describe(const Outcome& o) {
    std::ostringstream out;
    if (const auto* c = std::get_if<Captured>(&o)) {
        out << "captured at t=" << c->t;
    } else {
        out << "evaded until t=" << std::get<Evaded>(o).horizon;
    }
    return out.str();
}

GameResult run_game(const MetricSpace& space, const GameConfig& config, const Point& lion0,
                    const Point& man0, const EvaderStrategy& strategy, std::uint64_t seed) {
    config.validate();
    space.require_member(lion0);
    space.require_member(man0);

    const double eps = config.epsilon;
    const int n = config.substeps_per_interval;
    const double threshold = eps - config.capture_tol;

    Trace trace{space.descriptor(), config, strategy.describe(), seed, {}, {}};
    trace.moments.reserve(static_cast<std::size_t>(std::min<std::int64_t>(config.horizon_steps, 1 << 16)) + 1);

    Rng rng(seed);
    Evader evader(strategy);
    Point lion = lion0;
    Point man = man0;

    trace.moments.push_back({0, 0.0, lion, man});
    const double d0 = space.distance(lion, man);
    trace.samples.push_back({0.0, lion, man, d0});
    if (d0 < threshold) return {std::move(trace), Captured{0.0}};

    for (std::int64_t i = 0; i < config.horizon_steps; ++i) {
        const double tau = static_cast<double>(i) * eps;
        const LionStep step = lion_step(space, lion, man, eps);
        const Point target = evader.move(space, man, lion, eps, rng);
        const auto man_path = space.geodesic(man, target);

        Point lion_t = lion;
        Point man_t = man;
        for (int j = 1; j <= n; ++j) {
            const bool at_moment = j == n;
            const double local = at_moment ? eps : j * (eps / n);
            const double t = at_moment ? static_cast<double>(i + 1) * eps : tau + local;
            lion_t = at_moment ? step.end() : step.position_at(local);
            man_t = at_moment ? man_path.end() : man_path.point_at_clamped(local);
            const double d = space.distance(lion_t, man_t);
            trace.samples.push_back({t, lion_t, man_t, d});
            if (at_moment) trace.moments.push_back({i + 1, t, lion_t, man_t});
            if (d < threshold) return {std::move(trace), Captured{t}};
        }
        lion = lion_t;
        man = man_t;
    }
    return {std::move(trace), Evaded{static_cast<double>(config.horizon_steps) * eps}};
}

std::vector<std::pair<double, double>> distance_profile(const Trace& trace) {
    if (trace.samples.empty()) throw UsageError("distance_profile needs a nonempty trace");
    std::vector<std::pair<double, double>> out;
    out.reserve(trace.samples.size());
    for (const auto& s : trace.samples) out.emplace_back(s.t, s.d);
    return out;
}

std::pair<Point, Point> seeded_start(const MetricSpace& space, double min_separation,
                                     std::uint64_t seed, int trial) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1)));
    for (;;) {
        Point a = space.sample_point(rng);
        Point b = space.sample_point(rng);
        if (space.distance(a, b) > min_separation) return {a, b};
    }
}

std::vector<SweepRow> sweep_capture_time(const MetricSpace& space,
                                         const std::vector<double>& epsilons,
                                         const std::vector<EvaderStrategy>& evaders, int trials,
                                         std::uint64_t seed,
                                         std::optional<std::int64_t> horizon_override) {
    double largest = 0.0;
    for (double e : epsilons) {
        if (!(e > 0.0)) throw ValidationError("epsilon must be positive");
        largest = std::max(largest, e);
    }
    std::vector<SweepRow> rows;
    for (double eps : epsilons) {
        GameConfig config;
        config.epsilon = eps;
        config.horizon_steps = horizon_override ? *horizon_override : default_horizon(space, eps);
        for (const auto& evader : evaders) {
            for (int trial = 0; trial < trials; ++trial) {
                const auto [lion0, man0] = seeded_start(space, largest, seed, trial);
                auto result = run_game(space, config, lion0, man0, evader,
                                       seed + static_cast<std::uint64_t>(trial));
                rows.push_back({eps, evader.describe(), trial, result.outcome});
            }
        }
    }
    return rows;
}

}  // namespace lionman
