#include "lionman/experiment.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "lionman/errors.hpp"
#include "lionman/property_checkers.hpp"
#include "lionman/spaces.hpp"

namespace lionman {

using io::json;

std::string to_string(Expectation e) {
    switch (e) {
        case Expectation::Capture: return "capture";
        case Expectation::Escape: return "escape";
        case Expectation::ViolationFound: return "violation_found";
    }
    return "unknown";
}

namespace {

/// Collects schema errors with their JSON paths.
class Checker {
public:
    void error(const std::string& path, const std::string& message) {
        errors_.push_back((path.empty() ? std::string("/") : path) + ": " + message);
    }
    bool ok() const { return errors_.empty(); }
    const std::vector<std::string>& errors() const { return errors_; }

    bool object(const json& j, const std::string& path, const std::set<std::string>& allowed) {
        if (!j.is_object()) {
            error(path, "expected an object");
            return false;
        }
        for (const auto& [key, value] : j.items()) {
            if (!allowed.count(key)) error(path + "/" + key, "unknown key");
        }
        return true;
    }

    std::optional<double> number(const json& j, const std::string& key, const std::string& path,
                                 bool required) {
        if (!j.contains(key)) {
            if (required) error(path + "/" + key, "required");
            return std::nullopt;
        }
        if (!j[key].is_number()) {
            error(path + "/" + key, "expected a number");
            return std::nullopt;
        }
        return j[key].get<double>();
    }

    std::optional<std::int64_t> integer(const json& j, const std::string& key,
                                        const std::string& path) {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_number_integer()) {
            error(path + "/" + key, "expected an integer");
            return std::nullopt;
        }
        return j[key].get<std::int64_t>();
    }

    std::optional<std::string> string(const json& j, const std::string& key,
                                      const std::string& path, bool required) {
        if (!j.contains(key)) {
            if (required) error(path + "/" + key, "required");
            return std::nullopt;
        }
        if (!j[key].is_string()) {
            error(path + "/" + key, "expected a string");
            return std::nullopt;
        }
        return j[key].get<std::string>();
    }

private:
    std::vector<std::string> errors_;
};

SpacePtr parse_space(const json& j, Checker& check) {
    const std::string path = "/space";
    if (!check.object(j, path, {"kind", "radius", "circumference", "tie_break", "edges", "edges_file"})) {
        return nullptr;
    }
    const auto kind_name = check.string(j, "kind", path, true);
    if (!kind_name) return nullptr;
    const auto kind = parse_space_kind(*kind_name);
    if (!kind) {
        check.error(path + "/kind", "unknown space kind '" + *kind_name + "'");
        return nullptr;
    }
    std::set<std::string> allowed{"kind"};
    switch (*kind) {
        case SpaceKind::Plane: break;
        case SpaceKind::Disk:
        case SpaceKind::ChebyshevDisk: allowed.insert("radius"); break;
        case SpaceKind::Circle: allowed.insert({"circumference", "tie_break"}); break;
        case SpaceKind::Tree: allowed.insert({"edges", "edges_file"}); break;
    }
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) check.error(path + "/" + key, "not a parameter of " + *kind_name);
    }

    SpaceDescriptor d;
    d.kind = *kind;
    try {
        if (*kind == SpaceKind::Tree) {
            if (j.contains("edges_file")) {
                const auto file = check.string(j, "edges_file", path, true);
                if (!file) return nullptr;
                std::ifstream in(*file);
                if (!in) {
                    check.error(path + "/edges_file", "cannot open " + *file);
                    return nullptr;
                }
                d.edges = parse_tree_edges(in);
            } else {
                json wrapper{{"kind", "tree"}, {"edges", j.value("edges", json::array())}};
                d.edges = io::descriptor_from_json(wrapper).edges;
            }
        } else {
            for (const auto& [key, value] : j.items()) {
                if (key == "kind" || !allowed.count(key)) continue;
                if (const auto v = check.number(j, key, path, true)) d.parameters[key] = *v;
            }
        }
        return make_space(d);
    } catch (const std::exception& e) {
        check.error(path, e.what());
        return nullptr;
    }
}

std::optional<EvaderStrategy> parse_evader(const json& j, const MetricSpace* space,
                                           Checker& check) {
    const std::string path = "/evader";
    if (!check.object(j, path, {"kind", "k", "orientation", "waypoints"})) return std::nullopt;
    const auto name = check.string(j, "kind", path, true);
    if (!name) return std::nullopt;
    const auto kind = parse_evader_kind(*name);
    if (!kind) {
        check.error(path + "/kind", "unknown evader kind '" + *name + "'");
        return std::nullopt;
    }
    EvaderStrategy s;
    s.kind = *kind;
    if (const auto k = check.integer(j, "k", path)) {
        if (*k < 1) check.error(path + "/k", "k must be positive");
        s.k = static_cast<int>(*k);
    }
    if (const auto o = check.integer(j, "orientation", path)) {
        if (*o < -1 || *o > 1) check.error(path + "/orientation", "orientation must be -1, 0 or 1");
        s.orientation = static_cast<int>(*o);
    }
    if (*kind == EvaderKind::CircleRunner && space && space->kind() != SpaceKind::Circle) {
        check.error(path + "/kind", "circle_runner requires a circle space");
    }
    if (j.contains("waypoints")) {
        if (!j["waypoints"].is_array()) {
            check.error(path + "/waypoints", "expected an array of points");
        } else if (space) {
            for (std::size_t i = 0; i < j["waypoints"].size(); ++i) {
                try {
                    s.waypoints.push_back(io::point_from_json(*space, j["waypoints"][i]));
                } catch (const std::exception& e) {
                    check.error(path + "/waypoints/" + std::to_string(i), e.what());
                }
            }
        }
    }
    return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError("config is not valid JSON", {std::string("/: ") + e.what()});
    }
    Checker check;
    ExperimentConfig config;
    if (!check.object(root, "", {"schema", "name", "space", "game", "evader", "starts", "seed",
                                 "expect", "expect_constant_distance", "outputs"})) {
        throw ValidationError("invalid config", check.errors());
    }
    if (const auto schema = check.string(root, "schema", "", true); schema && *schema != kConfigSchema) {
        check.error("/schema", "unsupported schema '" + *schema + "', expected " + kConfigSchema);
    }
    if (const auto name = check.string(root, "name", "", false)) config.name = *name;

    if (root.contains("space")) {
        config.space = parse_space(root["space"], check);
    } else {
        check.error("/space", "required");
    }

    if (!root.contains("game")) {
        check.error("/game", "required");
    } else if (check.object(root["game"], "/game",
                            {"epsilon", "substeps_per_interval", "horizon_steps", "capture_tol"})) {
        const auto& g = root["game"];
        if (const auto eps = check.number(g, "epsilon", "/game", true)) {
            config.game.epsilon = *eps;
            if (!(*eps > 0.0)) check.error("/game/epsilon", "epsilon must be positive");
        }
        if (const auto n = check.integer(g, "substeps_per_interval", "/game")) {
            config.game.substeps_per_interval = static_cast<int>(*n);
            if (*n < 10) check.error("/game/substeps_per_interval", "must be at least 10 (substep <= epsilon/10)");
        }
        if (const auto tol = check.number(g, "capture_tol", "/game", false)) {
            config.game.capture_tol = *tol;
            if (*tol < 0.0) check.error("/game/capture_tol", "must be nonnegative");
        }
        const auto horizon = check.integer(g, "horizon_steps", "/game");
        if (horizon) {
            if (*horizon <= 0) check.error("/game/horizon_steps", "must be positive");
            config.game.horizon_steps = *horizon;
        } else if (config.space && config.game.epsilon > 0.0) {
            if (config.space->compact()) {
                config.game.horizon_steps = default_horizon(*config.space, config.game.epsilon);
            } else {
                check.error("/game/horizon_steps", "required on a non-compact space");
            }
        }
        if (config.space && config.game.epsilon > 0.0) {
            if (const auto diam = config.space->diameter_bound(); diam && config.game.epsilon >= *diam) {
                check.error("/game/epsilon", "epsilon must be below the space diameter");
            }
        }
    }

    if (!root.contains("evader")) {
        check.error("/evader", "required");
    } else if (auto ev = parse_evader(root["evader"], config.space.get(), check)) {
        config.evader = std::move(*ev);
    }

    if (!root.contains("starts")) {
        check.error("/starts", "required");
    } else if (check.object(root["starts"], "/starts", {"pairs", "random"})) {
        const auto& st = root["starts"];
        if (const auto r = check.integer(st, "random", "/starts")) {
            if (*r < 0) check.error("/starts/random", "must be nonnegative");
            config.starts.random_count = static_cast<int>(*r);
        }
        if (st.contains("pairs")) {
            if (!st["pairs"].is_array()) {
                check.error("/starts/pairs", "expected an array");
            } else {
                for (std::size_t i = 0; i < st["pairs"].size(); ++i) {
                    const std::string p = "/starts/pairs/" + std::to_string(i);
                    const auto& pair = st["pairs"][i];
                    if (!check.object(pair, p, {"lion", "man"})) continue;
                    if (!pair.contains("lion") || !pair.contains("man")) {
                        check.error(p, "needs both 'lion' and 'man'");
                        continue;
                    }
                    if (!config.space) continue;
                    try {
                        config.starts.pairs.emplace_back(io::point_from_json(*config.space, pair["lion"]),
                                                         io::point_from_json(*config.space, pair["man"]));
                    } catch (const std::exception& e) {
                        check.error(p, e.what());
                    }
                }
            }
        }
        if (config.starts.pairs.empty() && config.starts.random_count == 0 && check.ok()) {
            check.error("/starts", "at least one start is required");
        }
    }

    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned()) {
            check.error("/seed", "expected a nonnegative integer");
        } else {
            config.seed = root["seed"].get<std::uint64_t>();
        }
    }
    if (const auto e = check.string(root, "expect", "", false)) {
        if (*e == "capture") config.expect = Expectation::Capture;
        else if (*e == "escape") config.expect = Expectation::Escape;
        else if (*e == "violation_found") config.expect = Expectation::ViolationFound;
        else check.error("/expect", "expected capture, escape or violation_found");
    }
    if (root.contains("expect_constant_distance")) {
        if (!root["expect_constant_distance"].is_boolean()) {
            check.error("/expect_constant_distance", "expected a boolean");
        } else {
            config.expect_constant_distance = root["expect_constant_distance"].get<bool>();
        }
    }
    if (root.contains("outputs") &&
        check.object(root["outputs"], "/outputs", {"dir", "format"})) {
        const auto& o = root["outputs"];
        if (const auto dir = check.string(o, "dir", "/outputs", false)) config.outputs.dir = *dir;
        if (const auto fmt = check.string(o, "format", "/outputs", false)) {
            if (*fmt != "jsonl" && *fmt != "csv") check.error("/outputs/format", "expected jsonl or csv");
            config.outputs.format = *fmt;
        }
    }

    if (!check.ok()) {
        std::string first = check.errors().front();
        throw ValidationError("invalid config: " + first, check.errors());
    }
    return config;
}

std::string to_string(PresetId id) {
    switch (id) {
        case PresetId::Example1Plane: return "example1_plane";
        case PresetId::Example2Disk: return "example2_disk";
        case PresetId::Example3Chebyshev: return "example3_chebyshev";
        case PresetId::CircleCounterexample: return "circle_counterexample";
        case PresetId::TreeCat0: return "tree_cat0";
    }
    return "unknown";
}

std::vector<PresetId> all_presets() {
    return {PresetId::Example1Plane, PresetId::Example2Disk, PresetId::Example3Chebyshev,
            PresetId::CircleCounterexample, PresetId::TreeCat0};
}

std::optional<PresetId> parse_preset_id(const std::string& name) {
    for (auto id : all_presets()) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

std::vector<TreeEdge> preset_tree_edges() {
    return {{"r", "a", 1.0},  {"a", "b", 0.7}, {"a", "c", 0.5}, {"r", "d", 0.8},
            {"d", "e", 0.6},  {"d", "f", 0.9}, {"r", "g", 0.4}, {"g", "h", 1.1},
            {"h", "i", 0.3},  {"g", "j", 0.75}};
}

ExperimentConfig make_preset(PresetId id) {
    ExperimentConfig c;
    c.name = to_string(id);
    c.seed = 1;
    c.outputs.dir = std::filesystem::path("out") / c.name;
    const double eps = 0.1;
    switch (id) {
        case PresetId::Example1Plane: {
            c.space = make_space(SpaceDescriptor::plane());
            c.game.epsilon = eps;
            c.game.horizon_steps = 1000;
            c.evader = EvaderStrategy::radial_flee();
            c.starts.pairs.emplace_back(c.space->make_point({0.0, 0.0}), c.space->make_point({1.0, 0.0}));
            c.starts.random_count = 4;
            c.expect = Expectation::Escape;
            break;
        }
        case PresetId::Example2Disk:
            c.space = make_space(SpaceDescriptor::disk(1.0));
            c.game = make_game_config(*c.space, eps);
            c.evader = EvaderStrategy::greedy(32);
            c.starts.random_count = 5;
            c.expect = Expectation::Capture;
            break;
        case PresetId::Example3Chebyshev:
            c.space = make_space(SpaceDescriptor::chebyshev_disk(1.0));
            c.game = make_game_config(*c.space, eps);
            c.evader = EvaderStrategy::greedy(32);
            c.starts.random_count = 5;
            c.expect = Expectation::Capture;
            break;
        case PresetId::CircleCounterexample:
            c.space = make_space(SpaceDescriptor::circle(1.0));
            c.game = make_game_config(*c.space, 0.05);
            c.evader = EvaderStrategy::circle_runner(0);
            c.starts.pairs.emplace_back(c.space->make_point({0.0}), c.space->make_point({0.4}));
            c.expect = Expectation::Escape;
            c.expect_constant_distance = true;
            break;
        case PresetId::TreeCat0:
            c.space = make_space(SpaceDescriptor::tree(preset_tree_edges()));
            c.game = make_game_config(*c.space, eps);
            c.evader = EvaderStrategy::greedy(32);
            c.starts.random_count = 5;
            c.expect = Expectation::Capture;
            break;
    }
    return c;
}

void apply_overrides(ExperimentConfig& config, const Overrides& overrides) {
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.epsilon) {
        const double old_eps = config.game.epsilon;
        config.game.epsilon = *overrides.epsilon;
        if (config.space->compact()) {
            config.game.horizon_steps = default_horizon(*config.space, *overrides.epsilon);
        } else {
            // Keep the same time horizon on unbounded spaces.
            config.game.horizon_steps = static_cast<std::int64_t>(
                std::ceil(static_cast<double>(config.game.horizon_steps) * old_eps / *overrides.epsilon));
        }
    }
    if (overrides.out_dir) config.outputs.dir = *overrides.out_dir;
    if (overrides.format) config.outputs.format = *overrides.format;
    config.game.validate();
}

std::vector<std::pair<Point, Point>> resolve_starts(const ExperimentConfig& config) {
    auto starts = config.starts.pairs;
    for (int k = 0; k < config.starts.random_count; ++k) {
        starts.push_back(seeded_start(*config.space, config.game.epsilon, config.seed, k));
    }
    return starts;
}

std::vector<Point> runner_waypoints(const MetricSpace& space, double epsilon, int laps) {
    std::vector<Point> out;
    if (const auto* planar = dynamic_cast<const PlanarSpace*>(&space)) {
        const double r = 0.9 * planar->radius().value_or(1.0);
        const double step = 2.0 * std::asin(std::min(1.0, epsilon / (2.0 * r)));
        const auto per_lap = static_cast<int>(std::floor(2.0 * std::numbers::pi / step));
        for (int k = 0; k < per_lap * laps; ++k) {
            const double a = k * step;
            out.push_back(planar->at(r * std::cos(a), r * std::sin(a)));
        }
        return out;
    }
    if (const auto* circle = dynamic_cast<const CircleSpace*>(&space)) {
        const auto per_lap = static_cast<int>(std::floor(circle->circumference() / epsilon));
        for (int k = 1; k <= per_lap * laps; ++k) out.push_back(circle->at(k * epsilon));
        return out;
    }
    const auto& tree = dynamic_cast<const MetricTreeSpace&>(space);
    // Depth-first tour from the first vertex: every edge out and back.
    std::vector<std::size_t> tour;
    std::vector<std::vector<std::size_t>> adjacency(tree.vertex_count());
    for (const auto& e : tree.edges()) {
        adjacency[e.u].push_back(e.v);
        adjacency[e.v].push_back(e.u);
    }
    auto dfs = [&](auto&& self, std::size_t at, std::size_t parent) -> void {
        tour.push_back(at);
        for (std::size_t next : adjacency[at]) {
            if (next == parent) continue;
            self(self, next, at);
            tour.push_back(at);
        }
    };
    dfs(dfs, 0, static_cast<std::size_t>(-1));

    auto vertex_point = [&](std::size_t v) {
        for (std::size_t e = 0; e < tree.edges().size(); ++e) {
            const auto& edge = tree.edges()[e];
            if (edge.u == v) return tree.on_edge(e, 0.0);
            if (edge.v == v) return tree.on_edge(e, edge.length);
        }
        throw UsageError("isolated vertex");
    };
    double carry = 0.0;  // distance walked since the last waypoint
    for (int lap = 0; lap < laps; ++lap) {
        for (std::size_t k = 0; k + 1 < tour.size(); ++k) {
            const auto path = tree.geodesic(vertex_point(tour[k]), vertex_point(tour[k + 1]));
            double s = epsilon - carry;
            for (; s <= path.length(); s += epsilon) out.push_back(path.point_at(s));
            carry = path.length() - (s - epsilon);
        }
    }
    return out;
}

namespace {

std::string trace_name(std::size_t k, const std::string& format) {
    return "trace_" + std::to_string(k) + (format == "csv" ? ".csv" : ".jsonl");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.game.validate();
    ExperimentResult result;
    const auto starts = resolve_starts(config);
    const MetricSpace& space = *config.space;

    json header{{"name", config.name},
                {"space", io::to_json(space.descriptor())},
                {"config", io::to_json(config.game)},
                {"evader", config.evader.describe()},
                {"seed", config.seed}};
    const std::string config_hash = io::content_hash(header.dump());

    json games = json::array();
    bool all_captured = true;
    bool all_evaded = true;
    bool constant = true;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const auto& [lion0, man0] = starts[k];
        auto game = run_game(space, config.game, lion0, man0, config.evader,
                             config.seed + static_cast<std::uint64_t>(k));
        GameSummary s{lion0, man0, game.outcome, check_distance_monotone(game.trace, 1e-9), std::nullopt,
                      0.0, 0.0, trace_name(k, config.outputs.format)};
        const std::int64_t good_end = last_good_moment(game.trace);
        if (good_end >= 1) {
            s.good_curve = validate_good_curve(space, game.trace, 0.0,
                                               game.trace.moments[static_cast<std::size_t>(good_end)].tau, 1e-7);
        }
        s.min_moment_distance = std::numeric_limits<double>::infinity();
        for (const auto& m : game.trace.moments) {
            const double d = space.distance(m.lion, m.man);
            s.min_moment_distance = std::min(s.min_moment_distance, d);
            s.max_moment_distance = std::max(s.max_moment_distance, d);
        }
        all_captured = all_captured && is_captured(game.outcome);
        all_evaded = all_evaded && !is_captured(game.outcome);
        constant = constant && (s.max_moment_distance - s.min_moment_distance <= 1e-9);

        std::ostringstream trace_text;
        if (config.outputs.format == "csv") {
            io::write_trace_csv(trace_text, game.trace);
        } else {
            io::write_trace_jsonl(trace_text, game.trace);
        }
        const auto trace_path = config.outputs.dir / s.trace_file;
        io::write_file_atomic(trace_path, trace_text.str());

        json diag{{"trace", s.trace_file.string()},
                  {"config_hash", config_hash},
                  {"seed", game.trace.seed},
                  {"space_kind", to_string(space.kind())},
                  {"outcome", io::to_json(game.outcome)},
                  {"distance_monotone", io::to_json(s.monotone)},
                  {"min_moment_distance", s.min_moment_distance},
                  {"max_moment_distance", s.max_moment_distance}};
        diag["good_curve"] = s.good_curve ? io::to_json(*s.good_curve) : json(nullptr);
        auto diag_path = trace_path;
        diag_path += ".diag.json";
        io::write_file_atomic(diag_path, diag.dump(2) + "\n");

        games.push_back(json{{"start", {{"lion", io::to_json(lion0)}, {"man", io::to_json(man0)}}},
                             {"outcome", io::to_json(game.outcome)},
                             {"trace", s.trace_file.string()}});
        result.games.push_back(std::move(s));
    }

    if (config.expect) {
        switch (*config.expect) {
            case Expectation::Capture: result.expectation_met = all_captured; break;
            case Expectation::Escape:
                result.expectation_met = all_evaded && (!config.expect_constant_distance || constant);
                break;
            case Expectation::ViolationFound: result.expectation_met = false; break;
        }
    }
    result.exit_code = result.expectation_met ? 0 : 3;

    result.summary = header;
    result.summary["config_hash"] = config_hash;
    result.summary["games"] = games;
    result.summary["expect"] = config.expect ? json(to_string(*config.expect)) : json(nullptr);
    result.summary["expectation_met"] = result.expectation_met;
    if (space.kind() == SpaceKind::ChebyshevDisk) {
        // The l-infinity disk is not CAT(0): record the Ptolemy search alongside the games.
        const auto found = search_ptolemy_violation(space, 8, config.seed);
        json ptolemy{{"grid_resolution", 8}};
        if (found) {
            ptolemy["quadruple"] = {io::to_json(found->quadruple.a), io::to_json(found->quadruple.b),
                                    io::to_json(found->quadruple.c), io::to_json(found->quadruple.d)};
            ptolemy["margin"] = found->margin;
        } else {
            ptolemy["quadruple"] = nullptr;
        }
        Quadruple literal{space.make_point({0, 1}), space.make_point({1, 0}),
                          space.make_point({0, -1}), space.make_point({0, -1})};
        ptolemy["literal_quadruple_margin"] = check_ptolemy(space, literal);
        result.summary["ptolemy"] = ptolemy;
    }
    io::write_file_atomic(config.outputs.dir / "summary.json", result.summary.dump(2) + "\n");
    return result;
}

ExperimentResult run_preset(PresetId id, const Overrides& overrides) {
    auto config = make_preset(id);
    apply_overrides(config, overrides);
    return run_experiment(config);
}

}  // namespace lionman
