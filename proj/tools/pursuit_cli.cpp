// pursuit_cli: simulate / check / sweep / rounds.
//
// Exit codes: 0 success, 1 property violation, 2 invalid input,
// 3 unexpected outcome.

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lionman/diagnostics.hpp"
#include "lionman/errors.hpp"
#include "lionman/experiment.hpp"
#include "lionman/property_checkers.hpp"
#include "lionman/spaces.hpp"

using namespace lionman;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInvalid = 2;

struct CommonFlags {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "experiment config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--preset", f.preset, "preset id");
    cmd->add_option("--seed", f.seed, "RNG seed (falls back to PURSUIT_SEED)");
    cmd->add_option("--epsilon", f.epsilon, "step length");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--format", f.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("PURSUIT_SEED");
    if (!v || !*v) return std::nullopt;
    std::uint64_t seed = 0;
    const char* end = v + std::strlen(v);
    const auto [ptr, ec] = std::from_chars(v, end, seed);
    if (ec != std::errc() || ptr != end) throw ValidationError("PURSUIT_SEED is not an unsigned integer");
    return seed;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig load_experiment(const CommonFlags& f) {
    if (f.config.empty() == f.preset.empty()) {
        throw ValidationError("exactly one of --config or --preset is required");
    }
    ExperimentConfig config;
    if (!f.preset.empty()) {
        const auto id = parse_preset_id(f.preset);
        if (!id) throw ValidationError("unknown preset '" + f.preset + "'");
        config = make_preset(*id);
    } else {
        config = parse_config(slurp(f.config));
    }
    Overrides o;
    o.seed = f.seed ? f.seed : env_seed();
    o.epsilon = f.epsilon;
    if (f.out) o.out_dir = *f.out;
    o.format = f.format;
    apply_overrides(config, o);
    if (const auto diam = config.space->diameter_bound(); diam && config.game.epsilon >= *diam) {
        throw ValidationError("epsilon must be below the space diameter");
    }
    return config;
}

int run_simulate(const CommonFlags& f) {
    const auto config = load_experiment(f);
    const auto result = run_experiment(config);
    for (const auto& g : result.games) {
        std::cout << g.trace_file.string() << ": " << describe(g.outcome) << '\n';
    }
    std::cout << "summary: " << (config.outputs.dir / "summary.json").string() << '\n';
    if (!result.expectation_met) {
        std::cerr << "unexpected outcome for expectation "
                  << (config.expect ? to_string(*config.expect) : "none") << '\n';
    }
    return result.exit_code;
}

struct CheckFlags {
    std::string space = "disk";
    double radius = 1.0;
    double circumference = 1.0;
    int tie_break = 1;
    std::string edges_file;
    std::string property = "all";
    std::size_t samples = 10000;
    double tol = 1e-7;
    int resolution = 8;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

SpacePtr space_from_flags(const CheckFlags& f) {
    const auto kind = parse_space_kind(f.space);
    if (!kind) throw ValidationError("unknown space kind '" + f.space + "'");
    switch (*kind) {
        case SpaceKind::Plane: return make_space(SpaceDescriptor::plane());
        case SpaceKind::Disk: return make_space(SpaceDescriptor::disk(f.radius));
        case SpaceKind::ChebyshevDisk: return make_space(SpaceDescriptor::chebyshev_disk(f.radius));
        case SpaceKind::Circle: return make_space(SpaceDescriptor::circle(f.circumference, f.tie_break));
        case SpaceKind::Tree: {
            if (f.edges_file.empty()) return make_space(SpaceDescriptor::tree(preset_tree_edges()));
            std::ifstream in(f.edges_file);
            if (!in) throw ValidationError("cannot open " + f.edges_file);
            return make_space(SpaceDescriptor::tree(parse_tree_edges(in)));
        }
    }
    throw ValidationError("unknown space kind");
}

PropertyReport ptolemy_report(const MetricSpace& space, int resolution, std::uint64_t seed) {
    PropertyReport r;
    r.property = "ptolemy";
    r.space = space.descriptor().canonical();
    r.tolerance = 1e-9;
    const auto found = search_ptolemy_violation(space, resolution, seed);
    r.metadata["grid_resolution"] = std::to_string(resolution);
    if (found) {
        r.samples = r.applicable = found->evaluated;
        const auto& q = found->quadruple;
        r.record(Witness{{q.a, q.b, q.c, q.d}, {}, found->margin});
    }
    if (space.kind() == SpaceKind::ChebyshevDisk) {
        const Quadruple literal{space.make_point({0, 1}), space.make_point({1, 0}),
                                space.make_point({0, -1}), space.make_point({0, -1})};
        const Quadruple corrected{space.make_point({0, 1}), space.make_point({1, 0}),
                                  space.make_point({0, -1}), space.make_point({-1, 0})};
        r.metadata["literal_quadruple_margin"] = io::format_number(check_ptolemy(space, literal));
        r.metadata["corrected_quadruple_margin"] = io::format_number(check_ptolemy(space, corrected));
    }
    return r;
}

int run_check(const CheckFlags& f) {
    const auto space = space_from_flags(f);
    std::uint64_t seed = 0;
    if (f.seed) seed = *f.seed;
    else if (const auto e = env_seed()) seed = *e;
    if (f.samples == 0) throw ValidationError("--samples must be positive");

    std::vector<PropertyReport> reports;
    const bool all = f.property == "all";
    if (all || f.property == "betweenness") reports.push_back(check_betweenness(*space, f.samples, f.tol, seed));
    if (all || f.property == "transitivity") {
        reports.push_back(check_between_transitivity(*space, f.samples, f.tol, seed));
    }
    if (all || f.property == "ptolemy") reports.push_back(ptolemy_report(*space, f.resolution, seed));
    if (all || f.property == "convexity") reports.push_back(check_metric_convexity(*space, f.samples, f.tol, seed));

    json doc = json::array();
    bool violated = false;
    for (const auto& r : reports) {
        doc.push_back(io::to_json(r));
        violated = violated || !r.passed();
    }
    const std::string text = (reports.size() == 1 ? doc[0] : doc).dump(2) + "\n";
    if (f.out) {
        io::write_file_atomic(std::filesystem::path(*f.out) / ("check_" + f.property + ".json"), text);
    }
    std::cout << text;
    return violated ? kViolation : kOk;
}

struct SweepFlags {
    CommonFlags common;
    std::vector<double> epsilons;
    int trials = 5;
};

int run_sweep(const SweepFlags& f) {
    auto config = load_experiment(f.common);
    auto epsilons = f.epsilons.empty() ? std::vector<double>{config.game.epsilon} : f.epsilons;
    for (double e : epsilons) {
        if (!(e > 0.0)) throw ValidationError("epsilon must be positive");
        if (const auto diam = config.space->diameter_bound(); diam && e >= *diam) {
            throw ValidationError("epsilon must be below the space diameter");
        }
    }
    if (f.trials < 1) throw ValidationError("--trials must be positive");
    std::optional<std::int64_t> horizon;
    if (!config.space->compact()) horizon = config.game.horizon_steps;
    const auto rows = sweep_capture_time(*config.space, epsilons, {config.evader}, f.trials, config.seed, horizon);

    std::ostringstream text;
    const bool csv = config.outputs.format != "jsonl" || !f.common.format;
    if (csv) io::write_sweep_csv(text, rows);
    else io::write_sweep_jsonl(text, rows);
    if (f.common.out) {
        io::write_file_atomic(std::filesystem::path(*f.common.out) / (csv ? "sweep.csv" : "sweep.jsonl"),
                              text.str());
    }
    std::cout << text.str();
    return kOk;
}

struct RoundsFlags {
    std::string trace;
    std::optional<double> radius;
    std::optional<std::string> out;
};

int run_rounds(const RoundsFlags& f) {
    std::ifstream in(f.trace);
    if (!in) throw ValidationError("cannot open " + f.trace);
    const auto loaded = io::read_trace_jsonl(in);
    const double eps = loaded.trace.config.epsilon;
    const double radius = f.radius.value_or(eps / 3.0);
    if (!(radius > 0.0)) throw ValidationError("--radius must be positive");
    const auto& moments = loaded.trace.moments;
    const auto center = most_revisited_center(*loaded.space, moments, radius);
    const auto rounds = detect_rounds(*loaded.space, moments, center, radius, eps);
    json doc{{"trace", f.trace},
             {"seed", loaded.trace.seed},
             {"epsilon", eps},
             {"radius", radius},
             {"center", {io::to_json(center.first), io::to_json(center.second)}},
             {"rounds", io::to_json(rounds)}};
    const std::string text = doc.dump(2) + "\n";
    if (f.out) io::write_file_atomic(std::filesystem::path(*f.out) / "rounds.json", text);
    std::cout << text;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time lion and man pursuit on geodesic metric spaces"};
    app.require_subcommand(1);

    CommonFlags sim;
    auto* simulate = app.add_subcommand("simulate", "run the games of a config or preset");
    add_common(simulate, sim);

    CheckFlags chk;
    auto* check = app.add_subcommand("check", "run property checkers on a space");
    check->add_option("--space", chk.space, "plane, disk, chebyshev-disk, circle or tree");
    check->add_option("--radius", chk.radius, "disk radius");
    check->add_option("--circumference", chk.circumference, "circle circumference");
    check->add_option("--tie-break", chk.tie_break, "circle antipodal orientation (+1 or -1)");
    check->add_option("--edges", chk.edges_file, "tree edge list file ('u v length' per line)");
    check->add_option("--property", chk.property, "property to check")
        ->check(CLI::IsMember({"all", "betweenness", "transitivity", "ptolemy", "convexity"}));
    check->add_option("--samples", chk.samples, "random samples per property");
    check->add_option("--tol", chk.tol, "tolerance");
    check->add_option("--resolution", chk.resolution, "Ptolemy grid resolution");
    check->add_option("--seed", chk.seed, "RNG seed (falls back to PURSUIT_SEED)");
    check->add_option("--out", chk.out, "directory for the JSON report");

    SweepFlags swp;
    auto* sweep = app.add_subcommand("sweep", "capture-time grid over epsilons and trials");
    add_common(sweep, swp.common);
    sweep->add_option("--epsilons", swp.epsilons, "comma-separated step lengths")->delimiter(',');
    sweep->add_option("--trials", swp.trials, "seeded starts per epsilon");

    RoundsFlags rnd;
    auto* rounds = app.add_subcommand("rounds", "detect rounds in a stored JSONL trace");
    rounds->add_option("--trace", rnd.trace, "trace file")->required();
    rounds->add_option("--radius", rnd.radius, "ball radius (default epsilon/3)");
    rounds->add_option("--out", rnd.out, "directory for rounds.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*simulate) return run_simulate(sim);
        if (*check) return run_check(chk);
        if (*sweep) return run_sweep(swp);
        if (*rounds) return run_rounds(rnd);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& d : e.details()) std::cerr << "  " << d << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
