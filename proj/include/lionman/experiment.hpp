#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lionman/io.hpp"
#include "lionman/pursuit.hpp"

namespace lionman {

inline constexpr const char* kConfigSchema = "lionman.experiment/1";

enum class Expectation { Capture, Escape, ViolationFound };
std::string to_string(Expectation e);

struct StartSpec {
    std::vector<std::pair<Point, Point>> pairs;  // explicit (lion, man) starts
    int random_count = 0;                        // additional seeded starts
};

struct OutputSpec {
    std::filesystem::path dir = "out";
    std::string format = "jsonl";
};

struct ExperimentConfig {
    std::string name = "experiment";
    SpacePtr space;
    GameConfig game;
    EvaderStrategy evader;
    StartSpec starts;
    std::uint64_t seed = 0;
    std::optional<Expectation> expect;
    /// Escape runs must also keep the moment distance within 1e-9 of its start.
    bool expect_constant_distance = false;
    OutputSpec outputs;
};

/// Parses and validates a JSON experiment document. Throws ValidationError
/// whose details() lists every problem as "<json path>: <message>".
ExperimentConfig parse_config(const std::string& text);

enum class PresetId { Example1Plane, Example2Disk, Example3Chebyshev, CircleCounterexample, TreeCat0 };

std::string to_string(PresetId id);
std::optional<PresetId> parse_preset_id(const std::string& name);
std::vector<PresetId> all_presets();

/// The 10-edge tree used by the tree preset.
std::vector<TreeEdge> preset_tree_edges();

ExperimentConfig make_preset(PresetId id);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::string> format;
};

/// Applies overrides; a new epsilon recomputes the default horizon on compact
/// spaces.
void apply_overrides(ExperimentConfig& config, const Overrides& overrides);

/// Explicit pairs followed by seeded random pairs with d > epsilon.
std::vector<std::pair<Point, Point>> resolve_starts(const ExperimentConfig& config);

struct GameSummary {
    Point lion0;
    Point man0;
    Outcome outcome;
    MonotoneReport monotone;
    std::optional<GoodCurveReport> good_curve;
    double min_moment_distance = 0.0;
    double max_moment_distance = 0.0;
    std::filesystem::path trace_file;
};

struct ExperimentResult {
    std::vector<GameSummary> games;
    io::json summary;
    bool expectation_met = true;
    int exit_code = 0;  // 0 expected outcome observed, 3 otherwise
};

/// Runs every start, writes trace, diagnostics sidecar and summary.json into
/// config.outputs.dir, and evaluates the expectation.
ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_preset(PresetId id, const Overrides& overrides);

/// Waypoints for the scripted runner: a loop (disk carriers: circle of radius
/// 0.9 r; tree: repeated leaf-to-leaf tour; circle: forward arc) sampled at
/// spacing `epsilon`, `laps` times over.
std::vector<Point> runner_waypoints(const MetricSpace& space, double epsilon, int laps);

}  // namespace lionman
