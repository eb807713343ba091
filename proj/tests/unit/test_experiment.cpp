#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lionman/diagnostics.hpp"
#include "lionman/errors.hpp"
#include "lionman/experiment.hpp"
#include "lionman/spaces.hpp"

using namespace lionman;
namespace fs = std::filesystem;

namespace {

const char* kMinimalDisk = R"({
  "schema": "lionman.experiment/1",
  "space": {"kind": "disk", "radius": 1},
  "game": {"epsilon": 0.1},
  "evader": {"kind": "greedy_max_distance", "k": 16},
  "starts": {"pairs": [{"lion": [-0.5, 0], "man": [0.5, 0]}], "random": 2},
  "seed": 7,
  "expect": "capture"
})";

std::vector<std::string> errors_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ValidationError& e) {
        return e.details();
    }
    return {};
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
    for (const auto& e : errors) {
        if (e.find(needle) != std::string::npos) return true;
    }
    return false;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    text.replace(text.find(from), from.size(), to);
    return text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("lionman_unit_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("parse_config happy path") {
    auto c = parse_config(kMinimalDisk);
    CHECK(c.space->kind() == SpaceKind::Disk);
    CHECK(c.game.epsilon == 0.1);
    CHECK(c.game.horizon_steps == default_horizon(*c.space, 0.1));
    CHECK(c.evader.kind == EvaderKind::GreedyMaxDistance);
    CHECK(c.evader.k == 16);
    CHECK(c.seed == 7);
    CHECK(resolve_starts(c).size() == 3);
    CHECK(c.expect == Expectation::Capture);
}

TEST_CASE("parse_config errors carry paths") {
    CHECK(mentions(errors_of(replace(kMinimalDisk, "\"epsilon\": 0.1", "\"epsilon\": 0")),
                   "/game/epsilon: epsilon must be positive"));
    CHECK(mentions(errors_of(replace(kMinimalDisk, "\"seed\": 7", "\"seed\": 7, \"colour\": 1")), "/colour: unknown key"));
    CHECK(mentions(errors_of(replace(kMinimalDisk, "\"radius\": 1", "\"radius\": \"one\"")), "/space/radius"));
    CHECK(mentions(errors_of(replace(kMinimalDisk, "\"epsilon\": 0.1", "\"epsilon\": 2.5")), "below the space diameter"));
    CHECK(mentions(errors_of(replace(kMinimalDisk, "\"schema\": \"lionman.experiment/1\"", "\"schema\": \"v0\"")), "/schema"));
    CHECK(mentions(errors_of(replace(kMinimalDisk, "[0.5, 0]", "[1.5, 0]")), "/starts/pairs/0"));
    CHECK(mentions(errors_of(replace(kMinimalDisk, "\"greedy_max_distance\"", "\"teleport\"")), "/evader/kind"));
    CHECK(mentions(errors_of("{"), "/"));

    const std::string cyclic = replace(kMinimalDisk, R"({"kind": "disk", "radius": 1})",
                                       R"({"kind": "tree", "edges": [["a","b",1],["b","c",1],["c","a",1]]})");
    auto errors = errors_of(cyclic);
    CHECK(mentions(errors, "/space: "));
    CHECK(mentions(errors, "cycle"));
}

TEST_CASE("presets") {
    for (auto id : all_presets()) {
        CHECK(parse_preset_id(to_string(id)) == id);
        auto c = make_preset(id);
        CHECK(c.space);
        CHECK(c.expect);
        CHECK_FALSE(resolve_starts(c).empty());
        c.game.validate();
    }
    CHECK_FALSE(parse_preset_id("example4"));
    CHECK(make_preset(PresetId::Example2Disk).game.epsilon == 0.1);
    CHECK(preset_tree_edges().size() == 10);
}

TEST_CASE("trace jsonl round trip") {
    auto tree = make_space(SpaceDescriptor::tree(preset_tree_edges()));
    auto [l, m] = seeded_start(*tree, 0.1, 1, 0);
    auto game = run_game(*tree, make_game_config(*tree, 0.1), l, m, EvaderStrategy::greedy(8), 3);
    std::stringstream text;
    io::write_trace_jsonl(text, game.trace);
    auto loaded = io::read_trace_jsonl(text);
    CHECK(loaded.space->descriptor().canonical() == tree->descriptor().canonical());
    REQUIRE(loaded.trace.samples.size() == game.trace.samples.size());
    REQUIRE(loaded.trace.moments.size() == game.trace.moments.size());
    CHECK(loaded.trace.seed == 3);
    for (std::size_t k = 0; k < game.trace.samples.size(); ++k) {
        REQUIRE(loaded.trace.samples[k].t == game.trace.samples[k].t);
        REQUIRE(loaded.trace.samples[k].d == game.trace.samples[k].d);
        REQUIRE(loaded.trace.samples[k].lion.coords()[1] == game.trace.samples[k].lion.coords()[1]);
    }
    std::stringstream again;
    io::write_trace_jsonl(again, loaded.trace);
    CHECK(again.str() == text.str());
}

TEST_CASE("content hash") {
    CHECK(io::content_hash("abc") == io::content_hash("abc"));
    CHECK(io::content_hash("abc") != io::content_hash("abd"));
    CHECK(io::content_hash("").size() == 16);
}

TEST_CASE("run_preset writes reproducible artifacts") {
    const auto a = scratch("a");
    const auto b = scratch("b");
    Overrides oa;
    oa.out_dir = a;
    Overrides ob;
    ob.out_dir = b;
    auto ra = run_preset(PresetId::CircleCounterexample, oa);
    auto rb = run_preset(PresetId::CircleCounterexample, ob);
    CHECK(ra.exit_code == 0);
    CHECK(rb.exit_code == 0);
    for (const char* name : {"trace_0.jsonl", "trace_0.jsonl.diag.json", "summary.json"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(a / name));
        CHECK(slurp(a / name) == slurp(b / name));
    }
    const auto header = slurp(a / "trace_0.jsonl").substr(0, 400);
    CHECK(header.find("config_hash") != std::string::npos);
    CHECK(header.find("\"seed\"") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("unexpected outcome gives exit 3") {
    auto c = make_preset(PresetId::CircleCounterexample);
    c.expect = Expectation::Capture;
    c.outputs.dir = scratch("unexpected");
    CHECK(run_experiment(c).exit_code == 3);
    fs::remove_all(c.outputs.dir);
}

TEST_CASE("runner waypoints are spaced by at most epsilon") {
    for (auto d : {SpaceDescriptor::disk(1.0), SpaceDescriptor::chebyshev_disk(1.0),
                   SpaceDescriptor::tree(preset_tree_edges()), SpaceDescriptor::circle(1.0)}) {
        auto space = make_space(d);
        auto w = runner_waypoints(*space, 0.05, 2);
        REQUIRE(w.size() > 10);
        for (std::size_t k = 1; k < w.size(); ++k) REQUIRE(space->distance(w[k - 1], w[k]) <= 0.05 + 1e-12);
    }
}
