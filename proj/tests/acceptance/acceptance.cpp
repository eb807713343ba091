// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lionman/diagnostics.hpp"
#include "lionman/experiment.hpp"
#include "lionman/property_checkers.hpp"
#include "lionman/spaces.hpp"
#include "oracles.hpp"

using namespace lionman;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 2024;

struct Line {
    int id;
    bool pass;
    std::string detail;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& detail) {
    lines.push_back({id, pass, detail});
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string trace_text(const Trace& t) {
    std::ostringstream out;
    io::write_trace_jsonl(out, t);
    return out.str();
}

// One game of the capture grid.
struct GridGame {
    std::string space;
    double epsilon;
    std::string evader;
    int trial;
    bool captured;
    Trace trace;
};

std::vector<EvaderStrategy> evaders_for(const MetricSpace& space, double eps) {
    auto w = runner_waypoints(space, eps, 1);
    const auto horizon = static_cast<std::size_t>(default_horizon(space, eps));
    const int laps = static_cast<int>(horizon / w.size()) + 2;
    return {EvaderStrategy::stationary(), EvaderStrategy::greedy(32), EvaderStrategy::radial_flee(),
            EvaderStrategy::scripted(runner_waypoints(space, eps, laps))};
}

std::vector<SpacePtr> capture_spaces() {
    return {make_space(SpaceDescriptor::disk(1.0)), make_space(SpaceDescriptor::chebyshev_disk(1.0)),
            make_space(SpaceDescriptor::tree(preset_tree_edges()))};
}

std::vector<GridGame> run_grid() {
    std::vector<GridGame> out;
    for (const auto& space : capture_spaces()) {
        for (double eps : {0.2, 0.1, 0.05}) {
            const auto config = make_game_config(*space, eps);
            for (const auto& evader : evaders_for(*space, eps)) {
                for (int trial = 0; trial < 5; ++trial) {
                    auto [l, m] = seeded_start(*space, eps, kSeed, trial);
                    auto game = run_game(*space, config, l, m, evader, kSeed + static_cast<std::uint64_t>(trial));
                    out.push_back({to_string(space->kind()), eps, to_string(evader.kind), trial,
                                   is_captured(game.outcome), std::move(game.trace)});
                }
            }
        }
    }
    return out;
}

GameResult circle_runner_game(std::int64_t horizon) {
    CircleSpace circle(1.0, +1);
    auto config = make_game_config(circle, 0.05);
    config.horizon_steps = horizon;
    return run_game(circle, config, circle.at(0.0), circle.at(0.4), EvaderStrategy::circle_runner(0), kSeed);
}

GameResult colinear_chase(const MetricSpace& disk) {
    std::vector<Point> waypoints;
    for (int k = 1; k <= 4; ++k) waypoints.push_back(disk.make_point({-0.4 + 0.1 * k, 0}));
    GameConfig config;
    config.epsilon = 0.1;
    config.horizon_steps = 4;
    return run_game(disk, config, disk.make_point({-0.9, 0}), disk.make_point({-0.4, 0}),
                    EvaderStrategy::scripted(waypoints), kSeed);
}

// Report files from criteria 3, 5 and 9, as written to disk.
std::map<std::string, std::string> report_files() {
    std::map<std::string, std::string> files;
    CircleSpace circle(1.0, +1);
    files["circle_betweenness.json"] = io::to_json(check_betweenness(circle, 10000, 1e-7, kSeed)).dump(2);

    auto cheb = make_space(SpaceDescriptor::chebyshev_disk(1.0));
    files["chebyshev_convexity.json"] = io::to_json(check_metric_convexity(*cheb, 10000, 1e-7, kSeed)).dump(2);
    auto found = search_ptolemy_violation(*cheb, 8, kSeed);
    io::json p{{"margin", found ? io::json(found->margin) : io::json(nullptr)}};
    if (found) {
        p["quadruple"] = {io::to_json(found->quadruple.a), io::to_json(found->quadruple.b),
                          io::to_json(found->quadruple.c), io::to_json(found->quadruple.d)};
    }
    files["chebyshev_ptolemy.json"] = p.dump(2);

    auto run = circle_runner_game(199);
    const double r = 0.05 / 3.0;
    auto center = most_revisited_center(circle, run.trace.moments, r);
    files["circle_rounds.json"] = io::to_json(detect_rounds(circle, run.trace.moments, center, r, 0.05)).dump(2);
    files["circle_runner.jsonl"] = trace_text(run.trace);
    return files;
}

void write_all(const fs::path& dir, const std::map<std::string, std::string>& files) {
    for (const auto& [name, text] : files) io::write_file_atomic(dir / name, text);
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
    fs::remove_all(out);

    // 1. Capture on the disk, the Chebyshev disk and the tree.
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = run_grid();
    const double grid_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t captured = 0;
    std::string first_miss;
    for (const auto& g : grid) {
        if (g.captured) ++captured;
        else if (first_miss.empty()) first_miss = g.space + " eps=" + fmt(g.epsilon) + " " + g.evader + " trial " + std::to_string(g.trial);
    }
    report(1, captured == grid.size() && grid.size() == 180 && grid_seconds < 60.0,
           std::to_string(captured) + "/" + std::to_string(grid.size()) + " captured in " + fmt(grid_seconds) + " s" +
               (first_miss.empty() ? "" : "; first evasion: " + first_miss));

    // 2. Chebyshev rows capture and the Chebyshev metric is convex along canonical geodesics.
    {
        std::size_t rows = 0, ok = 0;
        for (const auto& g : grid) {
            if (g.space != "chebyshev_disk") continue;
            ++rows;
            ok += g.captured ? 1 : 0;
        }
        auto cheb = make_space(SpaceDescriptor::chebyshev_disk(1.0));
        auto conv = check_metric_convexity(*cheb, 10000, 1e-7, kSeed);
        report(2, rows == 60 && ok == rows && conv.violation_count == 0 && conv.samples >= 10000,
               std::to_string(ok) + "/" + std::to_string(rows) + " Chebyshev captures; convexity violations " +
                   std::to_string(conv.violation_count) + " over " + std::to_string(conv.samples) + " samples");
    }

    // 3. Circle: runner evades with constant distance; betweenness witness.
    {
        auto run = circle_runner_game(10000);
        CircleSpace circle(1.0, +1);
        double spread = 0.0;
        for (const auto& m : run.trace.moments) {
            spread = std::max(spread, std::fabs(oracle::arc(m.lion[0], m.man[0], 1.0) - 0.4));
        }
        const bool evaded = !is_captured(run.outcome) && run.trace.moments.size() == 10001;

        auto r = check_betweenness(circle, 10000, 1e-7, kSeed);
        const double angles[4] = {0.0, 0.25, 0.5, 0.75};
        const double ab = oracle::arc(angles[0], angles[1], 1), bd = oracle::arc(angles[1], angles[3], 1);
        const double ac = oracle::arc(angles[0], angles[2], 1), cd = oracle::arc(angles[2], angles[3], 1);
        const double ad = oracle::arc(angles[0], angles[3], 1);
        const double expected = -std::max(std::fabs(ab + bd - ad), std::fabs(ac + cd - ad));
        bool found = false;
        double margin = 0.0;
        for (const auto& w : r.violations) {
            if (w.points.size() == 4 && w.points[0][0] == 0.0 && w.points[1][0] == 0.25 && w.points[2][0] == 0.5 &&
                w.points[3][0] == 0.75) {
                found = true;
                margin = w.margin;
            }
        }
        const bool margin_ok = found && std::fabs(margin - expected) <= 1e-12;
        report(3, evaded && spread <= 1e-9 && margin_ok,
               std::string(evaded ? "evaded 10^4 steps" : "NOT evaded") + ", moment distance spread " + fmt(spread) +
                   "; quadruple (0,.25,.5,.75) " + (found ? "found" : "missing") + " margin " + fmt(margin) +
                   " vs oracle " + fmt(expected));
    }

    // 4. Plane, radial flee: distance never decreases at moments.
    {
        auto plane = make_space(SpaceDescriptor::plane());
        GameConfig config;
        config.epsilon = 0.1;
        config.horizon_steps = 1000;
        std::vector<std::pair<Point, Point>> starts{{plane->make_point({0, 0}), plane->make_point({1, 0})}};
        for (int k = 0; k < 4; ++k) starts.push_back(seeded_start(*plane, 0.1, kSeed, k));
        bool ok = true;
        double worst_drop = 0.0;
        for (const auto& [l, m] : starts) {
            auto run = run_game(*plane, config, l, m, EvaderStrategy::radial_flee(), kSeed);
            ok = ok && !is_captured(run.outcome) && run.trace.moments.size() == 1001;
            for (std::size_t i = 0; i + 1 < run.trace.moments.size(); ++i) {
                const auto& a = run.trace.moments[i];
                const auto& b = run.trace.moments[i + 1];
                const double da = oracle::euclid(a.lion[0], a.lion[1], a.man[0], a.man[1]);
                const double db = oracle::euclid(b.lion[0], b.lion[1], b.man[0], b.man[1]);
                worst_drop = std::max(worst_drop, da - db);
            }
        }
        report(4, ok && worst_drop <= 1e-9,
               std::string(ok ? "all 5 starts evaded 10^3 steps" : "a start was captured") + ", worst moment drop " +
                   fmt(worst_drop));
    }

    // 5. Ptolemy on the Chebyshev disk.
    {
        auto cheb = make_space(SpaceDescriptor::chebyshev_disk(1.0));
        auto p = [&](double x, double y) { return cheb->make_point({x, y}); };
        auto found = search_ptolemy_violation(*cheb, 8, kSeed);
        double replay = 0.0;
        if (found) {
            const auto& q = found->quadruple;
            auto d = [](const Point& a, const Point& b) { return oracle::chebyshev(a[0], a[1], b[0], b[1]); };
            replay = oracle::ptolemy(d(q.a, q.b), d(q.c, q.d), d(q.a, q.d), d(q.b, q.c), d(q.a, q.c), d(q.b, q.d));
        }
        const double derived = check_ptolemy(*cheb, {p(0, 1), p(1, 0), p(0, -1), p(-1, 0)});
        const double literal = check_ptolemy(*cheb, {p(0, 1), p(1, 0), p(0, -1), p(0, -1)});
        const bool ok = found && found->margin <= -1.0 && std::fabs(replay - found->margin) <= 1e-12 &&
                        derived == -2.0 && literal == 0.0;
        report(5, ok,
               "search margin " + (found ? fmt(found->margin) : std::string("none")) + " (oracle replay " + fmt(replay) +
                   "); derived witness " + fmt(derived) + "; literal quadruple " + fmt(literal));
    }

    // 6 and 7. Monotone distance and good curves on every capture trace.
    {
        double worst = -1.0;
        std::size_t checked = 0, good = 0;
        for (const auto& g : grid) {
            if (!g.captured) continue;
            auto m = check_distance_monotone(g.trace, 1e-9);
            if (m.worst_index) worst = std::max(worst, m.worst_increase);
        }
        report(6, captured > 0 && worst <= 1e-9, "max d(tau_{i+1}) - d(tau_i) over " + std::to_string(captured) +
                                                    " captures: " + fmt(worst));

        auto space_of = [](const std::string& kind) {
            for (const auto& s : capture_spaces()) {
                if (to_string(s->kind()) == kind) return s;
            }
            return SpacePtr{};
        };
        std::map<std::string, SpacePtr> spaces;
        for (const auto& g : grid) {
            if (!spaces.count(g.space)) spaces[g.space] = space_of(g.space);
            const auto last = last_good_moment(g.trace);
            if (last < 1) continue;
            ++checked;
            auto rep = validate_good_curve(*spaces[g.space], g.trace, 0.0,
                                           g.trace.moments[static_cast<std::size_t>(last)].tau, 1e-7);
            good += rep.pass() ? 1 : 0;
        }

        // Negative controls on a disk greedy trace.
        auto disk = make_space(SpaceDescriptor::disk(1.0));
        auto game = run_game(*disk, make_game_config(*disk, 0.1), disk->make_point({-0.6, 0}),
                             disk->make_point({0.6, 0.1}), EvaderStrategy::greedy(32), kSeed);
        const double tau_b = game.trace.moments[5].tau;
        auto aim_forged = game.trace;
        {
            auto& m1 = aim_forged.moments[1];
            const auto& m0 = aim_forged.moments[0];
            const double dx = m0.man[0] - m0.lion[0], dy = m0.man[1] - m0.lion[1];
            const double n = std::hypot(dx, dy);
            m1.lion = disk->make_point({m1.lion[0] - 0.01 * dy / n, m1.lion[1] + 0.01 * dx / n});
        }
        auto sep_forged = game.trace;
        {
            auto& m3 = sep_forged.moments[3];
            m3.man = disk->make_point({m3.lion[0] + 0.05, m3.lion[1]});
        }
        const auto aim_rep = validate_good_curve(*disk, aim_forged, 0.0, tau_b, 1e-7);
        const auto sep_rep = validate_good_curve(*disk, sep_forged, 0.0, tau_b, 1e-7);
        const bool controls = !aim_rep.aim.pass && !sep_rep.separation.pass &&
                              validate_good_curve(*disk, game.trace, 0.0, tau_b, 1e-7).pass();
        report(7, checked > 0 && good == checked && controls,
               std::to_string(good) + "/" + std::to_string(checked) + " pre-capture traces pass; forged aim " +
                   (aim_rep.aim.pass ? "passed" : "fails item 2") + ", forged separation " +
                   (sep_rep.separation.pass ? "passed" : "fails item 4"));
    }

    // 8. Constant-distance equivalence.
    {
        auto disk = make_space(SpaceDescriptor::disk(1.0));
        auto chase = colinear_chase(*disk);
        bool all_true = chase.trace.moments.size() == 5;
        for (std::int64_t i = 0; all_true && i < 4; ++i) {
            auto c = classify_constant_step(*disk, chase.trace, i, 1e-7);
            all_true = c.stmt1 && c.stmt2 && c.stmt3;
        }
        const auto& l0 = chase.trace.moments.front().lion;
        const auto& l4 = chase.trace.moments.back().lion;
        auto geo = check_lion_geodesic(*disk, chase.trace, 0, 4, 1e-9);
        const double oracle_d = oracle::euclid(l0[0], l0[1], l4[0], l4[1]);
        auto still = run_game(*disk, make_game_config(*disk, 0.1), disk->make_point({-0.5, 0}),
                              disk->make_point({0.5, 0}), EvaderStrategy::stationary(), kSeed);
        auto s = classify_constant_step(*disk, still.trace, 0, 1e-7);
        const bool all_false = !s.stmt1 && !s.stmt2 && !s.stmt3;
        report(8, all_true && geo.is_geodesic && std::fabs(oracle_d - 0.4) <= 1e-9 && all_false,
               std::string("colinear chase flags ") + (all_true ? "all true" : "NOT all true") +
                   ", d(L0,L4) = " + fmt(oracle_d) + "; stationary step 0 flags " +
                   (all_false ? "all false" : "NOT all false"));
    }

    // 9. Rounds on a 200-moment circle runner trace.
    {
        auto run = circle_runner_game(199);
        CircleSpace circle(1.0, +1);
        const double eps = 0.05;
        const double radius = eps / 3.0;
        const auto& moments = run.trace.moments;
        auto center = most_revisited_center(circle, moments, radius);
        auto rounds = detect_rounds(circle, moments, center, radius, eps);
        // Direct scan with the arc oracle.
        std::vector<bool> inside;
        for (const auto& m : moments) {
            const double r = std::max(oracle::arc(m.lion[0], center.first[0], 1.0),
                                      oracle::arc(m.man[0], center.second[0], 1.0));
            inside.push_back(r <= radius);
        }
        bool consecutive = false;
        for (std::size_t k = 0; k + 1 < inside.size(); ++k) consecutive = consecutive || (inside[k] && inside[k + 1]);
        bool spans = true;
        bool interior_clear = true;
        for (const auto& r : rounds) {
            spans = spans && r.j - r.i > 1 && inside[static_cast<std::size_t>(r.i)] && inside[static_cast<std::size_t>(r.j)];
            for (auto k = r.i + 1; k < r.j; ++k) interior_clear = interior_clear && !inside[static_cast<std::size_t>(k)];
        }
        report(9, moments.size() == 200 && rounds.size() >= 3 && spans && interior_clear && !consecutive,
               std::to_string(rounds.size()) + " rounds over " + std::to_string(moments.size()) + " moments; " +
                   (consecutive ? "consecutive moments in ball" : "no consecutive moments in ball"));
    }

    // 10. Reproducibility: rerun and compare bytes.
    {
        const auto first = report_files();
        write_all(out / "run1", first);
        const auto second = report_files();
        write_all(out / "run2", second);
        std::size_t same = 0;
        for (const auto& [name, text] : first) {
            std::ifstream a(out / "run1" / name, std::ios::binary), b(out / "run2" / name, std::ios::binary);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            same += (sa.str() == sb.str() && sa.str() == second.at(name)) ? 1 : 0;
        }
        // Capture-grid traces: a second full run must serialize identically.
        const auto again = run_grid();
        std::size_t traces_same = 0;
        for (std::size_t k = 0; k < grid.size() && k < again.size(); ++k) {
            traces_same += trace_text(grid[k].trace) == trace_text(again[k].trace) ? 1 : 0;
        }
        // Preset artifacts.
        std::size_t preset_files = 0, preset_same = 0;
        for (auto id : all_presets()) {
            for (const char* run : {"a", "b"}) {
                Overrides o;
                o.out_dir = out / "presets" / run / to_string(id);
                run_preset(id, o);
            }
            for (const auto& entry : fs::directory_iterator(out / "presets" / "a" / to_string(id))) {
                ++preset_files;
                std::ifstream a(entry.path(), std::ios::binary);
                std::ifstream b(out / "presets" / "b" / to_string(id) / entry.path().filename(), std::ios::binary);
                std::ostringstream sa, sb;
                sa << a.rdbuf();
                sb << b.rdbuf();
                preset_same += sa.str() == sb.str() ? 1 : 0;
            }
        }
        report(10, same == first.size() && traces_same == grid.size() && preset_same == preset_files,
               std::to_string(same) + "/" + std::to_string(first.size()) + " report files, " +
                   std::to_string(traces_same) + "/" + std::to_string(grid.size()) + " grid traces, " +
                   std::to_string(preset_same) + "/" + std::to_string(preset_files) + " preset artifacts identical");
    }

    std::size_t passed = 0;
    for (const auto& l : lines) passed += l.pass ? 1 : 0;
    std::printf("acceptance: %zu/%zu criteria passed\n", passed, lines.size());
    return passed == lines.size() ? 0 : 1;
}
