#include "lionman/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lionman/errors.hpp"
#include "lionman/spaces.hpp"

namespace lionman::io {

std::string format_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

json to_json(const Point& p) {
    json out = json::array();
    for (double c : p.coords()) out.push_back(c);
    return out;
}

Point point_from_json(const MetricSpace& space, const json& j) {
    if (!j.is_array()) throw ValidationError("point must be an array of numbers");
    std::vector<double> coords;
    for (const auto& c : j) {
        if (!c.is_number()) throw ValidationError("point coordinates must be numbers");
        coords.push_back(c.get<double>());
    }
    if (coords.size() > Point::kMaxDim) throw ValidationError("point has too many coordinates");
    return space.make_point(std::span<const double>(coords));
}

json to_json(const SpaceDescriptor& d) {
    json out;
    out["kind"] = to_string(d.kind);
    for (const auto& [name, value] : d.parameters) out[name] = value;
    if (d.kind == SpaceKind::Tree) {
        json edges = json::array();
        for (const auto& e : d.edges) edges.push_back(json::array({e.u, e.v, e.length}));
        out["edges"] = edges;
    }
    return out;
}

SpaceDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ValidationError("space needs a string 'kind'");
    }
    const auto kind = parse_space_kind(j["kind"].get<std::string>());
    if (!kind) throw ValidationError("unknown space kind '" + j["kind"].get<std::string>() + "'");
    SpaceDescriptor d;
    d.kind = *kind;
    for (const auto& [key, value] : j.items()) {
        if (key == "kind") continue;
        if (key == "edges") {
            if (!value.is_array()) throw ValidationError("edges must be an array");
            for (const auto& e : value) {
                if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
                    !e[2].is_number()) {
                    throw ValidationError("each edge must be [u, v, length]");
                }
                d.edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(),
                                   e[2].get<double>()});
            }
            continue;
        }
        if (!value.is_number()) throw ValidationError("space parameter '" + key + "' must be a number");
        d.parameters[key] = value.get<double>();
    }
    return d;
}

json to_json(const GameConfig& c) {
    return json{{"epsilon", c.epsilon},
                {"substeps_per_interval", c.substeps_per_interval},
                {"horizon_steps", c.horizon_steps},
                {"capture_tol", c.capture_tol}};
}

json to_json(const Outcome& o) {
    if (const auto* c = std::get_if<Captured>(&o)) return json{{"outcome", "captured"}, {"t", c->t}};
    return json{{"outcome", "evaded"}, {"horizon", std::get<Evaded>(o).horizon}};
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json item_json(const GoodCurveItem& item) {
    json out{{"pass", item.pass}, {"worst_margin", item.worst_margin}};
    out["first_failure"] = item.first_failure ? json(*item.first_failure) : json(nullptr);
    return out;
}

}  // namespace

json to_json(const PropertyReport& r) {
    json violations = json::array();
    for (const auto& w : r.violations) {
        json points = json::array();
        for (const auto& p : w.points) points.push_back(to_json(p));
        json entry{{"points", points}, {"margin", w.margin}};
        if (!w.params.empty()) entry["params"] = w.params;
        violations.push_back(entry);
    }
    json out{{"property", r.property},
             {"space", r.space},
             {"samples", r.samples},
             {"applicable", r.applicable},
             {"tolerance", r.tolerance},
             {"violations", violations},
             {"violation_count", r.violation_count},
             {"worst_margin", finite_or_null(r.worst_margin)}};
    if (!r.metadata.empty()) out["metadata"] = r.metadata;
    return out;
}

json to_json(const GoodCurveReport& r) {
    return json{{"interval", {r.tau_a, r.tau_b}},
                {"pass", r.pass()},
                {"lipschitz", item_json(r.lipschitz)},
                {"aim", item_json(r.aim)},
                {"step", item_json(r.step)},
                {"separation", item_json(r.separation)}};
}

json to_json(const MonotoneReport& r) {
    json out{{"pass", r.pass}, {"worst_increase", r.worst_increase}};
    out["worst_index"] = r.worst_index ? json(*r.worst_index) : json(nullptr);
    return out;
}

json to_json(const std::vector<RoundRecord>& rounds) {
    json out = json::array();
    for (const auto& r : rounds) {
        out.push_back(json{{"i", r.i},
                           {"j", r.j},
                           {"center", {to_json(r.center.first), to_json(r.center.second)}},
                           {"radius", r.radius}});
    }
    return out;
}

std::string content_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

namespace {

json trace_header(const Trace& trace) {
    json header{{"record", "header"},
                {"space", to_json(trace.space)},
                {"config", to_json(trace.config)},
                {"evader", trace.evader},
                {"seed", trace.seed}};
    header["config_hash"] = content_hash(header.dump());
    return header;
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const Trace& trace) {
    out << trace_header(trace).dump() << '\n';
    for (const auto& s : trace.samples) {
        json rec{{"t", s.t}, {"L", to_json(s.lion)}, {"M", to_json(s.man)}, {"d", s.d}};
        out << rec.dump() << '\n';
    }
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "# " << trace_header(trace).dump() << '\n';
    out << "t,L,M,d\n";
    auto coords = [](const Point& p) {
        std::string s;
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (i) s += ';';
            s += format_number(p[i]);
        }
        return s;
    };
    for (const auto& s : trace.samples) {
        out << format_number(s.t) << ',' << coords(s.lion) << ',' << coords(s.man) << ','
            << format_number(s.d) << '\n';
    }
}

LoadedTrace read_trace_jsonl(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty trace file");
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad trace header: ") + e.what());
    }
    if (header.value("record", "") != "header") throw ValidationError("trace header missing");

    LoadedTrace loaded;
    Trace& trace = loaded.trace;
    trace.space = descriptor_from_json(header.at("space"));
    loaded.space = make_space(trace.space);
    const auto& cfg = header.at("config");
    trace.config.epsilon = cfg.at("epsilon").get<double>();
    trace.config.substeps_per_interval = cfg.at("substeps_per_interval").get<int>();
    trace.config.horizon_steps = cfg.at("horizon_steps").get<std::int64_t>();
    trace.config.capture_tol = cfg.at("capture_tol").get<double>();
    trace.config.validate();
    trace.evader = header.value("evader", "");
    trace.seed = header.value("seed", std::uint64_t{0});

    const std::int64_t n = trace.config.substeps_per_interval;
    std::int64_t k = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw ValidationError("bad trace record " + std::to_string(k) + ": " + e.what());
        }
        Sample s{rec.at("t").get<double>(), point_from_json(*loaded.space, rec.at("L")),
                 point_from_json(*loaded.space, rec.at("M")), rec.at("d").get<double>()};
        if (k % n == 0) trace.moments.push_back({k / n, static_cast<double>(k / n) * trace.config.epsilon, s.lion, s.man});
        trace.samples.push_back(std::move(s));
        ++k;
    }
    return loaded;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "epsilon,evader,trial,outcome,capture_time\n";
    for (const auto& r : rows) {
        out << format_number(r.epsilon) << ',' << r.evader << ',' << r.trial << ',';
        if (const auto* c = std::get_if<Captured>(&r.outcome)) {
            out << "captured," << format_number(c->t);
        } else {
            out << "evaded,";
        }
        out << '\n';
    }
}

void write_sweep_jsonl(std::ostream& out, const std::vector<SweepRow>& rows) {
    for (const auto& r : rows) {
        json rec{{"epsilon", r.epsilon}, {"evader", r.evader}, {"trial", r.trial}};
        if (const auto* c = std::get_if<Captured>(&r.outcome)) {
            rec["outcome"] = "captured";
            rec["capture_time"] = c->t;
        } else {
            rec["outcome"] = "evaded";
            rec["capture_time"] = nullptr;
        }
        out << rec.dump() << '\n';
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace lionman::io
