#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lionman/diagnostics.hpp"
#include "lionman/metric_space.hpp"
#include "lionman/property_checkers.hpp"
#include "lionman/pursuit.hpp"

namespace lionman::io {

using nlohmann::json;

/// Shortest round-trip decimal form.
std::string format_number(double v);

json to_json(const Point& p);
/// Validates membership in `space`.
Point point_from_json(const MetricSpace& space, const json& j);

json to_json(const SpaceDescriptor& d);
SpaceDescriptor descriptor_from_json(const json& j);

json to_json(const GameConfig& c);
json to_json(const Outcome& o);
json to_json(const PropertyReport& r);
json to_json(const GoodCurveReport& r);
json to_json(const MonotoneReport& r);
json to_json(const std::vector<RoundRecord>& rounds);

/// FNV-1a over the text, as 16 hex digits.
std::string content_hash(const std::string& text);

/// Header record followed by one record per substep sample.
void write_trace_jsonl(std::ostream& out, const Trace& trace);
/// Columns t, L, M, d; coordinates joined by ';'.
void write_trace_csv(std::ostream& out, const Trace& trace);

struct LoadedTrace {
    SpacePtr space;
    Trace trace;
};

/// Parses a JSONL trace and rebuilds its moments. Throws ValidationError on
/// malformed input.
LoadedTrace read_trace_jsonl(std::istream& in);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_jsonl(std::ostream& out, const std::vector<SweepRow>& rows);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace lionman::io
