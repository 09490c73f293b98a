#pragma once

// Instances on disk, seeded generators, result records and SVG figures.

#include "tlc/solution.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tlc {

enum class Format { Csv, Json };

// Malformed text; line() is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Instance {
  PointSet points;
  nlohmann::json meta = nlohmann::json::object();
};

Format format_from_name(std::string_view name);
// csv unless the path ends in .json
Format format_from_path(std::string_view path);

// CSV: one "x,y" per line, no header, blank lines ignored.
// JSON: {"points": [[x, y], ...], "meta": {...}}.
Instance parse_instance(std::string_view bytes, Format format);
std::string serialize_instance(const Instance& inst, Format format);

// Shortest decimal that reads back to the same double.
std::string format_number(double x);

enum class GenKind { Uniform, Clustered, PlantedTwoStrip };
GenKind gen_kind_from_name(std::string_view name);
const char* gen_kind_name(GenKind kind);

struct GenParams {
  double extent = 1.0;    // points (or cluster centres) in [0, extent]^2
  int clusters = 4;       // clustered
  double spread = 0.05;   // clustered: standard deviation around a centre
  double beta = 0.5;      // planted: second orientation is theta + beta
  double width = 0.1;     // planted: width of both strips
  std::optional<double> theta;  // planted: first orientation, random if unset
};

// Deterministic for fixed arguments. Only raw mt19937_64 output is consumed,
// so results do not depend on the standard library's distributions.
Instance generate(GenKind kind, std::size_t n, std::uint64_t seed, const GenParams& params = {});

// Dispatch on the variant. Two fixed orientations decide by solving.
Solution solve_variant(PointSpan points, const Variant& variant);
DecisionOutcome decide_variant(PointSpan points, const Variant& variant, double omega);
Variant variant_from_name(std::string_view name, double theta, double phi, double beta);

// Versioned ("v": 1) record of a solve. Throws InvariantError when the strips
// do not cover the points within abs_tol(points).
nlohmann::json result_record(PointSpan points, const Variant& variant, const Solution& sol,
                             bool with_timings = false);
nlohmann::json decision_record(PointSpan points, const Variant& variant, double omega,
                               const DecisionOutcome& out);

// Standalone SVG: one circle.dot per point, one polygon.slab per non-empty
// strip clipped to the padded bounding box, and a width caption.
std::string render_svg(PointSpan points, const TwoStrip& strips, double width);

// Runs every case of a suite file and returns CSV rows (with a header):
// name,variant,n,seed,width,ns
std::string run_bench(const nlohmann::json& suite);

}  // namespace tlc
