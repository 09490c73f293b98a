#include "tlc/io.hpp"

#include "tlc/fixed_angle.hpp"
#include "tlc/one_fixed.hpp"
#include "tlc/two_fixed.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace tlc {

using nlohmann::json;

ParseError::ParseError(std::size_t line, const std::string& what)
    : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

Format format_from_name(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw UsageError("unknown format '" + std::string(name) + "'");
}

Format format_from_path(std::string_view path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? Format::Json : Format::Csv;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// ---------------------------------------------------------------- parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec == std::errc::result_out_of_range) throw InputError("line " + std::to_string(line) + ": number out of range");
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, "malformed number '" + std::string(s) + "'");
  if (!std::isfinite(v)) throw InputError("line " + std::to_string(line) + ": non-finite coordinate");
  return v;
}

std::size_t line_of_offset(std::string_view bytes, std::size_t offset) {
  offset = std::min(offset, bytes.size());
  return 1 + static_cast<std::size_t>(std::count(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

Instance parse_csv(std::string_view bytes) {
  Instance inst;
  std::size_t line = 0;
  while (!bytes.empty()) {
    ++line;
    const std::size_t nl = bytes.find('\n');
    std::string_view row = trim(bytes.substr(0, nl));
    bytes.remove_prefix(nl == std::string_view::npos ? bytes.size() : nl + 1);
    if (row.empty()) continue;
    const std::size_t comma = row.find(',');
    if (comma == std::string_view::npos) throw ParseError(line, "expected 'x,y'");
    if (row.find(',', comma + 1) != std::string_view::npos) throw ParseError(line, "more than two fields");
    inst.points.emplace_back(parse_number(row.substr(0, comma), line), parse_number(row.substr(comma + 1), line));
  }
  return inst;
}

Instance parse_json(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_offset(bytes, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw ParseError(1, "expected an object with a \"points\" array");
  if (doc.contains("v") && doc["v"] != 1) throw ParseError(1, "unsupported schema version");
  Instance inst;
  std::size_t k = 0;
  for (const json& p : doc["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ParseError(1, "point " + std::to_string(k) + " is not an [x, y] pair");
    const double x = p[0].get<double>(), y = p[1].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y))
      throw InputError("point " + std::to_string(k) + " has a non-finite coordinate");
    inst.points.emplace_back(x, y);
    ++k;
  }
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw ParseError(1, "\"meta\" must be an object");
    inst.meta = doc["meta"];
  }
  return inst;
}

}  // namespace

Instance parse_instance(std::string_view bytes, Format format) {
  Instance inst = format == Format::Csv ? parse_csv(bytes) : parse_json(bytes);
  validate_points(inst.points);
  return inst;
}

std::string serialize_instance(const Instance& inst, Format format) {
  if (format == Format::Csv) {
    std::string out;
    for (const Point& p : inst.points) out += format_number(p.x()) + "," + format_number(p.y()) + "\n";
    return out;
  }
  json doc;
  doc["v"] = 1;
  json pts = json::array();
  for (const Point& p : inst.points) pts.push_back({p.x(), p.y()});
  doc["points"] = std::move(pts);
  doc["meta"] = inst.meta;
  return doc.dump() + "\n";
}

// ---------------------------------------------------------------- generators

GenKind gen_kind_from_name(std::string_view name) {
  if (name == "uniform") return GenKind::Uniform;
  if (name == "clustered") return GenKind::Clustered;
  if (name == "planted_two_strip") return GenKind::PlantedTwoStrip;
  throw UsageError("unknown generator '" + std::string(name) + "'");
}

const char* gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::Uniform: return "uniform";
    case GenKind::Clustered: return "clustered";
    case GenKind::PlantedTwoStrip: return "planted_two_strip";
  }
  return "unknown";
}

namespace {

// std distributions are implementation defined; these are not.
struct Rng {
  std::mt19937_64 eng;
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u = 1.0 - uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
  }
};

}  // namespace

Instance generate(GenKind kind, std::size_t n, std::uint64_t seed, const GenParams& params) {
  if (n < 1) throw UsageError("generator needs n >= 1");
  if (!(params.extent > 0.0) || !std::isfinite(params.extent)) throw UsageError("extent must be positive");
  Rng rng{std::mt19937_64(seed)};
  Instance inst;
  inst.meta["generator"] = gen_kind_name(kind);
  inst.meta["seed"] = seed;
  inst.meta["n"] = n;
  inst.meta["extent"] = params.extent;
  inst.points.reserve(n);
  const double e = params.extent;
  switch (kind) {
    case GenKind::Uniform:
      for (std::size_t k = 0; k < n; ++k) inst.points.emplace_back(rng.uniform(0, e), rng.uniform(0, e));
      break;
    case GenKind::Clustered: {
      if (params.clusters < 1) throw UsageError("clusters must be at least 1");
      if (!(params.spread >= 0.0)) throw UsageError("spread must be non-negative");
      std::vector<Point> centres;
      for (int c = 0; c < params.clusters; ++c) centres.emplace_back(rng.uniform(0, e), rng.uniform(0, e));
      for (std::size_t k = 0; k < n; ++k) {
        const Point& c = centres[k % centres.size()];
        const double dx = rng.normal(), dy = rng.normal();
        inst.points.emplace_back(c.x() + params.spread * e * dx, c.y() + params.spread * e * dy);
      }
      inst.meta["clusters"] = params.clusters;
      inst.meta["spread"] = params.spread;
      break;
    }
    case GenKind::PlantedTwoStrip: {
      if (!(params.width >= 0.0) || !std::isfinite(params.width)) throw UsageError("width must be non-negative");
      if (!(params.beta >= 0.0 && params.beta <= kHalfPi)) throw UsageError("beta must lie in [0, pi/2]");
      const double t1 = normalize_orientation(params.theta ? *params.theta : rng.uniform(0, kPi));
      const double t2 = normalize_orientation(t1 + params.beta);
      // Both strips pass near the centre of the box and span its length.
      const Point mid(0.5 * e, 0.5 * e);
      const double off[2] = {rng.uniform(-0.2, 0.2) * e, rng.uniform(-0.2, 0.2) * e};
      const double th[2] = {t1, t2};
      for (std::size_t k = 0; k < n; ++k) {
        const int s = static_cast<int>(k % 2);
        const double along = rng.uniform(-0.5, 0.5) * e;
        const double across = off[s] + rng.uniform(0.0, params.width);
        inst.points.push_back(mid + along * unit(th[s]) + across * normal(th[s]));
      }
      inst.meta["planted"] = {{"beta", params.beta}, {"width", params.width}, {"theta1", t1}, {"theta2", t2}};
      break;
    }
  }
  validate_points(inst.points);
  return inst;
}

// ---------------------------------------------------------------- records

Variant variant_from_name(std::string_view name, double theta, double phi, double beta) {
  if (name == "two-fixed") return Variant::two_fixed(theta, phi);
  if (name == "one-fixed") return Variant::one_fixed(phi);
  if (name == "fixed-angle") return Variant::fixed_angle(beta);
  throw UsageError("unknown variant '" + std::string(name) + "'");
}

Solution solve_variant(PointSpan points, const Variant& v) {
  switch (v.kind) {
    case VariantKind::TwoFixed: return two_fixed_solve(points, v.theta, v.phi);
    case VariantKind::OneFixed: return one_fixed_solve(points, v.phi);
    case VariantKind::FixedAngle: return fixed_angle_solve(points, v.beta);
  }
  throw UsageError("unknown variant");
}

DecisionOutcome decide_variant(PointSpan points, const Variant& v, double omega) {
  switch (v.kind) {
    case VariantKind::TwoFixed: {
      if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
      Solution s = two_fixed_solve(points, v.theta, v.phi);
      DecisionOutcome out;
      out.counters = s.counters;
      out.feasible = s.width <= omega + abs_tol(points);
      if (out.feasible) {
        out.witness = s.strips;
        out.assignment = s.assignment;
      }
      return out;
    }
    case VariantKind::OneFixed: return one_fixed_decide(points, v.phi, omega);
    case VariantKind::FixedAngle: return fixed_angle_decide(points, v.beta, omega);
  }
  throw UsageError("unknown variant");
}

namespace {

json params_of(const Variant& v) {
  json p = json::object();
  switch (v.kind) {
    case VariantKind::TwoFixed:
      p["theta"] = v.theta;
      p["phi"] = v.phi;
      break;
    case VariantKind::OneFixed: p["phi"] = v.phi; break;
    case VariantKind::FixedAngle: p["beta"] = v.beta; break;
  }
  return p;
}

json strip_json(const Strip& s) {
  json j{{"theta", s.theta}};
  if (s.empty) {
    j["empty"] = true;
  } else {
    j["c_lo"] = s.c_lo;
    j["c_hi"] = s.c_hi;
  }
  return j;
}

json counters_json(const Counters& c) {
  return {{"probes", c.probes},   {"pairs", c.pairs},           {"decision_calls", c.decision_calls},
          {"queries", c.queries}, {"events", c.events},         {"extreme_changes", c.extreme_changes},
          {"candidates", c.candidates}};
}

void check_cover(PointSpan points, const TwoStrip& strips, const std::vector<int>& assignment) {
  if (!validate_cover(points, strips, assignment, abs_tol(points)))
    throw InvariantError("emitted strips do not cover the points");
}

}  // namespace

json result_record(PointSpan points, const Variant& variant, const Solution& sol, bool with_timings) {
  check_cover(points, sol.strips, sol.assignment);
  json r;
  r["v"] = 1;
  r["variant"] = variant_name(variant.kind);
  r["params"] = params_of(variant);
  r["n"] = points.size();
  r["width"] = sol.width;
  r["strips"] = json::array({strip_json(sol.strips.first), strip_json(sol.strips.second)});
  r["assignment"] = sol.assignment;
  r["counters"] = counters_json(sol.counters);
  if (with_timings) r["timings"] = sol.timings;
  return r;
}

json decision_record(PointSpan points, const Variant& variant, double omega, const DecisionOutcome& out) {
  json r;
  r["v"] = 1;
  r["variant"] = variant_name(variant.kind);
  json p = params_of(variant);
  p["omega"] = omega;
  r["params"] = std::move(p);
  r["n"] = points.size();
  r["feasible"] = out.feasible;
  if (out.feasible) {
    check_cover(points, out.witness, out.assignment);
    r["width"] = out.witness.width();
    r["strips"] = json::array({strip_json(out.witness.first), strip_json(out.witness.second)});
    r["assignment"] = out.assignment;
  }
  r["counters"] = counters_json(out.counters);
  return r;
}

// ---------------------------------------------------------------- svg

namespace {

std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Keeps the part of a convex polygon with <n, x> >= c.
std::vector<Point> clip(const std::vector<Point>& poly, const Point& n, double c) {
  std::vector<Point> out;
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Point& a = poly[k];
    const Point& b = poly[(k + 1) % m];
    const double fa = a.dot(n) - c, fb = b.dot(n) - c;
    if (fa >= 0.0) out.push_back(a);
    if ((fa >= 0.0) != (fb >= 0.0)) out.push_back(a + (b - a) * (fa / (fa - fb)));
  }
  return out;
}

}  // namespace

std::string render_svg(PointSpan points, const TwoStrip& strips, double width) {
  constexpr double kSize = 600.0, kPad = 30.0;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!points.empty()) {
    xmin = xmax = points[0].x();
    ymin = ymax = points[0].y();
    for (const Point& p : points) {
      xmin = std::min(xmin, p.x());
      xmax = std::max(xmax, p.x());
      ymin = std::min(ymin, p.y());
      ymax = std::max(ymax, p.y());
    }
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double margin = 0.05 * span;
  xmin -= margin;
  ymin -= margin;
  xmax += margin;
  ymax += margin;
  const double k = (kSize - 2 * kPad) / (span + 2 * margin);
  auto sx = [&](double x) { return fixed3(kPad + (x - xmin) * k); };
  auto sy = [&](double y) { return fixed3(kSize - kPad - (y - ymin) * k); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
  const char* colours[2] = {"#1f77b4", "#d62728"};
  const Strip* both[2] = {&strips.first, &strips.second};
  for (int s = 0; s < 2; ++s) {
    const Strip& st = *both[s];
    if (st.empty) continue;
    std::vector<Point> box{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
    const Point n = normal(st.theta);
    box = clip(clip(box, n, st.c_lo), -n, -st.c_hi);
    o << "<polygon class=\"slab\" fill=\"" << colours[s] << "\" fill-opacity=\"0.25\" stroke=\"" << colours[s]
      << "\" stroke-width=\"1\" points=\"";
    for (std::size_t v = 0; v < box.size(); ++v) o << (v ? " " : "") << sx(box[v].x()) << "," << sy(box[v].y());
    o << "\"/>\n";
  }
  for (const Point& p : points)
    o << "<circle class=\"dot\" cx=\"" << sx(p.x()) << "\" cy=\"" << sy(p.y()) << "\" r=\"2.5\" fill=\"black\"/>\n";
  o << "<text x=\"" << kPad << "\" y=\"" << kPad * 0.6 << "\" font-family=\"monospace\" font-size=\"14\">width "
    << format_number(width) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

// ---------------------------------------------------------------- bench

std::string run_bench(const json& suite) {
  if (!suite.is_object() || !suite.contains("cases") || !suite["cases"].is_array())
    throw UsageError("suite must be an object with a \"cases\" array");
  std::string csv = "name,variant,n,seed,width,ns\n";
  for (const json& c : suite["cases"]) {
    const std::string kind = c.value("kind", "uniform");
    const std::size_t n = c.value("n", std::size_t{100});
    const std::uint64_t seed = c.value("seed", std::uint64_t{1});
    GenParams gp;
    gp.extent = c.value("extent", gp.extent);
    gp.clusters = c.value("clusters", gp.clusters);
    gp.spread = c.value("spread", gp.spread);
    gp.beta = c.value("planted_beta", gp.beta);
    gp.width = c.value("width", gp.width);
    if (c.contains("planted_theta")) gp.theta = c["planted_theta"].get<double>();
    const Instance inst = generate(gen_kind_from_name(kind), n, seed, gp);
    const Variant v = variant_from_name(c.value("variant", std::string("two-fixed")), c.value("theta", 0.0),
                                        c.value("phi", 0.0), c.value("beta", 0.0));
    const auto t0 = std::chrono::steady_clock::now();
    const Solution s = solve_variant(inst.points, v);
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
    check_cover(inst.points, s.strips, s.assignment);
    csv += c.value("name", kind) + "," + variant_name(v.kind) + "," + std::to_string(n) + "," + std::to_string(seed) +
           "," + format_number(s.width) + "," + std::to_string(ns) + "\n";
  }
  return csv;
}

}  // namespace tlc
