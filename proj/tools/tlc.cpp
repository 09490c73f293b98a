// Command line front end: solve, decide, oracle, gen, bench.
// Exit codes: 0 success (NO answers included), 1 usage or input error,
// 2 internal invariant violation.

#include "tlc/io.hpp"
#include "tlc/oracles.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tlc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << bytes)) throw UsageError("cannot write '" + path + "'");
}

void apply_env_eps() {
  const char* raw = std::getenv("TLC_EPS");
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || v <= 0.0)
    throw UsageError(std::string("TLC_EPS must be a positive number, got '") + raw + "'");
  set_eps(v);
}

struct ProblemArgs {
  std::string variant;
  double theta = 0.0, phi = 0.0, beta = 0.0;
  std::string in, format, svg;
  bool json = false, timings = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "two-fixed | one-fixed | fixed-angle")
        ->required()
        ->check(CLI::IsMember({"two-fixed", "one-fixed", "fixed-angle"}));
    cmd->add_option("--theta", theta, "orientation of the second strip (two-fixed)");
    cmd->add_option("--phi", phi, "orientation of the fixed first strip (two-fixed, one-fixed)");
    cmd->add_option("--beta", beta, "angle between the strips (fixed-angle)");
    cmd->add_option("--in", in, "input file")->required();
    cmd->add_option("--format", format, "csv | json (default: from the file name)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--svg", svg, "write an SVG figure here");
    cmd->add_flag("--json", json, "print a JSON record");
  }

  Variant to_variant() const { return variant_from_name(variant, theta, phi, beta); }

  Instance load() const {
    const Format f = format.empty() ? format_from_path(in) : format_from_name(format);
    return parse_instance(read_file(in), f);
  }
};

void emit_solution(const ProblemArgs& a, const Instance& inst, const Variant& v, const Solution& sol) {
  const nlohmann::json rec = result_record(inst.points, v, sol, a.timings);
  if (a.json)
    std::cout << rec.dump() << "\n";
  else
    std::cout << "width " << format_number(sol.width) << "\n";
  if (!a.svg.empty()) write_file(a.svg, render_svg(inst.points, sol.strips, sol.width));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-line center problems with orientation constraints"};
  app.require_subcommand(1);

  ProblemArgs solve_args, decide_args, oracle_args;
  double omega = 0.0;
  auto* solve = app.add_subcommand("solve", "optimal two-strip width");
  solve_args.attach(solve);
  solve->add_flag("--timings", solve_args.timings, "include per-phase timings in the JSON record");
  auto* decide = app.add_subcommand("decide", "is there a two-strip of width at most omega");
  decide_args.attach(decide);
  decide->add_option("--omega", omega, "width to test")->required();
  auto* oracle = app.add_subcommand("oracle", "brute-force reference answer (small inputs only)");
  oracle_args.attach(oracle);

  std::string kind, out;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  GenParams gp;
  double planted_theta = std::nan("");
  std::string gen_format;
  auto* gen = app.add_subcommand("gen", "write a seeded instance");
  gen->add_option("--kind", kind, "uniform | clustered | planted_two_strip")->required();
  gen->add_option("--n", n, "number of points")->required();
  gen->add_option("--seed", seed, "random seed")->required();
  gen->add_option("--out", out, "output file")->required();
  gen->add_option("--format", gen_format, "csv | json (default: from the file name)")
      ->check(CLI::IsMember({"csv", "json"}));
  gen->add_option("--extent", gp.extent, "side of the bounding square");
  gen->add_option("--clusters", gp.clusters, "clustered: number of clusters");
  gen->add_option("--spread", gp.spread, "clustered: relative standard deviation");
  gen->add_option("--beta", gp.beta, "planted: angle between the strips");
  gen->add_option("--width", gp.width, "planted: strip width");
  gen->add_option("--theta", planted_theta, "planted: first orientation (random if omitted)");

  std::string suite, bench_out;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("--suite", suite, "suite JSON file")->required();
  bench->add_option("--out", bench_out, "CSV output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    apply_env_eps();
    if (solve->parsed()) {
      const Instance inst = solve_args.load();
      const Variant v = solve_args.to_variant();
      emit_solution(solve_args, inst, v, solve_variant(inst.points, v));
    } else if (decide->parsed()) {
      const Instance inst = decide_args.load();
      const Variant v = decide_args.to_variant();
      const DecisionOutcome d = decide_variant(inst.points, v, omega);
      const nlohmann::json rec = decision_record(inst.points, v, omega, d);
      if (decide_args.json)
        std::cout << rec.dump() << "\n";
      else
        std::cout << (d.feasible ? "YES" : "NO") << "\n";
      if (!decide_args.svg.empty() && d.feasible)
        write_file(decide_args.svg, render_svg(inst.points, d.witness, d.witness.width()));
    } else if (oracle->parsed()) {
      const Instance inst = oracle_args.load();
      const Variant v = oracle_args.to_variant();
      const OracleReport r = oracle_solve(inst.points, v);
      Solution sol;
      sol.width = r.width;
      sol.strips = r.witness;
      sol.assignment = r.assignment;
      emit_solution(oracle_args, inst, v, sol);
    } else if (gen->parsed()) {
      if (!std::isnan(planted_theta)) gp.theta = planted_theta;
      const Instance inst = generate(gen_kind_from_name(kind), n, seed, gp);
      const Format f = gen_format.empty() ? format_from_path(out) : format_from_name(gen_format);
      write_file(out, serialize_instance(inst, f));
    } else if (bench->parsed()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(suite));
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("suite: ") + e.what());
      }
      write_file(bench_out, run_bench(doc));
    }
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
