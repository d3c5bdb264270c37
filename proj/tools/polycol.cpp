// polycol: command-line front end.
// Exit codes: 0 ok, 1 a reported check failed, 2 bad input, 3 internal invariant violated.

#include "polycol/algebra.hpp"
#include "polycol/columns.hpp"
#include "polycol/doubling.hpp"
#include "polycol/error.hpp"
#include "polycol/reports.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace polycol;

constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kInvariant = 3;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& text, const std::string& path) {
  const bool newline = !text.empty() && text.back() != '\n';
  if (path.empty() || path == "-") {
    std::cout << text << (newline ? "\n" : "");
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text << (newline ? "\n" : "");
}

struct Flags {
  std::string input = "-";
  std::string output;
  std::string which;
  std::size_t max_degree = 3;
  std::size_t steps = 4;
  int box = 3;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool no_prune = false;
  std::optional<long long> modulus;
};

ColumnSearch search_mode(const Flags& f) { return f.no_prune ? ColumnSearch::literal : ColumnSearch::pruned; }

int cmd_analyze(const Flags& f) {
  const Polytope p = parse_polytope(read_input(f.input));
  write_output(report_to_json(analyze(p, search_mode(f))).dump(2), f.output);
  return 0;
}

int cmd_scan(const Flags& f) {
  ScanOptions o;
  o.box = f.box;
  o.seed = f.seed;
  o.threads = f.threads;
  const ScanSummary s = scan_polygons(o);
  write_output(s.to_json().dump(2), f.output);
  return s.ok() ? 0 : kCheckFailed;
}

int cmd_verify(const Flags& f) {
  const Polytope p = parse_polytope(read_input(f.input));
  const VerifyOutcome out = run_verify(p, f.which, {f.max_degree, search_mode(f)});
  write_output(out.report.dump(2), f.output);
  return out.passed ? 0 : kCheckFailed;
}

int cmd_export(const Flags& f) {
  const Polytope p = parse_polytope(read_input(f.input));
  if (f.which == "fan") {
    write_output(normal_fan_json(p).dump(2), f.output);
    return 0;
  }
  const ColumnStructure cs(analysis_polytope(p), search_mode(f));
  if (f.which == "dot")
    write_output(product_table_dot(cs), f.output);
  else if (f.which == "presentation")
    write_output(steinberg_presentation_text(cs, f.modulus), f.output);
  else
    throw InvalidInput("export: unsupported target '" + f.which + "'");
  return 0;
}

int cmd_spectrum(const Flags& f) {
  const Polytope p = parse_polytope(read_input(f.input));
  const DoublingSpectrum s = doubling_spectrum(analysis_polytope(p), f.steps);
  write_output(s.to_json(), f.output);
  return s.worst_slack() <= 0 ? 0 : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Column structures of lattice polytopes"};
  app.require_subcommand(1);
  Flags f;

  auto input = [&](CLI::App* sub) { sub->add_option("input", f.input, "polytope JSON file, - for stdin"); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", f.output, "output file (default stdout)"); };
  auto prune = [&](CLI::App* sub) {
    sub->add_flag("--no-prune", f.no_prune, "search columns by the literal definition");
  };

  auto* analyze = app.add_subcommand("analyze", "full analysis report as JSON");
  input(analyze);
  output(analyze);
  prune(analyze);

  auto* scan = app.add_subcommand("scan", "exhaustive scan of lattice polygons in a box");
  scan->add_option("--box", f.box, "coordinates range over 0..box")->check(CLI::Range(1, 4));
  scan->add_option("--seed", f.seed, "seed of the literal-search soundness sample");
  scan->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  output(scan);

  auto* verify = app.add_subcommand("verify", "run one verification suite");
  verify->add_option("check", f.which, "steinberg|afemb|heights|columns-property|doubling")
      ->required()
      ->check(CLI::IsMember({"steinberg", "afemb", "heights", "columns-property", "doubling"}));
  input(verify);
  output(verify);
  prune(verify);
  verify->add_option("--max-degree", f.max_degree, "degree bound for semigroup checks");
  verify->add_option("--seed", f.seed, "accepted for symmetry with scan; checks here are exhaustive");

  auto* exp = app.add_subcommand("export", "DOT product graph, presentation text, or normal fan JSON");
  exp->add_option("what", f.which, "dot|presentation|fan")->required();
  input(exp);
  output(exp);
  prune(exp);
  exp->add_option("--modulus", f.modulus, "instantiate the presentation over Z/p");

  auto* spectrum = app.add_subcommand("spectrum", "FIFO doubling spectrum log as JSON");
  input(spectrum);
  output(spectrum);
  spectrum->add_option("--steps", f.steps, "number of doublings")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*analyze) return cmd_analyze(f);
    if (*scan) return cmd_scan(f);
    if (*verify) return cmd_verify(f);
    if (*exp) return cmd_export(f);
    if (*spectrum) return cmd_spectrum(f);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  }
  return kBadInput;
}
