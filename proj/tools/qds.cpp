#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "qds/analysis.hpp"
#include "qds/constructors.hpp"
#include "qds/error.hpp"
#include "qds/io.hpp"

using namespace qds;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Axiom:
      return 2;
    case ErrorKind::Parse:
      return 3;
    case ErrorKind::Inconsistency:
      return 4;
    default:
      return 1;
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("QDS_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, std::string("QDS_SEED: not an unsigned integer: ") + env);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
}

std::optional<double> parse_eps(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidArgument, "--eps: expected \"auto\" or a positive number, got " + text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite quantum groups: Hopf axioms, Haar states, corepresentations and square roots of the Haar state"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "Write a quantum group file");
  build->require_subcommand(1);
  std::string out;

  std::string cayley, variant = "functions", name;
  auto* bgroup = build->add_subcommand("group", "C(G) or C[G] from a Cayley table");
  bgroup->add_option("--cayley", cayley, "Cayley table file")->required();
  bgroup->add_option("--variant", variant, "functions | group-algebra")
      ->check(CLI::IsMember({"functions", "group-algebra"}));
  bgroup->add_option("--name", name, "Name stored in the file");
  bgroup->add_option("-o,--output", out, "Output file")->required();

  std::string gamma;
  auto* bcrossed = build->add_subcommand("crossed", "C[Gamma] x| C(H) for finite abelian Gamma");
  bcrossed->add_option("--gamma", gamma, "Cyclic factors, e.g. 4 or 2x2")->required();
  bcrossed->add_option("-o,--output", out, "Output file")->required();

  std::string left, right;
  auto* bproduct = build->add_subcommand("product", "Tensor product of two quantum groups");
  bproduct->add_option("a", left, "First file")->required();
  bproduct->add_option("b", right, "Second file")->required();
  bproduct->add_option("-o,--output", out, "Output file")->required();

  std::string file, eps = "auto";
  double tol = kDefaultTolerance;
  std::optional<std::uint64_t> seed;
  bool json_out = false, text_out = false, timings = false;

  auto* cmd_analyze = app.add_subcommand("analyze", "Full analysis report");
  cmd_analyze->add_option("file", file, "Quantum group file")->required();
  cmd_analyze->add_flag("--json", json_out, "JSON report (default)");
  cmd_analyze->add_flag("--text", text_out, "Human-readable report");
  cmd_analyze->add_option("--tol", tol, "Tolerance");
  cmd_analyze->add_option("--seed", seed, "Seed (default: QDS_SEED or 0)");
  cmd_analyze->add_option("--eps", eps, "Square-root epsilon: auto or a positive value");
  cmd_analyze->add_flag("--timings", timings, "Include wall-clock timings");
  cmd_analyze->add_option("-o,--output", out, "Output file");

  auto* cmd_sqrt = app.add_subcommand("sqrt", "Square root of the Haar state, or a certificate that none exists");
  cmd_sqrt->add_option("file", file, "Quantum group file")->required();
  cmd_sqrt->add_option("--eps", eps, "auto or a positive value");
  cmd_sqrt->add_option("--tol", tol, "Tolerance");
  cmd_sqrt->add_option("--seed", seed, "Seed (default: QDS_SEED or 0)");
  cmd_sqrt->add_option("-o,--output", out, "Output file");

  double spin = 0.5, q = 1.0;
  auto* suq2 = app.add_subcommand("suq2", "Classify a dual block of SU_q(2)");
  suq2->add_option("--spin", spin, "Spin, a non-negative half-integer")->required();
  suq2->add_option("--q", q, "Nonzero real deformation parameter")->required();
  suq2->add_flag("--json", json_out, "JSON output (default)");
  suq2->add_flag("--text", text_out, "Human-readable output");
  suq2->add_option("--seed", seed, "Seed (default: QDS_SEED or 0)");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::uint64_t s = seed ? *seed : default_seed();
    if (bgroup->parsed()) {
      const auto g = load_cayley(cayley);
      const auto v = variant == "functions" ? GroupVariant::Functions : GroupVariant::GroupAlgebra;
      if (name.empty()) {
        const std::string stem = std::filesystem::path(cayley).stem().string();
        name = v == GroupVariant::Functions ? "C(" + stem + ")" : "C[" + stem + "]";
      }
      const auto h = from_cayley(g, v, name);
      require_axioms(AnyQGroup(h), tol);
      save_qgroup(out, h);
    } else if (bcrossed->parsed()) {
      save_qgroup(out, crossed_product(gamma).algebra);
    } else if (bproduct->parsed()) {
      const auto a = load_qgroup(left);
      const auto b = load_qgroup(right);
      AnyQGroup p;
      if (a.index() == 0 && b.index() == 0)
        p = tensor_product(std::get<0>(a), std::get<0>(b));
      else
        p = tensor_product(as_complex(a), as_complex(b));
      require_axioms(p, tol);
      save_qgroup(out, p);
    } else if (cmd_analyze->parsed()) {
      AnalysisOptions opt;
      opt.tol = tol;
      opt.seed = s;
      opt.epsilon = parse_eps(eps);
      opt.timings = timings;
      const Json r = analyze(load_qgroup(file), opt);
      emit(text_out && !json_out ? report_text(r) : dump_canonical(r), out);
    } else if (cmd_sqrt->parsed()) {
      AnalysisOptions opt;
      opt.tol = tol;
      opt.seed = s;
      opt.epsilon = parse_eps(eps);
      emit(dump_canonical(sqrt_report(load_qgroup(file), opt)), out);
    } else if (suq2->parsed()) {
      const double twice = 2 * spin;
      if (twice < 0 || std::abs(twice - std::round(twice)) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "--spin must be a non-negative half-integer");
      const Json r = suq2_json(suq2_block(static_cast<int>(std::lround(twice)), q, s));
      std::cout << (text_out && !json_out ? suq2_text(r) : dump_canonical(r));
    }
  } catch (const Error& e) {
    std::cerr << "qds: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
