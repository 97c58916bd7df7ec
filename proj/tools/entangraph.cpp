#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entangraph/analyzer.hpp"
#include "entangraph/appendix.hpp"
#include "entangraph/errors.hpp"
#include "entangraph/graph.hpp"
#include "entangraph/state_spec.hpp"
#include "entangraph/states.hpp"
#include "entangraph/teleport.hpp"

namespace fs = std::filesystem;
using namespace entangraph;

namespace {

enum Exit { kOk = 0, kUsage = 2, kCapacity = 3, kNumeric = 4 };

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + (dir / name).string());
  out << content;
}

std::string fixed9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

int cmd_analyze(const std::string& spec, const std::optional<std::string>& out) {
  const PureState psi = parse_state_spec(spec);
  DenseMatrix rho = outer(psi);
  LabelSet keep;
  for (const auto& l : psi.reg().labels())
    if (l != kQuditLabel) keep.insert(l);
  if (keep.size() != psi.reg().parties()) rho = partial_trace(rho, keep);

  const Analysis a = analyze(rho);
  std::map<std::string, NodeStatus> statuses;
  for (const auto& l : keep) statuses.emplace(l, NodeStatus::Channel);
  const EntGraph g = from_polynomial(a.polynomial, statuses);

  std::cout << a.polynomial.to_string() << "\n";
  if (out) {
    write_file(*out, "report.json", analysis_to_json(a));
    write_file(*out, "polynomial.txt", a.polynomial.to_string() + "\n");
    write_file(*out, "graph.dot", to_dot(g));
    write_file(*out, "graph.json", to_json(g));
  }
  return kOk;
}

struct TeleportFlags {
  std::string channel = "ghz:2";
  double theta = 0.0;
  double phi = 0.0;
  double omega = std::numbers::pi / 4;
  std::string strategy = "pairwise";
  std::string mode = "enumerate";
  std::optional<std::uint64_t> seed;
  std::string corrections = "exact";
  std::optional<std::string> out;
};

std::size_t channel_size(const std::string& channel) {
  if (channel.rfind("ghz:", 0) != 0) throw ArgumentError("channel must be ghz:N, got '" + channel + "'");
  const auto digits = channel.substr(4);
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw ArgumentError("bad channel size in '" + channel + "'");
  return n;
}

int cmd_teleport(const TeleportFlags& f) {
  ProtocolConfig config{channel_size(f.channel), InputQubitParams(f.theta, f.phi), RotationAngle(f.omega),
                        Strategy::parse(f.strategy), std::nullopt, CorrectionVariant::ExactInverse};
  if (f.mode == "sample") {
    if (!f.seed) throw ArgumentError("--mode sample needs --seed");
    config.sample_seed = *f.seed;
  } else if (f.seed) {
    throw ArgumentError("--seed only applies to --mode sample");
  }
  if (f.corrections == "paper") config.corrections = CorrectionVariant::PaperLiteral;
  // Capacity is checked before any state is built: n channel qubits plus the input.
  if (config.n >= 62 || (std::size_t{2} << config.n) > dimension_cap())
    throw CapacityError(f.channel + " exceeds the dimension cap " + std::to_string(dimension_cap()));

  const auto traces = run(config);

  if (f.out) {
    write_file(*f.out, "trace.json", trace_to_json(config, traces));
    const auto& stages = traces.front().stages;
    for (std::size_t i = 0; i < stages.size(); ++i) {
      write_file(*f.out, "stage-" + std::to_string(i) + "-" + std::string(stage_name(stages[i].kind)) + ".dot",
                 to_dot(stages[i].graph));
    }
  }

  std::printf("%-6s %-28s %-12s %-5s %-9s %s\n", "branch", "outcomes", "probability", "bits", "residual",
              "fidelity");
  bool all_unit = true;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    std::string outcomes;
    for (const auto& o : t.outcomes) outcomes += (outcomes.empty() ? "" : " ") + o;
    std::printf("%-6zu %-28s %-12s %-5d %-9zu %s\n", i, outcomes.c_str(), fixed9(t.probability).c_str(),
                t.ledger_bits(), t.residual_pairs.size(), fixed9(t.fidelity).c_str());
    if (t.fidelity < 1.0 - 1e-9) all_unit = false;
  }
  if (all_unit) return kOk;
  if (config.corrections == CorrectionVariant::PaperLiteral) {
    std::cerr << "warning: paper-literal corrections leave branches with fidelity below 1\n";
    return kOk;
  }
  std::cerr << "error: some branches did not recover the input state\n";
  return kNumeric;
}

int cmd_verify_appendix(const std::optional<std::string>& out) {
  const AppendixReport r = verify_appendix();
  std::cout << r.to_text();
  std::cout << "checks: " << r.checks.size() << ", failures: " << r.failures() << "\n";
  if (out) {
    write_file(*out, "appendix_report.txt", r.to_text());
    write_file(*out, "appendix_report.json", r.to_json());
  }
  return r.passed() ? kOk : kNumeric;
}

int cmd_export_graph(const std::string& poly, const std::optional<std::string>& out) {
  const EntGraph g = from_polynomial(EntPolynomial::parse(poly));
  std::cout << to_dot(g);
  if (out) {
    write_file(*out, "graph.dot", to_dot(g));
    write_file(*out, "graph.json", to_json(g));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement polynomials, graphs and GHZ-channel teleportation"};
  app.require_subcommand(1);

  std::string spec;
  std::optional<std::string> out;
  auto* analyze_cmd = app.add_subcommand("analyze", "PPT analysis and entanglement polynomial of a state");
  analyze_cmd->add_option("spec", spec, "ghz:N | psi34 | qubit:THETA,PHI | file:PATH")->required();
  analyze_cmd->add_option("--out", out, "directory for report.json, polynomial.txt, graph.dot, graph.json");

  TeleportFlags tf;
  auto* teleport_cmd = app.add_subcommand("teleport", "run the teleportation protocol over a GHZ channel");
  teleport_cmd->add_option("--channel", tf.channel, "ghz:N")->capture_default_str();
  teleport_cmd->add_option("--theta", tf.theta, "input polar angle in [0, pi]")->capture_default_str();
  teleport_cmd->add_option("--phi", tf.phi, "input phase in [0, 2 pi)")->capture_default_str();
  teleport_cmd->add_option("--omega", tf.omega, "rotation angle in (0, pi/2)")->capture_default_str();
  teleport_cmd->add_option("--strategy", tf.strategy, "pairwise | sequential-rotations | hybrid:K")
      ->capture_default_str();
  teleport_cmd->add_option("--mode", tf.mode, "enumerate | sample")
      ->check(CLI::IsMember({"enumerate", "sample"}))
      ->capture_default_str();
  teleport_cmd->add_option("--seed", tf.seed, "64-bit seed for --mode sample");
  teleport_cmd->add_option("--corrections", tf.corrections, "exact | paper")
      ->check(CLI::IsMember({"exact", "paper"}))
      ->capture_default_str();
  teleport_cmd->add_option("--out", tf.out, "directory for trace.json and stage DOT files");

  auto* verify_cmd = app.add_subcommand("verify-appendix", "recompute the psi34 reduced matrices and spectra");
  verify_cmd->add_option("--out", out, "directory for appendix_report.txt and appendix_report.json");

  std::string poly;
  auto* export_cmd = app.add_subcommand("export-graph", "graph of an entanglement polynomial as DOT and JSON");
  export_cmd->add_option("polynomial", poly, "e.g. abc+ad+be+de")->required();
  export_cmd->add_option("--out", out, "directory for graph.dot and graph.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(spec, out);
    if (teleport_cmd->parsed()) return cmd_teleport(tf);
    if (verify_cmd->parsed()) return cmd_verify_appendix(out);
    if (export_cmd->parsed()) return cmd_export_graph(poly, out);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
