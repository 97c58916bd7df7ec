#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entangraph/graph.hpp"
#include "entangraph/states.hpp"
#include "entangraph/tensor.hpp"

namespace entangraph {

struct Strategy {
  enum class Kind { Pairwise, SequentialRotations, Hybrid };
  Kind kind = Kind::Pairwise;
  std::size_t pairs = 0;  // Hybrid only

  static Strategy pairwise() { return {Kind::Pairwise, 0}; }
  static Strategy sequential_rotations() { return {Kind::SequentialRotations, 0}; }
  static Strategy hybrid(std::size_t pairs) { return {Kind::Hybrid, pairs}; }

  /// "pairwise", "sequential-rotations" or "hybrid:K".
  static Strategy parse(std::string_view text);
  std::string to_string() const;
};

enum class CorrectionVariant { ExactInverse, PaperLiteral };

struct ProtocolConfig {
  std::size_t n = 2;
  InputQubitParams input{0.0, 0.0};
  RotationAngle omega{0.7853981633974483};
  Strategy strategy = Strategy::pairwise();
  /// Unset: enumerate every branch. Set: one branch sampled with this seed.
  std::optional<std::uint64_t> sample_seed;
  CorrectionVariant corrections = CorrectionVariant::ExactInverse;
};

enum class StageKind {
  InitialPreparation,
  InitialBasisChange,
  AliceMeasurement,
  BipartiteDisentangling,
  SingleQubitRotation,
  Completion
};

std::string_view stage_name(StageKind k);

struct LedgerEntry {
  std::string sender;
  std::string receiver;
  int bits = 0;
  std::string outcome;
};

struct Stage {
  StageKind kind;
  std::string outcome;        // empty when nothing was measured
  double probability = 1.0;   // conditional on the preceding stages
  std::vector<LedgerEntry> ledger;
  EntGraph graph;
  PureState state;            // normalized
};

struct ResidualPair {
  std::string a;
  std::string b;
  std::string bell;  // closest of Phi+ / Phi-
  double fidelity = 0.0;
};

struct ProtocolTrace {
  std::vector<std::string> outcomes;
  double probability = 1.0;
  std::vector<Stage> stages;
  std::string receiver;
  Eigen::Vector2cd receiver_state;  // normalized, after corrections
  double fidelity = 0.0;
  std::vector<ResidualPair> residual_pairs;

  int ledger_bits() const;
};

struct Branch {
  std::string outcome;
  double probability;
  PureState post;  // normalized
};

/// Throws ArgumentError when the strategy does not fit the channel size.
void validate(const ProtocolConfig& config);

/// Parties z (input), then a, b, ... for the channel; the receiver is the last.
std::vector<std::string> protocol_labels(std::size_t n);

/// One trace per branch with nonzero probability (enumerate) or a single
/// sampled trace.
std::vector<ProtocolTrace> run(const ProtocolConfig& config);

/// Bell measurement of (source, partner); outcomes Phi+, Phi-, Psi+, Psi-.
/// Branches with probability <= 1e-15 are omitted.
std::vector<Branch> alice_bell_measure(const PureState& state, const std::string& source = "z",
                                       const std::string& partner = "a");
/// Measurement of a pair in {Phi+, Phi-}; ContractError if the pair has
/// weight outside that span.
std::vector<Branch> reduced_bell_measure(const PureState& state, const std::string& x, const std::string& y);
/// Measurement of one qubit in the rotated basis; outcomes "+" and "-".
std::vector<Branch> rotated_measure(const PureState& state, const std::string& qubit, const RotationAngle& w);

/// Receiver-side operator undoing `outcome` of a measurement stage.
/// ArgumentError for an outcome that the stage cannot produce.
Eigen::Matrix2cd correction_for(std::string_view outcome, StageKind stage, const RotationAngle& w,
                                CorrectionVariant variant);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const PureState& a, const PureState& b);

/// Branches, stages, ledgers and amplitudes as JSON (sorted keys).
std::string trace_to_json(const ProtocolConfig& config, const std::vector<ProtocolTrace>& traces);

}  // namespace entangraph
