#include "entangraph/teleport.hpp"

#include <charconv>
#include <cmath>
#include <random>

#include "json.hpp"

#include "entangraph/errors.hpp"

namespace entangraph {

Strategy Strategy::parse(std::string_view text) {
  if (text == "pairwise") return pairwise();
  if (text == "sequential-rotations") return sequential_rotations();
  constexpr std::string_view prefix = "hybrid:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) return hybrid(k);
  }
  throw ArgumentError("unknown strategy '" + std::string(text) + "'");
}

std::string Strategy::to_string() const {
  switch (kind) {
    case Kind::Pairwise: return "pairwise";
    case Kind::SequentialRotations: return "sequential-rotations";
    case Kind::Hybrid: return "hybrid:" + std::to_string(pairs);
  }
  return "";
}

std::string_view stage_name(StageKind k) {
  switch (k) {
    case StageKind::InitialPreparation: return "initial-preparation";
    case StageKind::InitialBasisChange: return "initial-basis-change";
    case StageKind::AliceMeasurement: return "alice-measurement";
    case StageKind::BipartiteDisentangling: return "bipartite-disentangling";
    case StageKind::SingleQubitRotation: return "single-qubit-rotation";
    case StageKind::Completion: return "completion";
  }
  return "";
}

int ProtocolTrace::ledger_bits() const {
  int total = 0;
  for (const auto& s : stages)
    for (const auto& e : s.ledger) total += e.bits;
  return total;
}

void validate(const ProtocolConfig& config) {
  if (config.n < 2) throw ArgumentError("channel needs at least two parties");
  const std::size_t max_pairs = (config.n - 2) / 2;
  if (config.strategy.kind == Strategy::Kind::Hybrid && config.strategy.pairs > max_pairs) {
    throw ArgumentError("hybrid:" + std::to_string(config.strategy.pairs) + " exceeds " +
                        std::to_string(max_pairs) + " pair steps for a " + std::to_string(config.n) +
                        "-party channel");
  }
}

std::vector<std::string> protocol_labels(std::size_t n) {
  std::vector<std::string> labels{"z"};
  for (auto& l : alphabetic_labels(n)) labels.push_back(std::move(l));
  return labels;
}

namespace {

constexpr double kBranchFloor = 1e-15;

std::vector<Branch> measure_in(const PureState& state, const std::vector<std::string>& parties,
                               const std::vector<std::pair<std::string, CVector>>& basis) {
  const double total = state.norm_squared();
  std::vector<Branch> out;
  for (const auto& [token, v] : basis) {
    PureState post = project(state, parties, v);
    const double p = post.norm_squared() / total;
    if (p <= kBranchFloor) continue;
    out.push_back({token, p, post.normalized()});
  }
  return out;
}

std::vector<std::pair<std::string, CVector>> bell_pairs(bool reduced) {
  std::vector<std::pair<std::string, CVector>> out;
  for (auto b : kBellOutcomes) {
    if (reduced && (b == BellOutcome::PsiPlus || b == BellOutcome::PsiMinus)) continue;
    out.emplace_back(std::string(bell_token(b)), bell_vector(b));
  }
  return out;
}

struct Step {
  StageKind kind;
  std::vector<std::string> parties;
  std::string ledger_to;
};

struct Context {
  const ProtocolConfig& config;
  std::vector<std::string> labels;
  std::vector<Step> steps;
  std::vector<EntGraph> graphs;  // one per stage, branch independent
  std::string receiver;
};

Context plan(const ProtocolConfig& config) {
  Context ctx{config, protocol_labels(config.n), {}, {}, {}};
  const std::vector<std::string> ch(ctx.labels.begin() + 1, ctx.labels.end());
  ctx.receiver = ch.back();

  std::size_t pairs = 0;
  switch (config.strategy.kind) {
    case Strategy::Kind::Pairwise: pairs = (config.n - 2) / 2; break;
    case Strategy::Kind::SequentialRotations: pairs = 0; break;
    case Strategy::Kind::Hybrid: pairs = config.strategy.pairs; break;
  }

  ctx.steps.push_back({StageKind::AliceMeasurement, {"z", ch[0]}, ch[1]});
  std::size_t i = 1;
  for (std::size_t p = 0; p < pairs; ++p, i += 2)
    ctx.steps.push_back({StageKind::BipartiteDisentangling, {ch[i], ch[i + 1]}, ctx.receiver});
  for (; i + 1 < ch.size(); ++i) ctx.steps.push_back({StageKind::SingleQubitRotation, {ch[i]}, ch[i + 1]});

  std::map<std::string, NodeStatus> statuses{{"z", NodeStatus::Source}};
  EntPolynomial channel;
  channel.insert(Monomial(LabelSet(ch.begin(), ch.end())));
  for (const auto& l : ch) statuses.emplace(l, NodeStatus::Channel);
  EntGraph g = from_polynomial(channel, statuses);
  ctx.graphs.push_back(g);
  g = bind_virtual_pair(g, "z", ch[0]);
  ctx.graphs.push_back(g);
  for (const auto& s : ctx.steps) {
    switch (s.kind) {
      case StageKind::AliceMeasurement: g = finalize_measurement(g, s.parties[0], s.parties[1]); break;
      case StageKind::BipartiteDisentangling: g = split_pair(g, s.parties[0], s.parties[1]); break;
      default: g = release_measured(g, s.parties[0]); break;
    }
    ctx.graphs.push_back(g);
  }
  ctx.graphs.push_back(mark_received(g, ctx.receiver));
  return ctx;
}

std::vector<Branch> measure_step(const Context& ctx, const Step& s, const PureState& state) {
  switch (s.kind) {
    case StageKind::AliceMeasurement: return alice_bell_measure(state, s.parties[0], s.parties[1]);
    case StageKind::BipartiteDisentangling: return reduced_bell_measure(state, s.parties[0], s.parties[1]);
    default: return rotated_measure(state, s.parties[0], ctx.config.omega);
  }
}

double pair_fidelity(const DenseMatrix& rho, const CVector& v) {
  return (v.adjoint() * rho.entries() * v)(0, 0).real();
}

ProtocolTrace complete(const Context& ctx, ProtocolTrace trace, PureState state) {
  Eigen::Matrix2cd net = Eigen::Matrix2cd::Identity();
  for (std::size_t k = 0; k < ctx.steps.size(); ++k) {
    net = net * correction_for(trace.outcomes[k], ctx.steps[k].kind, ctx.config.omega, ctx.config.corrections);
  }
  const std::vector<std::string> recv{ctx.receiver};
  state = apply_local(state, recv, CMatrix(net)).normalized();
  const auto& alice = trace.outcomes.front();
  if (alice == "Psi+" || alice == "Psi-") {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    state = apply_local(state, std::vector<std::string>{"z"}, x);
  }

  const DenseMatrix rho = outer(state);
  const PureState target = input_qubit(ctx.config.input, ctx.receiver);
  const DenseMatrix rho_r = partial_trace(rho, {ctx.receiver});
  trace.fidelity = pair_fidelity(rho_r, target.amplitudes());

  // After every measurement the state is a product, so any nonzero slice
  // through the receiver is its state.
  Eigen::Index peak = 0;
  state.amplitudes().cwiseAbs().maxCoeff(&peak);
  auto digits = state.reg().digits(static_cast<std::size_t>(peak));
  const std::size_t rpos = state.reg().position(ctx.receiver);
  Eigen::Vector2cd slice;
  for (std::size_t d = 0; d < 2; ++d) {
    digits[rpos] = d;
    slice(static_cast<Eigen::Index>(d)) = state.amplitude(digits);
  }
  trace.receiver_state = slice.normalized();

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& s : ctx.steps)
    if (s.kind != StageKind::SingleQubitRotation) pairs.emplace_back(s.parties[0], s.parties[1]);
  for (const auto& [a, b] : pairs) {
    const DenseMatrix rho_p = partial_trace(rho, {a, b});
    const double fp = pair_fidelity(rho_p, bell_vector(BellOutcome::PhiPlus));
    const double fm = pair_fidelity(rho_p, bell_vector(BellOutcome::PhiMinus));
    trace.residual_pairs.push_back({a, b, fp >= fm ? "Phi+" : "Phi-", std::max(fp, fm)});
  }

  trace.stages.push_back({StageKind::Completion, "", 1.0, {}, ctx.graphs.back(), state});
  return trace;
}

void advance(const Context& ctx, std::size_t step, ProtocolTrace trace, const PureState& state,
             std::vector<ProtocolTrace>& out, std::mt19937_64* rng) {
  if (step == ctx.steps.size()) {
    out.push_back(complete(ctx, std::move(trace), state));
    return;
  }
  const Step& s = ctx.steps[step];
  auto branches = measure_step(ctx, s, state);
  if (rng) {
    const double u = static_cast<double>((*rng)() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    std::size_t pick = branches.size() - 1;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      acc += branches[i].probability;
      if (u < acc) {
        pick = i;
        break;
      }
    }
    branches = {branches[pick]};
  }
  for (auto& b : branches) {
    ProtocolTrace next = trace;
    next.outcomes.push_back(b.outcome);
    next.probability *= b.probability;
    LedgerEntry entry{s.parties[0], s.ledger_to, s.kind == StageKind::SingleQubitRotation ? 1 : 2, b.outcome};
    if (s.kind == StageKind::AliceMeasurement) entry.sender = s.parties[1];
    next.stages.push_back({s.kind, b.outcome, b.probability, {entry}, ctx.graphs[step + 2], b.post});
    advance(ctx, step + 1, std::move(next), b.post, out, rng);
  }
}

}  // namespace

std::vector<ProtocolTrace> run(const ProtocolConfig& config) {
  validate(config);
  const Context ctx = plan(config);
  const PureState initial = tensor(input_qubit(config.input, "z"), ghz(config.n));

  ProtocolTrace root;
  root.receiver = ctx.receiver;
  root.stages.push_back({StageKind::InitialPreparation, "", 1.0, {}, ctx.graphs[0], initial});
  root.stages.push_back({StageKind::InitialBasisChange, "", 1.0, {}, ctx.graphs[1], initial});

  std::vector<ProtocolTrace> out;
  if (config.sample_seed) {
    std::mt19937_64 rng(*config.sample_seed);
    advance(ctx, 0, std::move(root), initial, out, &rng);
  } else {
    advance(ctx, 0, std::move(root), initial, out, nullptr);
  }
  return out;
}

std::vector<Branch> alice_bell_measure(const PureState& state, const std::string& source, const std::string& partner) {
  return measure_in(state, {source, partner}, bell_pairs(false));
}

std::vector<Branch> reduced_bell_measure(const PureState& state, const std::string& x, const std::string& y) {
  auto out = measure_in(state, {x, y}, bell_pairs(true));
  double total = 0.0;
  for (const auto& b : out) total += b.probability;
  if (std::abs(total - 1.0) > 1e-12)
    throw ContractError("pair " + x + y + " is not confined to the Phi+/Phi- span");
  return out;
}

std::vector<Branch> rotated_measure(const PureState& state, const std::string& qubit, const RotationAngle& w) {
  auto [plus, minus] = rotated_basis(w, qubit);
  return measure_in(state, {qubit}, {{"+", plus.amplitudes()}, {"-", minus.amplitudes()}});
}

Eigen::Matrix2cd correction_for(std::string_view outcome, StageKind stage, const RotationAngle& w,
                                CorrectionVariant variant) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const Eigen::Matrix2cd x = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  const Eigen::Matrix2cd z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  const double c = std::cos(w.omega()), s = std::sin(w.omega());
  switch (stage) {
    case StageKind::AliceMeasurement:
      if (outcome == "Phi+") return Eigen::Matrix2cd::Identity();
      if (outcome == "Phi-") return z;
      if (outcome == "Psi+") return x;
      if (outcome == "Psi-") return z * x;
      break;
    case StageKind::BipartiteDisentangling:
      if (outcome == "Phi+") return Eigen::Matrix2cd::Identity();
      if (outcome == "Phi-") return z;
      break;
    case StageKind::SingleQubitRotation:
      if (outcome == "+") {
        m.diagonal() << (variant == CorrectionVariant::ExactInverse ? Eigen::Vector2cd(-1.0 / s, 1.0 / c)
                                                                     : Eigen::Vector2cd(1.0 / c, -1.0 / s));
        return m;
      }
      if (outcome == "-") {
        m.diagonal() << (variant == CorrectionVariant::ExactInverse ? Eigen::Vector2cd(1.0 / c, 1.0 / s)
                                                                     : Eigen::Vector2cd(1.0 / s, 1.0 / c));
        return m;
      }
      break;
    default:
      break;
  }
  throw ArgumentError("no correction for outcome '" + std::string(outcome) + "' at stage " +
                      std::string(stage_name(stage)));
}

double fidelity(const PureState& a, const PureState& b) {
  const double na = a.norm_squared(), nb = b.norm_squared();
  if (na == 0.0 || nb == 0.0) throw ArgumentError("fidelity of a zero vector");
  return std::norm(inner(a, b)) / (na * nb);
}

namespace {

nlohmann::json complex_pair(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

}  // namespace

std::string trace_to_json(const ProtocolConfig& config, const std::vector<ProtocolTrace>& traces) {
  using nlohmann::json;
  json cfg{{"corrections", config.corrections == CorrectionVariant::ExactInverse ? "exact" : "paper"},
           {"mode", config.sample_seed ? "sample" : "enumerate"},
           {"n", config.n},
           {"omega", config.omega.omega()},
           {"phi", config.input.phi()},
           {"strategy", config.strategy.to_string()},
           {"theta", config.input.theta()}};
  if (config.sample_seed) cfg["seed"] = *config.sample_seed;

  json branches = json::array();
  for (std::size_t bi = 0; bi < traces.size(); ++bi) {
    const auto& t = traces[bi];
    json stages = json::array();
    for (std::size_t si = 0; si < t.stages.size(); ++si) {
      const auto& s = t.stages[si];
      json amps = json::array();
      for (const auto& a : s.state.amplitudes()) amps.push_back(complex_pair(a));
      json ledger = json::array();
      for (const auto& e : s.ledger)
        ledger.push_back({{"bits", e.bits}, {"outcome", e.outcome}, {"receiver", e.receiver}, {"sender", e.sender}});
      stages.push_back({{"amplitudes", amps},
                        {"graph", json::parse(to_json(s.graph))},
                        {"index", si},
                        {"ledger", ledger},
                        {"name", stage_name(s.kind)},
                        {"outcome", s.outcome},
                        {"probability", s.probability}});
    }
    json residual = json::array();
    for (const auto& r : t.residual_pairs)
      residual.push_back({{"bell", r.bell}, {"fidelity", r.fidelity}, {"pair", json::array({r.a, r.b})}});
    branches.push_back({{"fidelity", t.fidelity},
                        {"index", bi},
                        {"ledger_bits", t.ledger_bits()},
                        {"outcomes", t.outcomes},
                        {"probability", t.probability},
                        {"receiver", t.receiver},
                        {"receiver_state", json::array({complex_pair(t.receiver_state(0)),
                                                        complex_pair(t.receiver_state(1))})},
                        {"residual_pairs", residual},
                        {"stages", stages}});
  }
  return json{{"branches", branches}, {"config", cfg}}.dump(1) + "\n";
}

}  // namespace entangraph
