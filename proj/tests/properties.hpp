#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "entangraph/analyzer.hpp"
#include "entangraph/graph.hpp"
#include "entangraph/polynomial.hpp"
#include "entangraph/states.hpp"
#include "entangraph/teleport.hpp"
#include "support.hpp"

namespace props {

using namespace entangraph;

struct Result {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void record(bool ok, const std::function<std::string()>& describe) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
};

inline LabelSet random_subset(std::mt19937_64& rng, const std::vector<std::string>& labels, std::size_t lo,
                              std::size_t hi) {
  std::vector<std::string> pool = labels;
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)};
}

inline std::string text(const LabelSet& s) {
  std::string out;
  for (const auto& l : s) out += l;
  return out;
}

inline EntPolynomial random_polynomial(std::mt19937_64& rng, std::size_t letters = 6) {
  const auto labels = alphabetic_labels(letters);
  EntPolynomial p;
  const int terms = std::uniform_int_distribution<int>(0, 8)(rng);
  for (int i = 0; i < terms; ++i) p.insert(Monomial(random_subset(rng, labels, 2, 4)));
  return p;
}

inline EntGraph random_graph(std::mt19937_64& rng) {
  const auto labels = alphabetic_labels(std::uniform_int_distribution<std::size_t>(3, 7)(rng));
  EntGraph g;
  for (const auto& l : labels) g.add_node(l, NodeStatus::Channel);
  std::bernoulli_distribution edge(0.35);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (edge(rng)) g.add_edge(labels[i], labels[j], EdgeStyle::Solid);
  const int hubs = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int h = 0; h < hubs; ++h) g.add_hub(random_subset(rng, labels, 3, std::min<std::size_t>(5, labels.size())));
  return g;
}

// Hub removal one at a time, in a random order, until no hub is redundant.
inline EntGraph remove_hubs_in_random_order(EntGraph g, std::mt19937_64& rng) {
  auto chained = [&](const LabelSet& members) {
    LabelSet seen{*members.begin()};
    std::vector<std::string> stack{*members.begin()};
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : g.solid_edges()) {
        const std::string* other = a == cur ? &b : (b == cur ? &a : nullptr);
        if (other && members.count(*other) && seen.insert(*other).second) stack.push_back(*other);
      }
    }
    return seen.size() == members.size();
  };
  for (;;) {
    std::vector<LabelSet> hubs(g.hubs().begin(), g.hubs().end());
    std::shuffle(hubs.begin(), hubs.end(), rng);
    auto it = std::find_if(hubs.begin(), hubs.end(), chained);
    if (it == hubs.end()) return g;
    g.remove_hub(*it);
  }
}

// PPT spectra of complementary cuts coincide.
inline Result ppt_complement(std::uint64_t seed, int cases) {
  Result r{"ppt complement spectra"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const std::size_t parties = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    std::vector<std::size_t> dims;
    std::size_t total = 1;
    for (std::size_t p = 0; p < parties; ++p) {
      const std::size_t d = total * 3 <= 36 ? std::uniform_int_distribution<std::size_t>(2, 3)(rng) : 2;
      dims.push_back(d);
      total *= d;
    }
    const auto labels = alphabetic_labels(parties);
    const Register reg(dims, labels);
    const auto rho = support::random_density(rng, reg, std::uniform_int_distribution<int>(1, 4)(rng));
    const auto a = random_subset(rng, labels, 1, parties - 1);
    LabelSet b;
    for (const auto& l : labels)
      if (!a.count(l)) b.insert(l);
    const auto sa = support::to_vector(hermitian_eigen(partial_transpose(rho, a)).values);
    const auto sb = support::to_vector(hermitian_eigen(partial_transpose(rho, b)).values);
    const double d = support::max_abs_diff(sa, sb);
    r.record(d <= 1e-9, [&] {
      std::ostringstream os;
      os << "cut " << text(a) << " of " << parties << " parties: deviation " << d;
      return os.str();
    });
  }
  return r;
}

inline Result simplify_idempotent(std::uint64_t seed, int cases) {
  Result r{"simplify idempotence"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const auto p = random_polynomial(rng);
    const auto once = simplify(p);
    const auto twice = simplify(once);
    r.record(once == twice, [&] { return p.to_string() + " -> " + once.to_string() + " -> " + twice.to_string(); });
  }
  return r;
}

inline Result rule2_order_independent(std::uint64_t seed, int cases) {
  Result r{"redundant-hub removal order independence"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const auto g = random_graph(rng);
    const auto want = remove_redundant_virtuals(g);
    bool ok = remove_redundant_virtuals(want) == want;
    for (int k = 0; k < 3 && ok; ++k) ok = remove_hubs_in_random_order(g, rng) == want;
    r.record(ok, [&] { return "graph " + to_json(g); });
  }
  return r;
}

// Corpus: psi34, ghz(2..5) and a Bell pair next to product qubits, each
// rotated by random local unitaries.
inline DenseMatrix corpus_state(std::mt19937_64& rng, std::string& name) {
  const int pick = std::uniform_int_distribution<int>(0, 5)(rng);
  PureState psi = ghz(2);
  if (pick == 0) {
    name = "psi34";
    const auto p = support::random_local_unitaries(rng, psi34());
    return partial_trace(outer(p), {"a", "b", "c", "d"});
  }
  if (pick <= 4) {
    name = "ghz" + std::to_string(pick + 1);
    psi = ghz(static_cast<std::size_t>(pick + 1));
  } else {
    const std::size_t extra = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    name = "bell+" + std::to_string(extra);
    psi = ghz(2);
    for (std::size_t i = 0; i < extra; ++i)
      psi = tensor(psi, PureState(Register::qubits({std::string(1, static_cast<char>('c' + i))}),
                                  support::random_vector(rng, 2)));
  }
  return outer(support::random_local_unitaries(rng, psi));
}

inline Result trace_commutes_with_variable_zero(std::uint64_t seed, int cases) {
  Result r{"trace / variable-zero commutation"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    std::string name;
    const auto rho = corpus_state(rng, name);
    const std::vector<std::string> labels(rho.reg().labels().begin(), rho.reg().labels().end());
    const auto x = labels[std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng)];
    LabelSet keep(labels.begin(), labels.end());
    keep.erase(x);
    const auto p = extract_polynomial(rho);
    const auto traced = extract_polynomial(partial_trace(rho, keep));
    const auto zeroed = simplify(set_variable_zero(p, x));
    // The same statement on the graph side.
    const auto g = from_polynomial(p);
    const bool graph_ok = !g.has_node(x) || to_polynomial(remove_labeled_node(g, x)) == set_variable_zero(p, x);
    r.record(traced == zeroed && graph_ok, [&] {
      return name + " drop " + x + ": traced " + traced.to_string() + ", zeroed " + zeroed.to_string();
    });
  }
  return r;
}

inline Result sample_determinism(std::uint64_t seed, int cases) {
  Result r{"sample-mode seed determinism"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta(0.0, 3.14159), phi(0.0, 6.28318), omega(0.05, 1.5);
  for (int c = 0; c < cases; ++c) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    Strategy s = kind == 0 ? Strategy::pairwise() : kind == 1 ? Strategy::sequential_rotations()
                                                              : Strategy::hybrid((n - 2) / 2);
    ProtocolConfig cfg{n, InputQubitParams(theta(rng), phi(rng)), RotationAngle(omega(rng)), s, rng(),
                       CorrectionVariant::ExactInverse};
    const auto a = trace_to_json(cfg, run(cfg));
    const auto b = trace_to_json(cfg, run(cfg));
    r.record(a == b, [&] { return "n=" + std::to_string(n) + " seed " + std::to_string(*cfg.sample_seed); });
  }
  return r;
}

}  // namespace props
