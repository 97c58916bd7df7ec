#include "entangraph/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "entangraph/errors.hpp"

namespace entangraph {
namespace {

constexpr double kPositiveEigenvalue = 1e-9;
constexpr double kDegeneracyGap = 1e-7;

LabelSet labels_at(const Register& reg, const std::vector<std::size_t>& pos) {
  LabelSet out;
  for (auto p : pos) out.insert(reg.labels()[p]);
  return out;
}

// Combinations of `pool` (positions) by size ascending, lexicographic within size.
std::vector<std::vector<std::size_t>> combinations(const std::vector<std::size_t>& pool, std::size_t min_size,
                                                   std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = pool.size();
  for (std::size_t k = min_size; k <= max_size && k <= n; ++k) {
    if (k == 0) continue;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::size_t> pick;
      for (auto i : idx) pick.push_back(pool[i]);
      out.push_back(std::move(pick));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

DenseMatrix checked_normalized(const DenseMatrix& rho) {
  if (!rho.is_hermitian(1e-10 * std::max(1.0, rho.entries().cwiseAbs().maxCoeff()))) {
    throw ContractError("density matrix is not Hermitian");
  }
  DenseMatrix n = rho.normalized();
  const auto eig = hermitian_eigen(n);
  if (eig.values.size() > 0 && eig.values(0) < -kPsdTolerance) {
    throw ContractError("density matrix is not positive semidefinite");
  }
  return n;
}

std::vector<CutSpectrum> sweep_subset(const DenseMatrix& rho_t, const LabelSet& subset) {
  std::vector<std::size_t> pool(rho_t.reg().parties());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::vector<CutSpectrum> out;
  for (const auto& cut_pos : combinations(pool, 1, pool.size() - 1)) {
    CutSpectrum cs;
    cs.subset = subset;
    cs.cut = labels_at(rho_t.reg(), cut_pos);
    const auto pt = partial_transpose(rho_t, cs.cut);
    const auto eig = hermitian_eigen(pt);
    cs.eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
    cs.min_eigenvalue = cs.eigenvalues.front();
    cs.npt = cs.min_eigenvalue < -kNegativeEigenvalueTolerance;
    out.push_back(std::move(cs));
  }
  return out;
}

PptReport sweep_normalized(const DenseMatrix& rho) {
  PptReport report;
  for (const auto& subset : enumerate_subsets(rho.reg(), 2)) {
    const auto rho_t = subset.size() == rho.reg().parties() ? rho : partial_trace(rho, subset);
    auto cuts = sweep_subset(rho_t, subset);
    report.entries.insert(report.entries.end(), std::make_move_iterator(cuts.begin()),
                          std::make_move_iterator(cuts.end()));
  }
  return report;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string label_array(const LabelSet& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& l : s) {
    if (!first) out += ", ";
    out += quoted(l);
    first = false;
  }
  return out + "]";
}

}  // namespace

const CutSpectrum* PptReport::find(const LabelSet& subset, const LabelSet& cut) const {
  for (const auto& e : entries)
    if (e.subset == subset && e.cut == cut) return &e;
  return nullptr;
}

std::vector<const CutSpectrum*> PptReport::cuts_of(const LabelSet& subset) const {
  std::vector<const CutSpectrum*> out;
  for (const auto& e : entries)
    if (e.subset == subset) out.push_back(&e);
  return out;
}

std::vector<LabelSet> enumerate_subsets(const Register& reg, std::size_t min_size) {
  std::vector<std::size_t> pool(reg.parties());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  std::vector<LabelSet> out;
  for (const auto& c : combinations(pool, min_size, pool.size())) out.push_back(labels_at(reg, c));
  return out;
}

PptReport ppt_sweep(const DenseMatrix& rho) { return sweep_normalized(checked_normalized(rho)); }

bool eigenvector_fallback(const DenseMatrix& rho_t) {
  const DenseMatrix rho = rho_t.normalized();
  const auto eig = hermitian_eigen(rho);
  const auto n = eig.values.size();
  std::vector<std::size_t> pool(rho.reg().parties());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  const auto cuts = combinations(pool, 1, pool.size() - 1);

  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    if (lambda <= kPositiveEigenvalue) continue;
    const bool degenerate = (k > 0 && std::abs(eig.values(k - 1) - lambda) <= kDegeneracyGap) ||
                            (k + 1 < n && std::abs(eig.values(k + 1) - lambda) <= kDegeneracyGap);
    if (degenerate) continue;
    const PureState v(rho.reg(), eig.vectors.col(k));
    bool genuine = true;
    for (const auto& c : cuts) {
      if (schmidt_rank(v, labels_at(rho.reg(), c)) < 2) {
        genuine = false;
        break;
      }
    }
    if (genuine) return true;
  }
  return false;
}

Analysis analyze(const DenseMatrix& input) {
  const DenseMatrix rho = checked_normalized(input);
  Analysis a;
  a.report = sweep_normalized(rho);
  for (const auto& subset : enumerate_subsets(rho.reg(), 2)) {
    SubsetVerdict v;
    v.subset = subset;
    for (const auto* e : a.report.cuts_of(subset)) {
      ++v.total_cuts;
      if (e->npt) ++v.npt_cuts;
    }
    if (subset.size() == 2 || v.npt_cuts == v.total_cuts) {
      v.entangled = v.npt_cuts > 0;
    } else if (v.npt_cuts > 0) {
      v.fallback_used = true;
      v.fallback_result = eigenvector_fallback(partial_trace(rho, subset));
      v.entangled = v.fallback_result;
    }
    if (v.entangled) a.entangled.insert(Monomial(subset));
    a.verdicts.push_back(std::move(v));
  }
  a.polynomial = simplify(a.entangled);
  return a;
}

EntPolynomial entangled_subsets(const DenseMatrix& rho) { return analyze(rho).entangled; }

EntPolynomial extract_polynomial(const DenseMatrix& rho) { return analyze(rho).polynomial; }

std::string analysis_to_json(const Analysis& a) {
  std::ostringstream os;
  os << "{\n  \"entangled_subsets\": " << quoted(a.entangled.to_string()) << ",\n";
  os << "  \"polynomial\": " << quoted(a.polynomial.to_string()) << ",\n";
  os << "  \"spectra\": [";
  for (std::size_t i = 0; i < a.report.entries.size(); ++i) {
    const auto& e = a.report.entries[i];
    os << (i ? ",\n" : "\n") << "    {\"cut\": " << label_array(e.cut) << ", \"eigenvalues\": [";
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) os << (k ? ", " : "") << fixed6(e.eigenvalues[k]);
    os << "], \"min_eigenvalue\": " << fixed6(e.min_eigenvalue) << ", \"npt\": " << (e.npt ? "true" : "false")
       << ", \"subset\": " << label_array(e.subset) << "}";
  }
  os << (a.report.entries.empty() ? "],\n" : "\n  ],\n");
  os << "  \"verdicts\": [";
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    const auto& v = a.verdicts[i];
    os << (i ? ",\n" : "\n") << "    {\"entangled\": " << (v.entangled ? "true" : "false")
       << ", \"fallback\": " << (v.fallback_used ? (v.fallback_result ? "true" : "false") : "null")
       << ", \"npt_cuts\": " << v.npt_cuts << ", \"subset\": " << label_array(v.subset)
       << ", \"total_cuts\": " << v.total_cuts << "}";
  }
  os << (a.verdicts.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return os.str();
}

}  // namespace entangraph
