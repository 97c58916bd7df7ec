#pragma once

#include <map>
#include <string>
#include <vector>

#include "entangraph/polynomial.hpp"
#include "entangraph/tensor.hpp"

namespace entangraph {

/// A partial-transpose eigenvalue is "negative" below -kNegativeEigenvalueTolerance.
inline constexpr double kNegativeEigenvalueTolerance = 1e-9;
/// Density matrices may dip this far below zero and still count as PSD.
inline constexpr double kPsdTolerance = 1e-9;

struct CutSpectrum {
  LabelSet subset;                 // T
  LabelSet cut;                    // A, a nonempty proper subset of T
  std::vector<double> eigenvalues; // of (rho_T)^{T_A}, ascending
  double min_eigenvalue = 0.0;
  bool npt = false;
};

/// Every (T, A) with |T| >= 2, ordered by T then A (size ascending, then
/// register order).
struct PptReport {
  std::vector<CutSpectrum> entries;

  const CutSpectrum* find(const LabelSet& subset, const LabelSet& cut) const;
  std::vector<const CutSpectrum*> cuts_of(const LabelSet& subset) const;
};

/// Subsets of the register's labels of size >= min_size, ordered by size then
/// register position.
std::vector<LabelSet> enumerate_subsets(const Register& reg, std::size_t min_size);

/// Partial-transpose spectra of every reduced state over every cut. The
/// input is normalized by its trace; ContractError when it is not Hermitian
/// or not PSD within kPsdTolerance.
PptReport ppt_sweep(const DenseMatrix& rho);

/// True iff rho_T has an eigenvector (eigenvalue > 1e-9, non-degenerate)
/// with Schmidt rank >= 2 across every bipartition of its parties.
/// Eigenvectors of degenerate eigenvalues are skipped: their basis is arbitrary.
bool eigenvector_fallback(const DenseMatrix& rho_T);

/// Subsets declared entangled: pairs by PPT alone; larger subsets when
/// every cut is NPT, or when cuts are mixed and eigenvector_fallback holds.
/// These are procedure verdicts, not a complete separability test.
EntPolynomial entangled_subsets(const DenseMatrix& rho);

/// simplify(entangled_subsets(rho)).
EntPolynomial extract_polynomial(const DenseMatrix& rho);

struct SubsetVerdict {
  LabelSet subset;
  std::size_t npt_cuts = 0;
  std::size_t total_cuts = 0;
  bool fallback_used = false;
  bool fallback_result = false;
  bool entangled = false;
};

/// Full analysis with intermediate verdicts, computed from one sweep.
struct Analysis {
  PptReport report;
  std::vector<SubsetVerdict> verdicts;
  EntPolynomial entangled;
  EntPolynomial polynomial;
};

Analysis analyze(const DenseMatrix& rho);

/// Sorted-key JSON with eigenvalues in fixed 6-decimal notation; newline-terminated.
std::string analysis_to_json(const Analysis& a);

}  // namespace entangraph
