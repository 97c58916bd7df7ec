#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "entangraph/tensor.hpp"

namespace entangraph {

struct AppendixCheck {
  std::string id;      // e.g. "matrix abc", "pt abcd^T_a", "eigvec abc v4 schmidt"
  bool gating = true;  // informational checks never fail the report
  bool passed = false;
  std::string detail;
};

struct AppendixReport {
  std::vector<AppendixCheck> checks;

  bool passed() const;
  std::size_t failures() const;
  /// One "PASS|FAIL|INFO id: detail" line per check.
  std::string to_text() const;
  std::string to_json() const;
};

/// The expected tables compiled into the library.
std::string_view embedded_appendix_tables();

/// 12 x the normalized reduced density matrix of psi34() on `parties`
/// (the qudit is always traced out).
DenseMatrix appendix_matrix(const LabelSet& parties);

/// Recomputes every table of `tables_json` and compares.
/// ArgumentError on a malformed table file.
AppendixReport verify_appendix(std::string_view tables_json = embedded_appendix_tables());

}  // namespace entangraph
