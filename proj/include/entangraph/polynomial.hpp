#pragma once

#include <set>
#include <string>
#include <string_view>

#include "entangraph/register.hpp"

namespace entangraph {

/// A set of at least two party labels that are jointly entangled.
class Monomial {
 public:
  explicit Monomial(LabelSet parties);

  const LabelSet& parties() const { return parties_; }
  std::size_t size() const { return parties_.size(); }
  bool contains(const std::string& label) const { return parties_.count(label) != 0; }
  /// Labels concatenated in sorted order, e.g. "abc".
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  LabelSet parties_;
};

/// Canonical order: larger monomials first, then lexicographic by labels.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

class EntPolynomial {
 public:
  using Container = std::set<Monomial, MonomialOrder>;

  EntPolynomial() = default;
  EntPolynomial(std::initializer_list<Monomial> monomials) : terms_(monomials) {}

  /// `+`-separated monomials over single-letter lowercase variables;
  /// whitespace is ignored. Empty (or all-whitespace) text is the zero
  /// polynomial. ArgumentError on anything else.
  static EntPolynomial parse(std::string_view text);

  bool insert(Monomial m) { return terms_.insert(std::move(m)).second; }
  bool erase(const Monomial& m) { return terms_.erase(m) != 0; }
  bool contains(const Monomial& m) const { return terms_.count(m) != 0; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  LabelSet variables() const;
  /// Canonical text, e.g. "abc+abd+acd+bcd+ab+cd"; "" for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const EntPolynomial& a, const EntPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Container terms_;
};

/// Drops, largest first, every monomial all of whose one-smaller faces are
/// present at the time it is examined.
EntPolynomial simplify(const EntPolynomial& p);

/// Removes every monomial containing `label`.
EntPolynomial set_variable_zero(const EntPolynomial& p, const std::string& label);

}  // namespace entangraph
