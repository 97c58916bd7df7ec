#include "entangraph/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "entangraph/errors.hpp"

namespace entangraph {

Monomial::Monomial(LabelSet parties) : parties_(std::move(parties)) {
  if (parties_.size() < 2) throw ArgumentError("monomial needs at least two parties");
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& l : parties_) out += l;
  return out;
}

bool MonomialOrder::operator()(const Monomial& x, const Monomial& y) const {
  if (x.size() != y.size()) return x.size() > y.size();
  return x.parties() < y.parties();
}

EntPolynomial EntPolynomial::parse(std::string_view text) {
  EntPolynomial p;
  std::string term;
  bool saw_any = false;
  auto flush = [&](bool at_end) {
    if (term.empty()) {
      if (at_end && !saw_any) return;
      throw ArgumentError("polynomial: empty term");
    }
    LabelSet parties;
    for (char ch : term) {
      if (!parties.insert(std::string(1, ch)).second) {
        throw ArgumentError("polynomial: repeated variable in '" + term + "'");
      }
    }
    if (parties.size() < 2) throw ArgumentError("polynomial: term '" + term + "' has fewer than two variables");
    if (!p.insert(Monomial(std::move(parties)))) throw ArgumentError("polynomial: duplicate term '" + term + "'");
    term.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '+') {
      saw_any = true;
      flush(false);
    } else if (ch >= 'a' && ch <= 'z') {
      saw_any = true;
      term.push_back(ch);
    } else {
      throw ArgumentError(std::string("polynomial: unexpected character '") + ch + "'");
    }
  }
  flush(true);
  return p;
}

LabelSet EntPolynomial::variables() const {
  LabelSet out;
  for (const auto& m : terms_) out.insert(m.parties().begin(), m.parties().end());
  return out;
}

std::string EntPolynomial::to_string() const {
  std::string out;
  for (const auto& m : terms_) {
    if (!out.empty()) out += '+';
    out += m.to_string();
  }
  return out;
}

EntPolynomial simplify(const EntPolynomial& p) {
  EntPolynomial out = p;
  // Canonical order already visits larger monomials first.
  std::vector<Monomial> order(p.begin(), p.end());
  for (const auto& m : order) {
    if (m.size() < 3) continue;
    bool all_faces = true;
    for (const auto& drop : m.parties()) {
      LabelSet face = m.parties();
      face.erase(drop);
      if (!out.contains(Monomial(face))) {
        all_faces = false;
        break;
      }
    }
    if (all_faces) out.erase(m);
  }
  return out;
}

EntPolynomial set_variable_zero(const EntPolynomial& p, const std::string& label) {
  EntPolynomial out;
  for (const auto& m : p)
    if (!m.contains(label)) out.insert(m);
  return out;
}

}  // namespace entangraph
