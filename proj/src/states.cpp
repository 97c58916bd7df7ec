#include "entangraph/states.hpp"

#include <cmath>
#include <numbers>

#include "entangraph/errors.hpp"

namespace entangraph {

InputQubitParams::InputQubitParams(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ArgumentError("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw ArgumentError("phi must lie in [0, 2 pi)");
}

RotationAngle::RotationAngle(double omega) : omega_(omega) {
  if (!(omega > 0.0 && omega < std::numbers::pi / 2.0)) throw ArgumentError("omega must lie in (0, pi/2)");
}

std::string_view bell_token(BellOutcome b) {
  switch (b) {
    case BellOutcome::PhiPlus: return "Phi+";
    case BellOutcome::PhiMinus: return "Phi-";
    case BellOutcome::PsiPlus: return "Psi+";
    case BellOutcome::PsiMinus: return "Psi-";
  }
  return "";
}

CVector bell_vector(BellOutcome b) {
  const double h = std::numbers::sqrt2 / 2.0;
  CVector v = CVector::Zero(4);
  switch (b) {
    case BellOutcome::PhiPlus: v << h, 0, 0, h; break;
    case BellOutcome::PhiMinus: v << h, 0, 0, -h; break;
    case BellOutcome::PsiPlus: v << 0, h, h, 0; break;
    case BellOutcome::PsiMinus: v << 0, h, -h, 0; break;
  }
  return v;
}

PureState ghz(std::size_t n) {
  if (n < 2) throw ArgumentError("ghz: need at least two parties");
  return ghz(alphabetic_labels(n));
}

PureState ghz(std::vector<std::string> labels) {
  if (labels.size() < 2) throw ArgumentError("ghz: need at least two parties");
  Register reg = Register::qubits(std::move(labels));
  CVector v = CVector::Zero(static_cast<Eigen::Index>(reg.dimension()));
  v(0) = std::numbers::sqrt2 / 2.0;
  v(v.size() - 1) = std::numbers::sqrt2 / 2.0;
  return {std::move(reg), std::move(v)};
}

PureState input_qubit(const InputQubitParams& p, std::string label) {
  CVector v(2);
  v << std::cos(p.theta() / 2.0), std::polar(std::sin(p.theta() / 2.0), p.phi());
  return {Register::qubits({std::move(label)}), std::move(v)};
}

std::array<PureState, 4> bell_basis() {
  const auto reg = Register::qubits({"a", "b"});
  return {PureState(reg, bell_vector(BellOutcome::PhiPlus)), PureState(reg, bell_vector(BellOutcome::PhiMinus)),
          PureState(reg, bell_vector(BellOutcome::PsiPlus)), PureState(reg, bell_vector(BellOutcome::PsiMinus))};
}

std::pair<PureState, PureState> rotated_basis(const RotationAngle& w, std::string label) {
  const double c = std::cos(w.omega()), s = std::sin(w.omega());
  const auto reg = Register::qubits({std::move(label)});
  CVector plus(2), minus(2);
  plus << -s, c;
  minus << c, s;
  return {PureState(reg, plus), PureState(reg, minus)};
}

PureState psi34() {
  Register reg({2, 2, 2, 2, 6}, {"a", "b", "c", "d", kQuditLabel});
  CVector v = CVector::Zero(static_cast<Eigen::Index>(reg.dimension()));
  const double h = std::numbers::sqrt2 / 2.0;
  auto add = [&](std::array<std::size_t, 4> q, std::size_t nu) {
    const std::array<std::size_t, 5> digits{q[0], q[1], q[2], q[3], nu};
    v(static_cast<Eigen::Index>(reg.index(digits))) += h;
  };
  // |3^1>_abc |1>_d |0>
  add({0, 0, 0, 1}, 0), add({1, 1, 1, 1}, 0);
  // |3^1>_abd |0>_c |1>
  add({0, 0, 0, 0}, 1), add({1, 1, 0, 1}, 1);
  // |3^1>_acd |1>_b |2>
  add({0, 1, 0, 0}, 2), add({1, 1, 1, 1}, 2);
  // |3^1>_bcd |0>_a |3>
  add({0, 0, 0, 0}, 3), add({0, 1, 1, 1}, 3);
  // |2^1>_ab |11>_cd |4>
  add({0, 0, 1, 1}, 4), add({1, 1, 1, 1}, 4);
  // |2^1>_cd |11>_ab |5>
  add({1, 1, 0, 0}, 5), add({1, 1, 1, 1}, 5);
  return {std::move(reg), std::move(v)};
}

}  // namespace entangraph
