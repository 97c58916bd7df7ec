#pragma once

#include <array>
#include <string>
#include <utility>

#include "entangraph/tensor.hpp"

namespace entangraph {

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, theta in [0, pi], phi in [0, 2 pi).
class InputQubitParams {
 public:
  InputQubitParams(double theta, double phi);
  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  double theta_;
  double phi_;
};

/// Rotation angle of the single-qubit measurement basis, strictly inside (0, pi/2).
class RotationAngle {
 public:
  explicit RotationAngle(double omega);
  double omega() const { return omega_; }

 private:
  double omega_;
};

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {BellOutcome::PhiPlus, BellOutcome::PhiMinus,
                                                            BellOutcome::PsiPlus, BellOutcome::PsiMinus};

std::string_view bell_token(BellOutcome b);
/// Two-qubit amplitudes (|00>,|01>,|10>,|11>) of a Bell vector.
CVector bell_vector(BellOutcome b);

/// (|0...0> + |1...1>)/sqrt(2) over parties a, b, c, ...
PureState ghz(std::size_t n);
PureState ghz(std::vector<std::string> labels);

/// The teleported qubit, labeled `label`.
PureState input_qubit(const InputQubitParams& p, std::string label = "z");

/// Phi+, Phi-, Psi+, Psi- over parties a, b.
std::array<PureState, 4> bell_basis();

/// {|+>, |->} with |+> = cos w|1> - sin w|0>, |-> = sin w|1> + cos w|0>,
/// the inverse of |1> = cos w|+> + sin w|->, |0> = -sin w|+> + cos w|->.
std::pair<PureState, PureState> rotated_basis(const RotationAngle& w, std::string label = "a");

/// Four qubits a, b, c, d coupled to a six-level qudit nu: six branches, each
/// a unit vector, deliberately left unnormalized (squared norm 6).
PureState psi34();

/// Label used for the auxiliary qudit of psi34().
inline const std::string kQuditLabel = "ν";

}  // namespace entangraph
