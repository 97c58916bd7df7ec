#pragma once

#include <Eigen/Core>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "entangraph/register.hpp"

namespace entangraph {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::VectorXcd;

/// Square complex matrix over a register (density matrices, operators,
/// partial transposes). Entries are always finite.
class DenseMatrix {
 public:
  DenseMatrix(Register reg, CMatrix entries);

  static DenseMatrix identity(Register reg);

  const Register& reg() const { return reg_; }
  const CMatrix& entries() const { return entries_; }
  Eigen::Index dimension() const { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  Complex trace() const { return entries_.trace(); }
  double norm() const { return entries_.norm(); }
  /// max |M(i,j) - conj(M(j,i))|.
  double hermiticity_gap() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_gap() <= tol; }

  DenseMatrix scaled(double factor) const { return {reg_, entries_ * factor}; }
  /// Divided by its (real, positive) trace; ContractError otherwise.
  DenseMatrix normalized() const;

 private:
  Register reg_;
  CMatrix entries_;
};

/// Amplitude vector over a register. Not normalized unless made so.
class PureState {
 public:
  PureState(Register reg, CVector amplitudes);

  static PureState basis(Register reg, std::size_t index);

  const Register& reg() const { return reg_; }
  const CVector& amplitudes() const { return amps_; }
  Complex amplitude(std::span<const std::size_t> digits) const {
    return amps_(static_cast<Eigen::Index>(reg_.index(digits)));
  }

  double norm_squared() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = 1e-12) const { return std::abs(norm_squared() - 1.0) <= tol; }
  /// ArgumentError for the zero vector.
  PureState normalized() const;

 private:
  Register reg_;
  CVector amps_;
};

struct EigenResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // column k pairs with values(k)
  int sweeps = 0;
};

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

/// |psi><psi| (trace = ||psi||^2).
DenseMatrix outer(const PureState& psi);

/// Keeps the parties in `keep` in register order; LabelError on unknown labels.
DenseMatrix partial_trace(const DenseMatrix& rho, const LabelSet& keep);
/// ArgumentError when `subset` is empty or covers every party.
DenseMatrix partial_transpose(const DenseMatrix& rho, const LabelSet& subset);

/// Cyclic complex Jacobi (see jacobi_eigen). ContractError if not Hermitian
/// within 1e-10, NumericError after 100 sweeps.
EigenResult hermitian_eigen(const DenseMatrix& m, double tol = 1e-12);

/// Number of Schmidt coefficients across cut | rest, counting Gram
/// eigenvalues above tol * (largest eigenvalue).
int schmidt_rank(const PureState& psi, const LabelSet& cut, double tol = 1e-8);

/// Apply `op` (square, over `labels` in the given order) to those parties.
PureState apply_local(const PureState& psi, std::span<const std::string> labels, const CMatrix& op);
/// (|target><target| (x) 1) psi, unnormalized; `labels` give the factor order of `target`.
PureState project(const PureState& psi, std::span<const std::string> labels, const CVector& target);
/// <target| psi as a state on the remaining parties (register order).
PureState contract(const PureState& psi, std::span<const std::string> labels, const CVector& target);

Complex inner(const PureState& a, const PureState& b);

}  // namespace entangraph
