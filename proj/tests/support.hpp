#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "entangraph/tensor.hpp"

namespace support {

using namespace entangraph;

inline CVector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v.normalized();
}

inline CMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

/// Mixture of `rank` random pure states with random weights, trace 1.
inline DenseMatrix random_density(std::mt19937_64& rng, const Register& reg, int rank) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const auto d = static_cast<Eigen::Index>(reg.dimension());
  CMatrix rho = CMatrix::Zero(d, d);
  for (int k = 0; k < rank; ++k) {
    const CVector v = random_vector(rng, d);
    rho += u(rng) * v * v.adjoint();
  }
  return DenseMatrix(reg, rho / rho.trace().real());
}

/// Independent eigenvalue oracle.
inline std::vector<double> oracle_eigenvalues(const CMatrix& m) {
  Eigen::MatrixXcd a = m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

inline std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Independent random unitary on each party.
inline PureState random_local_unitaries(std::mt19937_64& rng, const PureState& psi) {
  PureState out = psi;
  for (std::size_t p = 0; p < psi.reg().parties(); ++p) {
    const std::vector<std::string> label{std::string(psi.reg().labels()[p])};
    out = apply_local(out, label, random_unitary(rng, static_cast<Eigen::Index>(psi.reg().dims()[p])));
  }
  return out;
}

/// Two-qubit concurrence: sqrt-eigenvalues of rho (Y x Y) conj(rho) (Y x Y).
inline double concurrence(const CMatrix& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd r = Eigen::Matrix4cd(rho) * yy * Eigen::Matrix4cd(rho).conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r);
  std::vector<double> l;
  for (const auto& x : es.eigenvalues()) l.push_back(std::sqrt(std::max(0.0, x.real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace support
