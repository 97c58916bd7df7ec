#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <type_traits>

#include "entangraph/errors.hpp"

namespace entangraph {

template <typename Scalar>
struct HermitianEigen {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  /// Ascending.
  Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> values;
  /// Column k is the eigenvector of values(k).
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  int sweeps = 0;
};

namespace detail {

template <typename Derived>
typename Derived::RealScalar off_diagonal_norm(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  Real acc = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) acc += Eigen::numext::abs2(a(i, j));
  return std::sqrt(acc);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian (or real symmetric) matrix by cyclic
/// Jacobi sweeps.
///
/// Each pivot (p,q) is annihilated by the unitary diag(1, e^{-ia}) R(t), where
/// a is the phase of A(p,q) and R the classical real rotation; the result is
/// A' = J^H A J. Sweeps stop once the off-diagonal Frobenius norm falls to
/// tol * ||A||_F. Throws ContractError for non-Hermitian input (beyond 1e-10
/// relative) and NumericError after max_sweeps.
template <typename Derived>
HermitianEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      double tol = 1e-12, int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (input.rows() != input.cols()) throw ContractError("jacobi_eigen: matrix is not square");
  const Eigen::Index n = input.rows();
  Matrix a = input;
  const Real norm = a.norm();
  if (!std::isfinite(static_cast<double>(norm))) throw ContractError("jacobi_eigen: non-finite entries");
  const Real herm_gap = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (n > 0 && herm_gap > Real(1e-10) * std::max<Real>(Real(1), a.cwiseAbs().maxCoeff())) {
    throw ContractError("jacobi_eigen: matrix is not Hermitian");
  }
  // Symmetrize so round-off in the input cannot bias the rotations.
  a = (a + a.adjoint()).eval() * Real(0.5);

  HermitianEigen<Scalar> out;
  Matrix v = Matrix::Identity(n, n);
  const Real target = Real(tol) * norm;

  int sweep = 0;
  while (detail::off_diagonal_norm(a) > target) {
    if (sweep == max_sweeps) throw NumericError("jacobi_eigen: no convergence after max sweeps");
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;
        const Scalar phase = apq / mag;
        const Real theta = (Eigen::numext::real(a(q, q)) - Eigen::numext::real(a(p, p))) / (2 * mag);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const Real c = 1 / std::sqrt(t * t + 1);
        const Real s = t * c;
        const Scalar cphase = Eigen::numext::conj(phase);
        // J = [[c, s], [-s conj(e), c conj(e)]] on columns (p, q).
        const Scalar jpp = c, jpq = s, jqp = -s * cphase, jqq = c * cphase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = Eigen::numext::conj(jpp) * apk + Eigen::numext::conj(jqp) * aqk;
          a(q, k) = Eigen::numext::conj(jpq) * apk + Eigen::numext::conj(jqq) * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Eigen::numext::real(a(p, p));
        a(q, q) = Eigen::numext::real(a(q, q));
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return Eigen::numext::real(a(i, i)) < Eigen::numext::real(a(j, j));
  });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = Eigen::numext::real(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

}  // namespace entangraph
