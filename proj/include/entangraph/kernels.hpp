#pragma once

// Index-level kernels over multi-party matrices. Party dimensions are given
// explicitly; the leftmost party is the most significant digit.

#include <Eigen/Core>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace entangraph {

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace detail {

// For each flat index, the flat index of its `subset` digits and of the
// remaining digits (both in register order).
struct SplitIndex {
  std::vector<std::size_t> inner;
  std::vector<std::size_t> outer;
  std::size_t inner_dim = 1;
  std::size_t outer_dim = 1;
};

inline SplitIndex split_index(std::span<const std::size_t> dims, std::span<const std::size_t> subset) {
  std::vector<bool> in(dims.size(), false);
  for (auto p : subset) in[p] = true;
  SplitIndex s;
  for (std::size_t k = 0; k < dims.size(); ++k) (in[k] ? s.inner_dim : s.outer_dim) *= dims[k];
  const std::size_t total = s.inner_dim * s.outer_dim;
  s.inner.resize(total);
  s.outer.resize(total);
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t inner = 0, outer = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (in[k]) inner = inner * dims[k] + digit[k];
      else outer = outer * dims[k] + digit[k];
    }
    s.inner[idx] = inner;
    s.outer[idx] = outer;
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++digit[k] < dims[k]) break;
      digit[k] = 0;
    }
  }
  return s;
}

}  // namespace detail

/// Trace out every party not listed in `keep` (positions, ascending).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  const auto s = detail::split_index(dims, keep);
  // full[k * outer_dim + t] is the flat index with kept part k and traced part t.
  std::vector<std::size_t> full(s.inner.size());
  for (std::size_t idx = 0; idx < full.size(); ++idx) full[s.inner[idx] * s.outer_dim + s.outer[idx]] = idx;

  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(s.inner_dim), static_cast<Eigen::Index>(s.inner_dim));
  for (std::size_t i = 0; i < s.inner_dim; ++i)
    for (std::size_t j = 0; j < s.inner_dim; ++j) {
      typename Derived::Scalar acc(0);
      for (std::size_t t = 0; t < s.outer_dim; ++t)
        acc += rho(static_cast<Eigen::Index>(full[i * s.outer_dim + t]),
                   static_cast<Eigen::Index>(full[j * s.outer_dim + t]));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return out;
}

/// Transpose the digits of the parties at `subset` between row and column.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_transpose(
    const Eigen::MatrixBase<Derived>& rho, std::span<const std::size_t> dims, std::span<const std::size_t> subset) {
  const auto s = detail::split_index(dims, subset);
  std::vector<std::size_t> full(s.inner.size());
  for (std::size_t idx = 0; idx < full.size(); ++idx) full[s.inner[idx] * s.outer_dim + s.outer[idx]] = idx;

  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix out(rho.rows(), rho.cols());
  for (std::size_t r = 0; r < full.size(); ++r)
    for (std::size_t c = 0; c < full.size(); ++c) {
      const std::size_t r2 = full[s.inner[c] * s.outer_dim + s.outer[r]];
      const std::size_t c2 = full[s.inner[r] * s.outer_dim + s.outer[c]];
      out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
          rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  return out;
}

}  // namespace entangraph
