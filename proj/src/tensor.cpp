#include "entangraph/tensor.hpp"

#include <cmath>

#include "entangraph/errors.hpp"
#include "entangraph/jacobi.hpp"
#include "entangraph/kernels.hpp"

namespace entangraph {
namespace {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

// Flat index of the `ordered` parties' digits (in the given order) and of the
// rest (register order), for every flat index of `reg`.
struct OrderedSplit {
  std::vector<std::size_t> inner, outer;
  std::size_t inner_dim = 1, outer_dim = 1;
  Register rest;
};

OrderedSplit ordered_split(const Register& reg, std::span<const std::string> labels) {
  std::vector<std::size_t> pos;
  std::vector<bool> in(reg.parties(), false);
  for (const auto& l : labels) {
    const auto p = reg.position(l);
    if (in[p]) throw LabelError("label '" + l + "' listed twice");
    in[p] = true;
    pos.push_back(p);
  }
  OrderedSplit s;
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < reg.parties(); ++k) {
    if (in[k]) s.inner_dim *= reg.dims()[k];
    else {
      s.outer_dim *= reg.dims()[k];
      rest.push_back(k);
    }
  }
  s.rest = reg.select(rest);
  s.inner.resize(reg.dimension());
  s.outer.resize(reg.dimension());
  for (std::size_t idx = 0; idx < reg.dimension(); ++idx) {
    const auto d = reg.digits(idx);
    std::size_t i = 0, o = 0;
    for (auto p : pos) i = i * reg.dims()[p] + d[p];
    for (auto p : rest) o = o * reg.dims()[p] + d[p];
    s.inner[idx] = i;
    s.outer[idx] = o;
  }
  return s;
}

}  // namespace

DenseMatrix::DenseMatrix(Register reg, CMatrix entries) : reg_(std::move(reg)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(reg_.dimension());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw ArgumentError("dense matrix: expected " + std::to_string(d) + "x" + std::to_string(d) + " entries");
  }
  if (!all_finite(entries_)) throw ArgumentError("dense matrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(Register reg) {
  const auto d = static_cast<Eigen::Index>(reg.dimension());
  return {std::move(reg), CMatrix::Identity(d, d)};
}

double DenseMatrix::hermiticity_gap() const {
  if (entries_.size() == 0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

DenseMatrix DenseMatrix::normalized() const {
  const Complex tr = trace();
  if (!(tr.real() > 0.0) || std::abs(tr.imag()) > 1e-12 * std::abs(tr.real())) {
    throw ContractError("density matrix has non-positive trace");
  }
  return scaled(1.0 / tr.real());
}

PureState::PureState(Register reg, CVector amplitudes) : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
  if (amps_.size() != static_cast<Eigen::Index>(reg_.dimension())) {
    throw ArgumentError("pure state: expected " + std::to_string(reg_.dimension()) + " amplitudes");
  }
  if (!all_finite(amps_)) throw ArgumentError("pure state: non-finite amplitude");
}

PureState PureState::basis(Register reg, std::size_t index) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(reg.dimension()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {std::move(reg), std::move(v)};
}

PureState PureState::normalized() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw ArgumentError("cannot normalize the zero vector");
  return {reg_, amps_ / n};
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  Register reg = a.reg().concat(b.reg());
  return {std::move(reg), kron(a.entries(), b.entries())};
}

PureState tensor(const PureState& a, const PureState& b) {
  Register reg = a.reg().concat(b.reg());
  CVector v(static_cast<Eigen::Index>(reg.dimension()));
  const auto nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return {std::move(reg), std::move(v)};
}

DenseMatrix outer(const PureState& psi) {
  return {psi.reg(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DenseMatrix partial_trace(const DenseMatrix& rho, const LabelSet& keep) {
  if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
  const auto pos = rho.reg().positions(keep);
  return {rho.reg().select(pos), partial_trace(rho.entries(), rho.reg().dims(), pos)};
}

DenseMatrix partial_transpose(const DenseMatrix& rho, const LabelSet& subset) {
  if (subset.empty()) throw ArgumentError("partial_transpose: empty subset");
  const auto pos = rho.reg().positions(subset);
  if (pos.size() == rho.reg().parties()) throw ArgumentError("partial_transpose: subset covers every party");
  return {rho.reg(), partial_transpose(rho.entries(), rho.reg().dims(), pos)};
}

EigenResult hermitian_eigen(const DenseMatrix& m, double tol) {
  const Eigen::MatrixXcd dense = m.entries();
  auto r = jacobi_eigen(dense, tol, 100);
  return {std::move(r.values), std::move(r.vectors), r.sweeps};
}

int schmidt_rank(const PureState& psi, const LabelSet& cut, double tol) {
  if (cut.empty()) throw ArgumentError("schmidt_rank: empty cut");
  const auto pos = psi.reg().positions(cut);
  if (pos.size() == psi.reg().parties()) throw ArgumentError("schmidt_rank: cut covers every party");
  if (psi.norm_squared() == 0.0) throw ArgumentError("schmidt_rank: zero vector");

  const auto s = detail::split_index(psi.reg().dims(), pos);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(s.inner_dim),
                                              static_cast<Eigen::Index>(s.outer_dim));
  for (std::size_t idx = 0; idx < s.inner.size(); ++idx) {
    m(static_cast<Eigen::Index>(s.inner[idx]), static_cast<Eigen::Index>(s.outer[idx])) =
        psi.amplitudes()(static_cast<Eigen::Index>(idx));
  }
  const Eigen::MatrixXcd gram = s.inner_dim <= s.outer_dim ? Eigen::MatrixXcd(m * m.adjoint())
                                                           : Eigen::MatrixXcd(m.adjoint() * m);
  const auto eig = jacobi_eigen(gram, 1e-14, 100);
  const double largest = eig.values.maxCoeff();
  int rank = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > tol * largest) ++rank;
  return rank;
}

PureState apply_local(const PureState& psi, std::span<const std::string> labels, const CMatrix& op) {
  const auto s = ordered_split(psi.reg(), labels);
  if (op.rows() != static_cast<Eigen::Index>(s.inner_dim) || op.cols() != op.rows()) {
    throw ArgumentError("apply_local: operator dimension does not match the parties");
  }
  std::vector<std::size_t> full(s.inner.size());
  for (std::size_t idx = 0; idx < full.size(); ++idx) full[s.inner[idx] * s.outer_dim + s.outer[idx]] = idx;
  const auto& in = psi.amplitudes();
  CVector out = CVector::Zero(in.size());
  for (std::size_t idx = 0; idx < full.size(); ++idx) {
    const std::size_t i = s.inner[idx], o = s.outer[idx];
    Complex acc = 0.0;
    for (std::size_t j = 0; j < s.inner_dim; ++j)
      acc += op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
             in(static_cast<Eigen::Index>(full[j * s.outer_dim + o]));
    out(static_cast<Eigen::Index>(idx)) = acc;
  }
  return {psi.reg(), std::move(out)};
}

PureState project(const PureState& psi, std::span<const std::string> labels, const CVector& target) {
  const auto s = ordered_split(psi.reg(), labels);
  if (target.size() != static_cast<Eigen::Index>(s.inner_dim)) throw ArgumentError("project: target dimension mismatch");
  const PureState reduced = contract(psi, labels, target);
  CVector out(psi.amplitudes().size());
  for (std::size_t idx = 0; idx < s.inner.size(); ++idx) {
    out(static_cast<Eigen::Index>(idx)) =
        target(static_cast<Eigen::Index>(s.inner[idx])) * reduced.amplitudes()(static_cast<Eigen::Index>(s.outer[idx]));
  }
  return {psi.reg(), std::move(out)};
}

PureState contract(const PureState& psi, std::span<const std::string> labels, const CVector& target) {
  const auto s = ordered_split(psi.reg(), labels);
  if (target.size() != static_cast<Eigen::Index>(s.inner_dim)) throw ArgumentError("contract: target dimension mismatch");
  CVector out = CVector::Zero(static_cast<Eigen::Index>(s.outer_dim));
  for (std::size_t idx = 0; idx < s.inner.size(); ++idx) {
    out(static_cast<Eigen::Index>(s.outer[idx])) +=
        std::conj(target(static_cast<Eigen::Index>(s.inner[idx]))) * psi.amplitudes()(static_cast<Eigen::Index>(idx));
  }
  return {s.rest, std::move(out)};
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.reg().dims().size() != b.reg().dims().size() || a.amplitudes().size() != b.amplitudes().size()) {
    throw ArgumentError("inner: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());  // conjugates a
}

}  // namespace entangraph
