#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <numbers>

#include "entangraph/errors.hpp"
#include "entangraph/jacobi.hpp"
#include "entangraph/states.hpp"
#include "entangraph/tensor.hpp"
#include "support.hpp"

using namespace entangraph;

namespace {

DenseMatrix diag(const Register& reg, std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return {reg, m};
}

std::vector<double> spectrum(const DenseMatrix& m) { return support::to_vector(hermitian_eigen(m).values); }

DenseMatrix bell_rho() { return outer(ghz(2)); }

}  // namespace

TEST_CASE("register validation") {
  CHECK_THROWS_AS(Register({2, 2}, {"a"}), ArgumentError);
  CHECK_THROWS_AS(Register({2, 1}, {"a", "b"}), ArgumentError);
  CHECK_THROWS_AS(Register({2, 2}, {"a", "a"}), LabelError);
  CHECK_THROWS_AS(Register({2, 2}, {"a", ""}), LabelError);
  CHECK_THROWS_AS(Register::qubits(alphabetic_labels(13)), CapacityError);
  CHECK(Register::qubits(alphabetic_labels(12)).dimension() == 4096);

  const Register r({2, 3, 2}, {"a", "b", "c"});
  CHECK(r.dimension() == 12);
  CHECK(r.position("b") == 1);
  CHECK_THROWS_AS(r.position("q"), LabelError);
  const std::vector<std::size_t> d{1, 2, 1};
  CHECK(r.index(d) == 1 * 6 + 2 * 2 + 1);
  CHECK(r.digits(11) == d);
}

TEST_CASE("dimension cap honours the environment") {
  setenv("ENTANGRAPH_DIM_CAP", "16", 1);
  CHECK(dimension_cap() == 16);
  CHECK_THROWS_AS(Register::qubits(alphabetic_labels(5)), CapacityError);
  CHECK_NOTHROW(Register::qubits(alphabetic_labels(4)));
  unsetenv("ENTANGRAPH_DIM_CAP");
  CHECK(dimension_cap() == kDefaultDimensionCap);
}

TEST_CASE("dense matrices reject non-finite entries") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DenseMatrix(Register::qubits({"a"}), m), ArgumentError);
  CHECK_THROWS_AS(DenseMatrix(Register::qubits({"a"}), CMatrix::Identity(3, 3)), ArgumentError);
}

TEST_CASE("kron") {
  const auto a = Register::qubits({"a"}), b = Register::qubits({"b"});
  const auto i4 = kron(DenseMatrix::identity(a), DenseMatrix::identity(b));
  CHECK(i4.entries().isApprox(CMatrix::Identity(4, 4)));
  CHECK(i4.reg().labels()[1] == "b");

  const auto z = kron(diag(a, {1, -1}), DenseMatrix::identity(b));
  CHECK(z.entries().isApprox(diag(Register::qubits({"a", "b"}), {1, 1, -1, -1}).entries()));

  const auto p0 = kron(diag(Register::qubits({"z"}), {1, 0}), bell_rho());
  const auto s = spectrum(p0);
  std::vector<double> products;
  for (double x : spectrum(diag(Register::qubits({"z"}), {1, 0})))
    for (double y : spectrum(bell_rho())) products.push_back(x * y);
  std::sort(products.begin(), products.end());
  CHECK(support::max_abs_diff(s, products) < 1e-12);

  setenv("ENTANGRAPH_DIM_CAP", "8", 1);
  CHECK_THROWS_AS(kron(bell_rho(), outer(ghz(std::vector<std::string>{"c", "d"}))), CapacityError);
  unsetenv("ENTANGRAPH_DIM_CAP");
}

TEST_CASE("outer") {
  const auto zero = PureState::basis(Register::qubits({"a"}), 0);
  CHECK(outer(zero).entries().isApprox(diag(zero.reg(), {1, 0}).entries()));

  const auto b = outer(ghz(2));
  CMatrix want = CMatrix::Zero(4, 4);
  want(0, 0) = want(0, 3) = want(3, 0) = want(3, 3) = 0.5;
  CHECK((b.entries() - want).norm() < 1e-15);

  CHECK(outer(psi34()).trace().real() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("partial trace") {
  const auto m = partial_trace(bell_rho(), {"a"});
  CHECK((m.entries() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-15);
  CHECK(m.reg().labels()[0] == "a");

  CHECK_THROWS_AS(partial_trace(bell_rho(), {"q"}), LabelError);
  CHECK_THROWS_AS(partial_trace(bell_rho(), {}), ArgumentError);

  // Kept parties stay in register order, not in the order named.
  std::mt19937_64 rng(11);
  const auto reg = Register({2, 3, 2}, {"a", "b", "c"});
  const auto rho = support::random_density(rng, reg, 3);
  const auto ac = partial_trace(rho, {"c", "a"});
  CHECK(ac.reg() == Register({2, 2}, {"a", "c"}));
  // Brute force: <a c| rho_ac |a' c'> = sum_b <a b c| rho |a' b c'>.
  double worst = 0.0;
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t c1 = 0; c1 < 2; ++c1)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t c2 = 0; c2 < 2; ++c2) {
          Complex acc = 0.0;
          for (std::size_t b = 0; b < 3; ++b) {
            const std::vector<std::size_t> r{a1, b, c1}, c{a2, b, c2};
            acc += rho(static_cast<Eigen::Index>(reg.index(r)), static_cast<Eigen::Index>(reg.index(c)));
          }
          worst = std::max(worst, std::abs(acc - ac(static_cast<Eigen::Index>(a1 * 2 + c1),
                                                    static_cast<Eigen::Index>(a2 * 2 + c2))));
        }
  CHECK(worst < 1e-15);
}

TEST_CASE("partial transpose") {
  CHECK(support::max_abs_diff(spectrum(partial_transpose(bell_rho(), {"a"})), {-0.5, 0.5, 0.5, 0.5}) < 1e-12);

  CMatrix ab = CMatrix::Zero(4, 4);
  ab(0, 0) = 4;
  ab(1, 1) = 2;
  ab(3, 3) = 6;
  ab(0, 3) = ab(3, 0) = 1;
  const auto s = spectrum(partial_transpose(DenseMatrix(Register::qubits({"a", "b"}), ab), {"a"}));
  CHECK(support::max_abs_diff(s, {1 - std::numbers::sqrt2, 1 + std::numbers::sqrt2, 4, 6}) < 1e-12);

  const auto d = diag(Register::qubits({"a", "b", "c"}), {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(partial_transpose(d, {"b"}).entries() == d.entries());
  CHECK(partial_transpose(d, {"a", "c"}).entries() == d.entries());

  CHECK_THROWS_AS(partial_transpose(bell_rho(), {}), ArgumentError);
  CHECK_THROWS_AS(partial_transpose(bell_rho(), {"a", "b"}), ArgumentError);
  CHECK_THROWS_AS(partial_transpose(bell_rho(), {"x"}), LabelError);

  // Transposing twice is the identity; transposing everything is the transpose.
  std::mt19937_64 rng(5);
  const auto reg = Register({2, 3}, {"a", "b"});
  const auto rho = support::random_density(rng, reg, 2);
  CHECK((partial_transpose(partial_transpose(rho, {"b"}), {"b"}).entries() - rho.entries()).norm() < 1e-15);
  CHECK((partial_transpose(partial_transpose(rho, {"a"}), {"b"}).entries() - rho.entries().transpose()).norm() <
        1e-15);
}

TEST_CASE("hermitian eigen") {
  const auto r = hermitian_eigen(diag(Register({3}, {"a"}), {3, 1, 2}));
  CHECK(support::to_vector(r.values) == std::vector<double>{1, 2, 3});

  CMatrix bd = CMatrix::Zero(4, 4);
  bd.diagonal() << 2, 2, 2, 6;
  CHECK(support::to_vector(hermitian_eigen(DenseMatrix(Register::qubits({"b", "d"}), bd)).values) ==
        std::vector<double>{2, 2, 2, 6});

  CMatrix nh = CMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigen(DenseMatrix(Register::qubits({"a"}), nh)), ContractError);

  // Agrees with an independent solver, and the vectors diagonalize.
  std::mt19937_64 rng(99);
  for (int n : {1, 2, 5, 16, 33}) {
    const CMatrix h = support::random_hermitian(rng, n);
    const auto e = jacobi_eigen(h);
    CHECK(support::max_abs_diff(support::to_vector(e.values), support::oracle_eigenvalues(h)) < 1e-10);
    const Eigen::MatrixXcd v = e.vectors;
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-10);
    CHECK((v * e.values.cast<Complex>().asDiagonal() * v.adjoint() - Eigen::MatrixXcd(h)).norm() < 1e-9 * h.norm());
  }

  // Real symmetric input through the same template.
  Eigen::Matrix3d sym;
  sym << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const auto re = jacobi_eigen(sym);
  CHECK(re.values(0) == doctest::Approx(2 - std::numbers::sqrt2).epsilon(1e-12));
  CHECK(re.values(2) == doctest::Approx(2 + std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("hermitian eigen gives up after the sweep budget") {
  std::mt19937_64 rng(3);
  const CMatrix h = support::random_hermitian(rng, 12);
  CHECK_THROWS_AS(jacobi_eigen(h, 1e-12, 1), NumericError);
}

TEST_CASE("schmidt rank") {
  const auto reg = Register::qubits({"a", "b", "c"});
  CVector v = CVector::Zero(8);
  v(0) = 1;
  v(1) = -1;
  CHECK(schmidt_rank(PureState(reg, v), {"c"}) == 1);
  CHECK(schmidt_rank(PureState(reg, v), {"a"}) == 1);
  CHECK(schmidt_rank(ghz(2), {"a"}) == 2);

  // Coefficients of an eigenvector of the reduced abc matrix, as printed.
  CVector v4 = CVector::Zero(8);
  v4(0) = -0.427;
  v4(1) = -2.916;
  v4(7) = 1.0;
  for (const char* cut : {"a", "b", "c"}) CHECK(schmidt_rank(PureState(reg, v4), {cut}) == 2);

  CHECK_THROWS_AS(schmidt_rank(PureState(reg, CVector::Zero(8)), {"a"}), ArgumentError);
  CHECK_THROWS_AS(schmidt_rank(ghz(2), {}), ArgumentError);
  CHECK_THROWS_AS(schmidt_rank(ghz(2), {"a", "b"}), ArgumentError);
}

TEST_CASE("local operations on states") {
  const auto psi = ghz(3);
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const std::vector<std::string> b{"b"};
  const auto flipped = apply_local(psi, b, x);
  CHECK(std::abs(flipped.amplitudes()(2) - std::numbers::sqrt2 / 2) < 1e-15);  // |010>
  CHECK(std::abs(flipped.amplitudes()(5) - std::numbers::sqrt2 / 2) < 1e-15);  // |101>

  // Operator order follows the labels given, not register order.
  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  const auto basis = PureState::basis(Register::qubits({"a", "b"}), 1);  // |01>
  const std::vector<std::string> ba{"b", "a"};
  CHECK(std::abs(apply_local(basis, ba, cnot).amplitudes()(3) - 1.0) < 1e-15);  // control b=1 flips a

  const std::vector<std::string> ab{"a", "b"};
  const auto reduced = contract(psi, ab, bell_vector(BellOutcome::PhiPlus));
  CHECK(reduced.reg() == Register::qubits({"c"}));
  CHECK(std::abs(reduced.amplitudes()(0) - 0.5) < 1e-15);
  CHECK(std::abs(reduced.amplitudes()(1) - 0.5) < 1e-15);

  const auto projected = project(psi, ab, bell_vector(BellOutcome::PhiPlus));
  CHECK(projected.reg() == psi.reg());
  CHECK(projected.norm_squared() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(project(psi, ab, bell_vector(BellOutcome::PsiPlus)).norm_squared() < 1e-30);

  CHECK(std::abs(inner(ghz(2), ghz(2)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(PureState(Register::qubits({"a"}), CVector::Zero(2)).normalized(), ArgumentError);
}
