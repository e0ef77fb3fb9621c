#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vibtk/trotter.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using vibtk::PauliString;
using vibtk::PauliSum;
using vibtk::TermOrdering;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace {

PauliSum<double> random_hermitian(int n, int n_terms, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint64_t> bits(0, (1ull << n) - 1);
  std::normal_distribution<double> g(0, 1);
  PauliSum<double> h(n);
  for (int k = 0; k < n_terms; ++k)
    h.add_term(PauliString(n, bits(rng), bits(rng)), g(rng));
  return h;
}

}  // namespace

TEST_CASE("term orderings are deterministic and permute the same terms") {
  const auto h = random_hermitian(3, 6, 17);
  const auto lex = vibtk::ordered_terms<double>(h, TermOrdering::lex);
  const auto mag =
      vibtk::ordered_terms<double>(h, TermOrdering::magnitude_desc);
  const auto shuf =
      vibtk::ordered_terms<double>(h, TermOrdering::seeded_shuffle, 42);
  const auto shuf2 =
      vibtk::ordered_terms<double>(h, TermOrdering::seeded_shuffle, 42);
  CHECK(lex.size() == mag.size());
  CHECK(shuf == shuf2);
  for (std::size_t i = 1; i < lex.size(); ++i) {
    CHECK(lex[i - 1].first < lex[i].first);
    CHECK(std::abs(mag[i - 1].second) >= std::abs(mag[i].second));
  }
  CHECK(vibtk::ordering_from_string("magnitude-desc") ==
        TermOrdering::magnitude_desc);
  CHECK_THROWS_AS(vibtk::ordering_from_string("random"),
                  std::invalid_argument);
}

TEST_CASE("one-norm includes the identity term") {
  PauliSum<double> h(2);
  h.add_term("II", 3.0);
  h.add_term("XZ", -4.0);
  CHECK(vibtk::one_norm<double>(h) == doctest::Approx(7.0));
}

TEST_CASE("single-term propagator is exact") {
  PauliSum<double> h(2);
  h.add_term("XY", 0.7);
  const double dtau = 0.3;
  const Matrix u = vibtk::trotter_propagator<double>(h, dtau);
  const Matrix exact = (Complex(0, -dtau) * to_dense(h)).exp();
  CHECK((u - exact).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("commuting terms give the exact propagator at any step") {
  PauliSum<double> h(3);
  h.add_term("ZII", 1.3);
  h.add_term("IZZ", -0.8);
  h.add_term("ZZZ", 0.4);
  for (const double dtau : {0.1, 0.5, 1.0}) {
    const Matrix u = vibtk::trotter_propagator<double>(h, dtau);
    const Matrix exact = (Complex(0, -dtau) * to_dense(h)).exp();
    CHECK((u - exact).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("propagator is unitary and its error scales as dtau^2") {
  const auto h = random_hermitian(3, 6, 5);
  const Matrix hd = to_dense(h);
  std::vector<double> errs;
  for (const double dtau : {0.02, 0.01, 0.005}) {
    const Matrix u = vibtk::trotter_propagator<double>(h, dtau);
    CHECK((u * u.adjoint() - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <
          1e-10);
    const Matrix exact = (Complex(0, -dtau) * hd).exp();
    errs.push_back((u - exact).cwiseAbs().maxCoeff());
  }
  // Halving the step should quarter the error (first-order local error).
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("ordering changes the propagator for non-commuting terms") {
  PauliSum<double> h(1);
  h.add_term("X", 0.5);  // lex puts X first, magnitude ordering puts Z first
  h.add_term("Z", 1.0);
  const Matrix a = vibtk::trotter_propagator<double>(h, 0.4, TermOrdering::lex);
  const Matrix b = vibtk::trotter_propagator<double>(
      h, 0.4, TermOrdering::magnitude_desc);
  CHECK((a - b).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("single-term ITE operator matches the matrix exponential") {
  PauliSum<double> h(2);
  h.add_term("ZX", 1.1);
  const double dbeta = 0.6;
  const auto op = vibtk::ite_operator<double>(h, dbeta);
  const Matrix exact = (-dbeta * to_dense(h)).exp();
  const Matrix rebuilt = std::exp(op.log_scale) * op.matrix;
  CHECK((rebuilt - exact).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ITE forward and backward factors invert each other") {
  const auto h = random_hermitian(3, 5, 23);
  const double dbeta = 0.2;
  const auto fwd = vibtk::ite_operator<double>(h, dbeta);
  // Reversed ordering of the negated step inverts the factor product.
  auto terms = vibtk::ordered_terms<double>(h, TermOrdering::lex);
  Matrix back = Matrix::Identity(8, 8);
  double back_log = 0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const double a = -dbeta * it->second.real();
    vibtk::detail::right_multiply_affine_pauli<double>(
        back, it->first, Complex(1), Complex(-std::tanh(a)));
    back_log += std::log(std::cosh(a));
  }
  const Matrix prod =
      std::exp(fwd.log_scale + back_log) * (fwd.matrix * back);
  CHECK((prod - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ITE dominant eigenvalue approaches exp(-dbeta lambda_min)") {
  const auto h = random_hermitian(3, 5, 31);
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_dense(h));
  const double lmin = es.eigenvalues()(0);
  const double dbeta = 0.01;
  const auto op = vibtk::ite_operator<double>(h, dbeta);
  const auto pi = vibtk::power_iteration<double>(
      op.matrix, CVector::Ones(8), 1e-12);
  const double dominant =
      std::log(pi.dominant_magnitude) + op.log_scale;
  // First-order splitting shifts the projected eigenvalue by O(dbeta^2).
  CHECK(dominant == doctest::Approx(-dbeta * lmin).epsilon(0.05));
}

TEST_CASE("eigenphase errors vanish for commuting Hamiltonians") {
  PauliSum<double> h(2);
  h.add_term("ZI", 1.5);
  h.add_term("IZ", -0.7);
  h.add_term("ZZ", 0.3);
  const auto errs = vibtk::propagator_eigenphase_errors<double>(
      h, 0.5, {0, 1, 2, 3});
  for (const double e : errs) CHECK(e < 1e-10);
}

TEST_CASE("eigenphase errors shrink with the step for random Hamiltonians") {
  const auto h = random_hermitian(3, 6, 9);
  const auto big =
      vibtk::propagator_eigenphase_errors<double>(h, 0.05, {0, 3, 7});
  const auto small =
      vibtk::propagator_eigenphase_errors<double>(h, 0.005, {0, 3, 7});
  for (std::size_t i = 0; i < big.size(); ++i) CHECK(small[i] < big[i]);
}

TEST_CASE("aliasing steps are rejected") {
  PauliSum<double> h(1);
  h.add_term("Z", 2.0);
  CHECK_THROWS_AS(
      vibtk::propagator_eigenphase_errors<double>(h, 2.0, {0}),
      std::domain_error);
  CHECK_THROWS_AS(
      vibtk::propagator_eigenphase_errors<double>(h, 0.1, {5}),
      std::invalid_argument);
}

TEST_CASE("ITE energy error converges to the ground state") {
  const auto h = random_hermitian(3, 5, 13);
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_dense(h));
  const double lmin = es.eigenvalues()(0);
  // The Trotter bias of the ITE product is first order in dbeta.
  const auto coarse = vibtk::ite_energy_error<double>(h, h, 0.05, lmin);
  const auto fine = vibtk::ite_energy_error<double>(h, h, 0.001, lmin);
  CHECK(fine.error < coarse.error);
  CHECK(fine.error < 1e-4);
  CHECK(fine.folded_quotient == 0.0);
}

TEST_CASE("folded ITE targets the interior eigenvalue nearest zeta") {
  const auto h = random_hermitian(3, 5, 41);
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_dense(h));
  const double zeta =
      0.5 * (es.eigenvalues()(3) + es.eigenvalues()(3) + 0.2);
  // Nearest eigenvalue to zeta:
  int best = 0;
  for (int j = 1; j < 8; ++j)
    if (std::abs(es.eigenvalues()(j) - zeta) <
        std::abs(es.eigenvalues()(best) - zeta))
      best = j;
  auto shifted = h;
  shifted.add_term(PauliString(3), -zeta);
  const auto folded = shifted * shifted;
  const auto res = vibtk::ite_energy_error<double>(
      h, folded, 0.001, es.eigenvalues()(best));
  CHECK(res.error < 1e-3);
  // The converged energy identifies the targeted eigenstate unambiguously.
  int landed = 0;
  for (int j = 1; j < 8; ++j)
    if (std::abs(es.eigenvalues()(j) - res.energy) <
        std::abs(es.eigenvalues()(landed) - res.energy))
      landed = j;
  CHECK(landed == best);
  CHECK(res.folded_quotient ==
        doctest::Approx(std::pow(es.eigenvalues()(best) - zeta, 2))
            .epsilon(0.1));
}

TEST_CASE("power iteration diagnostics") {
  CHECK_THROWS_AS(
      vibtk::power_iteration<double>(Matrix::Zero(4, 4), CVector::Ones(4)),
      std::domain_error);
  Matrix m(2, 2);
  m << 1, 0, 0, -1;  // degenerate |lambda|: never converges
  CVector v(2);
  v << 1, 1;
  CHECK_THROWS_AS(vibtk::power_iteration<double>(m, v, 1e-12, 50),
                  std::domain_error);
}

TEST_CASE("geometric grid spans inclusively with constant ratio") {
  const auto g = vibtk::geometric_grid<double>(1e-3, 1.0, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == doctest::Approx(1e-3));
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(g[1] / g[0] == doctest::Approx(10.0));
  CHECK(g[2] / g[1] == doctest::Approx(10.0));
  CHECK_THROWS_AS(vibtk::geometric_grid<double>(0.0, 1.0, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(vibtk::geometric_grid<double>(1.0, 0.5, 4),
                  std::invalid_argument);
}
