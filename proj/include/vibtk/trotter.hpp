#pragma once

// First-order Trotterized real-time propagator, imaginary-time operator
// construction, eigenvalue-error extraction, and step-size scan harness.

#include "vibtk/pauli.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace vibtk {

enum class TermOrdering { lex, magnitude_desc, seeded_shuffle };

inline std::string to_string(TermOrdering o) {
  switch (o) {
    case TermOrdering::lex: return "lex";
    case TermOrdering::magnitude_desc: return "magnitude-desc";
    case TermOrdering::seeded_shuffle: return "seeded-shuffle";
  }
  return "?";
}

inline TermOrdering ordering_from_string(const std::string& s) {
  if (s == "lex") return TermOrdering::lex;
  if (s == "magnitude-desc") return TermOrdering::magnitude_desc;
  if (s == "seeded-shuffle") return TermOrdering::seeded_shuffle;
  throw std::invalid_argument("unknown term ordering: " + s);
}

template <typename Scalar = double>
std::vector<std::pair<PauliString, std::complex<Scalar>>> ordered_terms(
    const PauliSum<Scalar>& h, TermOrdering ordering,
    unsigned shuffle_seed = 0) {
  std::vector<std::pair<PauliString, std::complex<Scalar>>> terms(
      h.terms().begin(), h.terms().end());  // map iteration = lex order
  if (ordering == TermOrdering::magnitude_desc) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) {
                       return std::abs(a.second) > std::abs(b.second);
                     });
  } else if (ordering == TermOrdering::seeded_shuffle) {
    std::mt19937 rng(shuffle_seed);
    std::shuffle(terms.begin(), terms.end(), rng);
  }
  return terms;
}

// sum of |a_k| including the identity term.
template <typename Scalar = double>
Scalar one_norm(const PauliSum<Scalar>& h) {
  Scalar s = 0;
  for (const auto& [p, c] : h.terms()) s += std::abs(c);
  return s;
}

namespace detail {

// In-place right multiplication M <- M * (alpha I + beta P).
// (M P)[r,c] = phi(c) M[r, c^x] with P|b> = phi(b)|b^x>.
template <typename Scalar>
void right_multiply_affine_pauli(
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& m,
    const PauliString& p, std::complex<Scalar> alpha,
    std::complex<Scalar> beta) {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  static constexpr std::complex<double> iota[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto base_d = iota[std::popcount(x & z) & 3];
  const Complex base(static_cast<Scalar>(base_d.real()),
                     static_cast<Scalar>(base_d.imag()));
  const std::int64_t dim = m.cols();
  Matrix mp(m.rows(), dim);
  for (std::int64_t c = 0; c < dim; ++c) {
    const auto b = static_cast<std::uint64_t>(c);
    const Scalar sign = (std::popcount(z & b) & 1) ? Scalar(-1) : Scalar(1);
    mp.col(c) = (base * sign) * m.col(static_cast<std::int64_t>(b ^ x));
  }
  m = alpha * m + beta * mp;
}

}  // namespace detail

// First-order Trotter propagator: ordered product of exact single-term
// exponentials exp(-i dtau a_k P_k) = cos(dtau a_k) I - i sin(dtau a_k) P_k.
// Factors are applied with the first term in the ordering leftmost.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>
trotter_propagator(const PauliSum<Scalar>& h, Scalar dtau,
                   TermOrdering ordering = TermOrdering::lex,
                   unsigned shuffle_seed = 0,
                   int dense_limit = default_dense_limit()) {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  if (h.n_qubits() > dense_limit)
    throw std::invalid_argument("trotter_propagator: dense limit exceeded");
  if (!h.is_hermitian())
    throw std::invalid_argument("trotter_propagator: Hermitian input required");
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& [p, c] : ordered_terms<Scalar>(h, ordering, shuffle_seed)) {
    const Scalar a = c.real();
    detail::right_multiply_affine_pauli<Scalar>(
        u, p, Complex(std::cos(dtau * a)), Complex(0, -std::sin(dtau * a)));
  }
  return u;
}

// Ordered product of exp(-dbeta a_k P_k) = cosh(.) I - sinh(.) P_k.
// Each factor is normalized by cosh to stay overflow-safe; the true operator
// is exp(log_scale) * matrix.
template <typename Scalar = double>
struct IteOperator {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> matrix;
  Scalar log_scale = 0;
};

template <typename Scalar = double>
IteOperator<Scalar> ite_operator(const PauliSum<Scalar>& h, Scalar dbeta,
                                 TermOrdering ordering = TermOrdering::lex,
                                 unsigned shuffle_seed = 0,
                                 int dense_limit = default_dense_limit()) {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  if (h.n_qubits() > dense_limit)
    throw std::invalid_argument("ite_operator: dense limit exceeded");
  if (!h.is_hermitian())
    throw std::invalid_argument("ite_operator: Hermitian input required");
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  IteOperator<Scalar> op;
  op.matrix = Matrix::Identity(dim, dim);
  for (const auto& [p, c] : ordered_terms<Scalar>(h, ordering, shuffle_seed)) {
    const Scalar a = c.real() * dbeta;
    // exp(-a P)/cosh(a) = I - tanh(a) P  (P^2 = I)
    detail::right_multiply_affine_pauli<Scalar>(op.matrix, p, Complex(1),
                                                Complex(-std::tanh(a)));
    op.log_scale += std::log(std::cosh(std::abs(a)));
    const Scalar peak = op.matrix.cwiseAbs().maxCoeff();
    if (peak > Scalar(1e100)) {
      op.matrix /= peak;
      op.log_scale += std::log(peak);
    }
  }
  return op;
}

// Diagonalize the Trotterized propagator, extract energies from the unitary
// eigenphases, sort, and compare elementwise to the exact sorted spectrum.
// Requires dtau * one_norm(h) < pi so phases need no unwrapping.
template <typename Scalar = double>
std::vector<Scalar> propagator_eigenphase_errors(
    const PauliSum<Scalar>& h, Scalar dtau, const std::vector<int>& tracked,
    TermOrdering ordering = TermOrdering::lex, unsigned shuffle_seed = 0,
    int dense_limit = default_dense_limit()) {
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                               Eigen::Dynamic>;
  const Scalar norm1 = one_norm<Scalar>(h);
  if (!(dtau * norm1 < std::numbers::pi_v<Scalar>))
    throw std::domain_error(
        "propagator_eigenphase_errors: phase aliasing (dtau * |h|_1 >= pi)");
  const Matrix u =
      trotter_propagator<Scalar>(h, dtau, ordering, shuffle_seed, dense_limit);
  Eigen::ComplexEigenSolver<Matrix> es(u);
  std::vector<Scalar> approx;
  approx.reserve(static_cast<std::size_t>(u.rows()));
  for (std::int64_t i = 0; i < u.rows(); ++i)
    approx.push_back(-std::arg(es.eigenvalues()(i)) / dtau);
  std::sort(approx.begin(), approx.end());
  Eigen::SelfAdjointEigenSolver<Matrix> hs(to_dense<Scalar>(h, dense_limit));
  std::vector<Scalar> errors;
  errors.reserve(tracked.size());
  for (const int j : tracked) {
    if (j < 0 || j >= static_cast<int>(approx.size()))
      throw std::invalid_argument("tracked eigenstate index out of range");
    errors.push_back(std::abs(approx[static_cast<std::size_t>(j)] -
                              hs.eigenvalues()(j)));
  }
  return errors;
}

template <typename Scalar = double>
struct PowerIterationResult {
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> vector;
  Scalar dominant_magnitude = 0;  // |lambda| of the normalized matrix
  int iterations = 0;
};

// Power iteration for the (generally non-Hermitian) ITE operator.
template <typename Scalar = double>
PowerIterationResult<Scalar> power_iteration(
    const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>&
        m,
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> v,
    Scalar tol = Scalar(1e-10), int max_iterations = 100000) {
  using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  v.normalize();
  PowerIterationResult<Scalar> result;
  for (int it = 0; it < max_iterations; ++it) {
    CVector next = m * v;
    const Scalar mag = next.norm();
    if (mag == Scalar(0))
      throw std::domain_error("power_iteration: vector annihilated");
    next /= mag;
    // Align phases so convergence is measured on the ray, not the vector.
    const std::complex<Scalar> ov = v.dot(next);
    if (std::abs(ov) > Scalar(0)) next *= std::conj(ov) / std::abs(ov);
    const Scalar delta = (next - v).norm();
    v = next;
    if (delta < tol) {
      result.vector = v;
      result.dominant_magnitude = mag;
      result.iterations = it + 1;
      return result;
    }
  }
  throw std::domain_error(
      "power_iteration: no convergence (degenerate dominant eigenvalue or "
      "iteration cap exceeded)");
}

template <typename Scalar = double>
struct IteEnergyResult {
  Scalar energy = 0;           // Rayleigh quotient of the original H
  Scalar reference = 0;        // exact target eigenvalue
  Scalar error = 0;            // |energy - reference|
  Scalar folded_quotient = 0;  // <v|H_fold|v> when folding was used, else 0
};

namespace detail {

// Dominant eigenvector by repeated squaring: each squaring doubles the
// imaginary time, so even near-degenerate subdominant modes are suppressed
// geometrically (ratio r becomes r^(2^s)). Matrices are renormalized after
// every squaring to stay in range.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> dominant_vector(
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> m,
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> start,
    Scalar tol = Scalar(1e-12), int max_squarings = 120) {
  using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  start.normalize();
  CVector v = CVector::Zero(start.size());
  for (int s = 0; s < max_squarings; ++s) {
    CVector next = m * start;
    const Scalar mag = next.norm();
    if (mag == Scalar(0))
      throw std::domain_error("dominant_vector: start vector annihilated");
    next /= mag;
    const std::complex<Scalar> ov = v.dot(next);
    if (std::abs(ov) > Scalar(0)) next *= std::conj(ov) / std::abs(ov);
    if ((next - v).norm() < tol) return next;
    v = next;
    m = m * m;
    const Scalar peak = m.cwiseAbs().maxCoeff();
    if (peak == Scalar(0))
      throw std::domain_error("dominant_vector: operator vanished");
    m /= peak;
  }
  throw std::domain_error(
      "dominant_vector: no convergence (degenerate dominant eigenvalue)");
}

}  // namespace detail

// Ground state: project with the ITE operator of h itself.
// Excited state: pass the folded Hamiltonian as `ite_generator` and the
// original h for energy evaluation; `reference` must be the exact eigenvalue
// of h targeted (nearest zeta). The energy estimate is always the Rayleigh
// quotient of the ORIGINAL h on the converged vector.
template <typename Scalar = double>
IteEnergyResult<Scalar> ite_energy_error(
    const PauliSum<Scalar>& h, const PauliSum<Scalar>& ite_generator,
    Scalar dbeta, Scalar reference,
    const std::vector<std::uint64_t>& start_subspace = {},
    TermOrdering ordering = TermOrdering::lex,
    int dense_limit = default_dense_limit()) {
  using Complex = std::complex<Scalar>;
  using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  const IteOperator<Scalar> op =
      ite_operator<Scalar>(ite_generator, dbeta, ordering, 0, dense_limit);
  const std::int64_t dim = op.matrix.rows();
  CVector start = CVector::Zero(dim);
  if (start_subspace.empty()) {
    start.setConstant(Complex(1));
  } else {
    for (const std::uint64_t s : start_subspace)
      start(static_cast<std::int64_t>(s)) = Complex(1);
  }
  // Project with the palindromic double step C^H C (factors are Hermitian,
  // so this is the ordered product for 2 dbeta read forward then backward).
  // Unlike the raw ordered product it is Hermitian positive semidefinite,
  // which keeps the dominant eigenvalue real even near folded degeneracies.
  const CVector v = detail::dominant_vector<Scalar>(
      op.matrix.adjoint() * op.matrix, start);
  const auto hd = to_dense<Scalar>(h, dense_limit);
  IteEnergyResult<Scalar> res;
  res.energy = std::real(v.dot(hd * v));
  res.reference = reference;
  res.error = std::abs(res.energy - res.reference);
  if (&ite_generator != &h) {
    const auto fd = to_dense<Scalar>(ite_generator, dense_limit);
    res.folded_quotient = std::real(v.dot(fd * v));
  }
  return res;
}

// Scan results: step values with per-tracked-state absolute errors (cm^-1).
template <typename Scalar = double>
struct TrotterScan {
  std::vector<Scalar> steps;  // strictly increasing
  std::vector<int> states;
  std::vector<std::vector<Scalar>> errors;  // [step][state]
  std::string ordering;
  Scalar step_cap = 0;  // aliasing cap applied to real-time scans (0 = none)
};

template <typename Scalar = double>
std::vector<Scalar> geometric_grid(Scalar lo, Scalar hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi, n >= 2");
  std::vector<Scalar> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        lo * std::pow(hi / lo, Scalar(i) / Scalar(n - 1));
  return g;
}

}  // namespace vibtk
