#pragma once

// Statevector simulation primitives, the rotation-interference transition
// protocol, phase-estimation histograms, and the dipole block encoding.

#include "vibtk/pauli.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace vibtk {

template <typename Scalar = double>
using StateVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

// An internal cross-check of a measurement protocol against its exact
// expectation failed; maps to a dedicated CLI exit code.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// w[b ^ x] = phi(b) v[b] with P|b> = phi(b)|b ^ x>.
template <typename Scalar = double>
StateVector<Scalar> apply(const PauliString& p, const StateVector<Scalar>& v) {
  using Complex = std::complex<Scalar>;
  const std::int64_t dim = v.size();
  if (dim != (std::int64_t{1} << p.n_qubits()))
    throw std::invalid_argument("apply: state dimension mismatch");
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  static constexpr std::complex<double> iota[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto base_d = iota[std::popcount(x & z) & 3];
  const Complex base(static_cast<Scalar>(base_d.real()),
                     static_cast<Scalar>(base_d.imag()));
  StateVector<Scalar> w(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const auto b = static_cast<std::uint64_t>(i);
    const Scalar sign = (std::popcount(z & b) & 1) ? Scalar(-1) : Scalar(1);
    w(static_cast<std::int64_t>(b ^ x)) = base * sign * v(i);
  }
  return w;
}

template <typename Scalar = double>
StateVector<Scalar> apply(const PauliSum<Scalar>& s,
                          const StateVector<Scalar>& v) {
  StateVector<Scalar> acc = StateVector<Scalar>::Zero(v.size());
  for (const auto& [p, c] : s.terms()) acc += c * apply<Scalar>(p, v);
  return acc;
}

// exp(i theta P) |v> = cos(theta) |v> + i sin(theta) P |v>.
template <typename Scalar = double>
StateVector<Scalar> apply_pauli_rotation(Scalar theta, const PauliString& p,
                                         const StateVector<Scalar>& v) {
  using Complex = std::complex<Scalar>;
  return Complex(std::cos(theta)) * v +
         Complex(0, std::sin(theta)) * apply<Scalar>(p, v);
}

// |<a|b>|^2; with shots > 0, a binomial sample of the exact probability.
template <typename Scalar = double>
Scalar overlap_squared(const StateVector<Scalar>& a,
                       const StateVector<Scalar>& b, long long shots = 0,
                       unsigned seed = 0) {
  if (a.size() != b.size())
    throw std::invalid_argument("overlap_squared: dimension mismatch");
  const Scalar exact = std::norm(a.dot(b));
  if (shots <= 0) return exact;
  std::mt19937 rng(seed);
  std::binomial_distribution<long long> dist(
      shots, std::min<double>(1.0, static_cast<double>(exact)));
  return static_cast<Scalar>(dist(rng)) / static_cast<Scalar>(shots);
}

// |<i| exp(i pi/2 R) |j>|^2 = |<i| R |j>|^2, evaluated through the rotation.
template <typename Scalar = double>
Scalar pauli_rotation_overlap(const StateVector<Scalar>& psi_i,
                              const StateVector<Scalar>& psi_j,
                              const PauliString& r, long long shots = 0,
                              unsigned seed = 0) {
  return overlap_squared<Scalar>(
      psi_i,
      apply_pauli_rotation<Scalar>(std::numbers::pi_v<Scalar> / 2, r, psi_j),
      shots, seed);
}

template <typename Scalar = double>
struct IbePairCheck {
  PauliString r_k, r_l;
  Scalar bracket = 0;      // protocol interference bracket
  Scalar expected = 0;     // exact 2 Re(m_k conj(m_l))
};

template <typename Scalar = double>
struct IbeResult {
  Scalar value = 0;                          // |<i| mu |j>|^2
  std::vector<IbePairCheck<Scalar>> pairs;   // one entry per (k, l), k < l
};

// Transition strength from rotation overlaps alone:
//   |<i|mu|j>|^2 = sum_k a_k^2 |<i|R_k|j>|^2 + sum_{k<l} a_k a_l B_kl,
//   B_kl = 2|<i|V_+|j>|^2 + 2|<i|V_-|j>|^2
//        - |<i|R_k|j>|^2 - |<i|R_l|j>|^2 - |<i|R_l R_k|j>|^2,
//   V_{+/-} = exp(+/- i pi/4 R_k) exp(+/- i pi/4 R_l).
// Exact provided <i|j> = 0, which is asserted. With validate = true every
// bracket is cross-checked against its exact value; a mismatch raises
// ProtocolError naming the failing string pair.
template <typename Scalar = double>
IbeResult<Scalar> ibe_transition_amplitude(const StateVector<Scalar>& psi_i,
                                           const StateVector<Scalar>& psi_j,
                                           const PauliSum<Scalar>& mu,
                                           bool validate = true,
                                           Scalar check_tol = Scalar(1e-8)) {
  using Complex = std::complex<Scalar>;
  constexpr Scalar quarter_pi = std::numbers::pi_v<Scalar> / 4;
  if (!mu.is_hermitian())
    throw std::invalid_argument(
        "ibe_transition_amplitude: Hermitian operator with real coefficients "
        "required");
  if (std::abs(psi_i.dot(psi_j)) > Scalar(1e-8))
    throw std::invalid_argument(
        "ibe_transition_amplitude: input states must be orthogonal");
  std::vector<std::pair<PauliString, Scalar>> terms;
  for (const auto& [p, c] : mu.terms()) terms.emplace_back(p, c.real());
  IbeResult<Scalar> result;
  // Diagonal contributions and cached rotated states R_l |j>.
  std::vector<Scalar> m2(terms.size());
  std::vector<StateVector<Scalar>> r_psi_j(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    r_psi_j[k] = apply<Scalar>(terms[k].first, psi_j);
    m2[k] = pauli_rotation_overlap<Scalar>(psi_i, psi_j, terms[k].first);
    result.value += terms[k].second * terms[k].second * m2[k];
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    for (std::size_t l = k + 1; l < terms.size(); ++l) {
      const PauliString& rk = terms[k].first;
      const PauliString& rl = terms[l].first;
      Scalar bracket = -m2[k] - m2[l];
      for (const Scalar s : {Scalar(1), Scalar(-1)}) {
        const StateVector<Scalar> v = apply_pauli_rotation<Scalar>(
            s * quarter_pi, rk,
            apply_pauli_rotation<Scalar>(s * quarter_pi, rl, psi_j));
        bracket += 2 * overlap_squared<Scalar>(psi_i, v);
      }
      const auto [rlk, ph] = pauli_product<Scalar>(rl, rk);
      bracket -= std::norm(Complex(psi_i.dot(apply<Scalar>(rlk, psi_j))) * ph);
      if (validate) {
        const Complex mk = psi_i.dot(r_psi_j[k]);
        const Complex ml = psi_i.dot(r_psi_j[l]);
        const Scalar expected = 2 * std::real(mk * std::conj(ml));
        if (std::abs(bracket - expected) > check_tol)
          throw ProtocolError(
              "transition protocol inconsistency for pair (" + rk.str() +
              ", " + rl.str() + "): bracket " + std::to_string(bracket) +
              " vs exact " + std::to_string(expected));
        result.pairs.push_back({rk, rl, bracket, expected});
      }
      result.value += terms[k].second * terms[l].second * bracket;
    }
  }
  return result;
}

// Exact |<i| mu |j>|^2 for cross-checking the protocol.
template <typename Scalar = double>
Scalar direct_transition_amplitude(const StateVector<Scalar>& psi_i,
                                   const StateVector<Scalar>& psi_j,
                                   const PauliSum<Scalar>& mu) {
  return std::norm(psi_i.dot(apply<Scalar>(mu, psi_j)));
}

enum class QpeKernel { ideal, exact };

inline std::string to_string(QpeKernel k) {
  return k == QpeKernel::ideal ? "ideal" : "exact";
}

inline QpeKernel qpe_kernel_from_string(const std::string& s) {
  if (s == "ideal") return QpeKernel::ideal;
  if (s == "exact") return QpeKernel::exact;
  throw std::invalid_argument("unknown phase-estimation kernel: " + s);
}

template <typename Scalar = double>
struct PhaseHistogram {
  int n_bits = 0;
  Scalar t = 0;                // evolution-time scale; phase = t * lambda
  std::vector<Scalar> bins;    // 2^{n_bits} probabilities summing to <= 1
};

// Probability of reading each n_bits register value when phase-estimating
// exp(i 2 pi t H) on |eta0>. `ideal` rounds each eigenphase to the nearest
// bin; `exact` uses the finite-register leakage kernel
//   w(m) = sin^2(pi (2^B phi - m)) / (2^{2B} sin^2(pi (phi - m / 2^B))).
// With t <= 0 the scale is chosen as 0.5 / lambda_max. All phases t * lambda
// must land in [0, 1).
template <typename Scalar = double>
PhaseHistogram<Scalar> qpe_histogram(const PauliSum<Scalar>& h,
                                     const StateVector<Scalar>& eta0,
                                     int n_bits, Scalar t = Scalar(0),
                                     QpeKernel kernel = QpeKernel::ideal,
                                     int dense_limit = default_dense_limit()) {
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                               Eigen::Dynamic>;
  if (n_bits < 1 || n_bits > 24)
    throw std::invalid_argument("qpe_histogram: n_bits in 1..24 required");
  const Matrix hd = to_dense<Scalar>(h, dense_limit);
  if (eta0.size() != hd.rows())
    throw std::invalid_argument("qpe_histogram: state dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hd);
  const auto& lambda = es.eigenvalues();
  if (t <= Scalar(0)) {
    const Scalar lmax = lambda(lambda.size() - 1);
    if (!(lmax > 0))
      throw std::domain_error(
          "qpe_histogram: automatic scale needs a positive spectrum");
    t = Scalar(0.5) / lmax;
  }
  const std::int64_t n_bins = std::int64_t{1} << n_bits;
  PhaseHistogram<Scalar> hist;
  hist.n_bits = n_bits;
  hist.t = t;
  hist.bins.assign(static_cast<std::size_t>(n_bins), Scalar(0));
  for (std::int64_t i = 0; i < lambda.size(); ++i) {
    const Scalar w = std::norm(es.eigenvectors().col(i).dot(eta0));
    if (w < Scalar(1e-16)) continue;
    const Scalar phi = t * lambda(i);
    if (phi < Scalar(0) || phi >= Scalar(1))
      throw std::domain_error(
          "qpe_histogram: phase t * lambda outside [0, 1); adjust t");
    if (kernel == QpeKernel::ideal) {
      const auto bin = static_cast<std::int64_t>(std::llround(
                           std::ldexp(static_cast<double>(phi), n_bits))) %
                       n_bins;
      hist.bins[static_cast<std::size_t>(bin)] += w;
    } else {
      const Scalar scale = std::ldexp(Scalar(1), n_bits);
      constexpr Scalar pi = std::numbers::pi_v<Scalar>;
      for (std::int64_t m = 0; m < n_bins; ++m) {
        Scalar delta = phi - static_cast<Scalar>(m) / scale;
        delta -= std::round(delta);  // periodic distance in phase units
        Scalar weight;
        if (std::abs(delta) < Scalar(1e-15)) {
          weight = Scalar(1);
        } else {
          const Scalar num = std::sin(pi * scale * delta);
          const Scalar den = scale * std::sin(pi * delta);
          weight = (num / den) * (num / den);
        }
        hist.bins[static_cast<std::size_t>(m)] += w * weight;
      }
    }
  }
  return hist;
}

// exp(-i gamma Y_anc (x) mu) with the ancilla as the highest qubit:
//   [[cos(gamma mu), -sin(gamma mu)], [sin(gamma mu), cos(gamma mu)]].
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>
block_encoding_unitary(const PauliSum<Scalar>& mu, Scalar gamma,
                       int dense_limit = default_dense_limit()) {
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                               Eigen::Dynamic>;
  if (!mu.is_hermitian())
    throw std::invalid_argument("block_encoding_unitary: Hermitian input");
  const Matrix md = to_dense<Scalar>(mu, dense_limit);
  Eigen::SelfAdjointEigenSolver<Matrix> es(md);
  const auto f = [&](auto&& fn) {
    Matrix diag = Matrix::Zero(md.rows(), md.cols());
    for (std::int64_t i = 0; i < md.rows(); ++i)
      diag(i, i) = fn(gamma * es.eigenvalues()(i));
    return Matrix(es.eigenvectors() * diag * es.eigenvectors().adjoint());
  };
  const Matrix c = f([](Scalar x) { return std::cos(x); });
  const Matrix s = f([](Scalar x) { return std::sin(x); });
  const std::int64_t dim = md.rows();
  Matrix u(2 * dim, 2 * dim);
  u.topLeftCorner(dim, dim) = c;
  u.topRightCorner(dim, dim) = -s;
  u.bottomLeftCorner(dim, dim) = s;
  u.bottomRightCorner(dim, dim) = c;
  return u;
}

template <typename Scalar = double>
struct BlockEncodingOutcome {
  Scalar success_probability = 0;  // <psi| sin^2(gamma mu) |psi>
  StateVector<Scalar> state;       // normalized sin(gamma mu)|psi>
};

// Post-selected branch of the block encoding applied to |psi>.
template <typename Scalar = double>
BlockEncodingOutcome<Scalar> dipole_block_encoding(
    const PauliSum<Scalar>& mu, Scalar gamma, const StateVector<Scalar>& psi,
    int dense_limit = default_dense_limit()) {
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                               Eigen::Dynamic>;
  if (!mu.is_hermitian())
    throw std::invalid_argument("dipole_block_encoding: Hermitian input");
  const Matrix md = to_dense<Scalar>(mu, dense_limit);
  if (psi.size() != md.rows())
    throw std::invalid_argument("dipole_block_encoding: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(md);
  StateVector<Scalar> w = es.eigenvectors().adjoint() * psi;
  for (std::int64_t i = 0; i < w.size(); ++i)
    w(i) *= std::sin(gamma * es.eigenvalues()(i));
  w = es.eigenvectors() * w;
  BlockEncodingOutcome<Scalar> out;
  out.success_probability = w.squaredNorm();
  if (out.success_probability < Scalar(1e-14))
    throw std::domain_error(
        "dipole_block_encoding: vanishing success probability");
  out.state = w / std::sqrt(out.success_probability);
  return out;
}

// Haar-random normalized state on n_qubits qubits (Gaussian components).
template <typename Scalar = double>
StateVector<Scalar> random_state(int n_qubits, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<Scalar> g(0, 1);
  StateVector<Scalar> v(std::int64_t{1} << n_qubits);
  for (std::int64_t i = 0; i < v.size(); ++i)
    v(i) = std::complex<Scalar>(g(rng), g(rng));
  v.normalize();
  return v;
}

}  // namespace vibtk
