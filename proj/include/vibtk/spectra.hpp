#pragma once

// Exact eigensolution of encoded Hamiltonians, transition intensities,
// Gaussian line broadening, and spectrum export.

#include "vibtk/pauli.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace vibtk {

// Full-space eigenpairs; when a codeword-subspace restriction applies, the
// eigenvectors are embedded back into the full 2^{N_q} space and
// `subspace_states` lists the participating basis states.
template <typename Scalar = double>
struct EigenSolution {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector eigenvalues;  // ascending, cm^-1
  Matrix eigenvectors;  // columns, full-space amplitudes
  std::vector<std::uint64_t> subspace_states;  // empty = full space
};

// Full Hermitian eigendecomposition of dense(h); when `subspace` is given,
// the operator is restricted to those basis states first (physical-codeword
// restriction for encodings with d not a power of two, and for unary).
template <typename Scalar = double>
EigenSolution<Scalar> diagonalize(
    const PauliSum<Scalar>& h,
    const std::vector<std::uint64_t>& subspace = {},
    int dense_limit = default_dense_limit()) {
  using Matrix = typename EigenSolution<Scalar>::Matrix;
  if (!h.is_hermitian())
    throw std::invalid_argument("diagonalize: non-Hermitian input");
  const Matrix full = to_dense<Scalar>(h, dense_limit);
  const std::int64_t dim = full.rows();
  EigenSolution<Scalar> sol;
  if (subspace.empty() ||
      static_cast<std::int64_t>(subspace.size()) == dim) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(full);
    sol.eigenvalues = es.eigenvalues();
    sol.eigenvectors = es.eigenvectors();
    return sol;
  }
  const auto k = static_cast<std::int64_t>(subspace.size());
  Matrix sub(k, k);
  for (std::int64_t r = 0; r < k; ++r)
    for (std::int64_t c = 0; c < k; ++c)
      sub(r, c) = full(static_cast<std::int64_t>(subspace[static_cast<std::size_t>(r)]),
                       static_cast<std::int64_t>(subspace[static_cast<std::size_t>(c)]));
  Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
  sol.eigenvalues = es.eigenvalues();
  sol.eigenvectors = Matrix::Zero(dim, k);
  for (std::int64_t j = 0; j < k; ++j)
    for (std::int64_t r = 0; r < k; ++r)
      sol.eigenvectors(static_cast<std::int64_t>(subspace[static_cast<std::size_t>(r)]), j) =
          es.eigenvectors()(r, j);
  sol.subspace_states = subspace;
  return sol;
}

template <typename Scalar = double>
struct Peak {
  Scalar energy = 0;      // omega_j - omega_0, cm^-1
  Scalar intensity = 0;   // sum over axes
  std::array<Scalar, 3> axis_contributions{};  // x, y, z
};

enum class BroadeningKind { none, gaussian };

template <typename Scalar = double>
struct Spectrum {
  std::vector<Peak<Scalar>> peaks;  // sorted by energy
  BroadeningKind broadening = BroadeningKind::none;
  Scalar width = 0;  // cm^-1
};

// Intensities I_j = sum_alpha |<psi_0| mu^(alpha) |psi_j>|^2 for the
// n_transitions lowest excited states; energies relative to the ground
// state. Degenerate multiplets (|dE| < 1e-6 cm^-1) are merged into one peak.
template <typename Scalar = double>
Spectrum<Scalar> ir_spectrum(
    const EigenSolution<Scalar>& sol,
    const std::vector<PauliSum<Scalar>>& dipoles,
    std::optional<std::size_t> n_transitions = std::nullopt,
    int dense_limit = default_dense_limit()) {
  using Matrix = typename EigenSolution<Scalar>::Matrix;
  using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  if (dipoles.empty() || dipoles.size() > 3)
    throw std::invalid_argument("ir_spectrum: 1..3 dipole operators expected");
  const std::int64_t n_states = sol.eigenvalues.size();
  for (const auto& mu : dipoles)
    if ((std::int64_t{1} << mu.n_qubits()) != sol.eigenvectors.rows())
      throw std::invalid_argument("ir_spectrum: qubit layout mismatch");
  const std::size_t count =
      std::min<std::size_t>(n_transitions.value_or(
                                static_cast<std::size_t>(n_states) - 1),
                            static_cast<std::size_t>(n_states) - 1);
  const CVector ground = sol.eigenvectors.col(0);
  std::vector<CVector> mu_ground;
  for (const auto& mu : dipoles)
    mu_ground.push_back(to_dense<Scalar>(mu, dense_limit).adjoint() * ground);
  Spectrum<Scalar> spec;
  constexpr Scalar kDegenerateTol = Scalar(1e-6);
  for (std::size_t j = 1; j <= count; ++j) {
    const auto jc = static_cast<std::int64_t>(j);
    Peak<Scalar> peak;
    peak.energy = sol.eigenvalues(jc) - sol.eigenvalues(0);
    for (std::size_t a = 0; a < dipoles.size(); ++a) {
      const std::complex<Scalar> amp =
          mu_ground[a].dot(sol.eigenvectors.col(jc));
      peak.axis_contributions[a] = std::norm(amp);
      peak.intensity += std::norm(amp);
    }
    if (!spec.peaks.empty() &&
        std::abs(spec.peaks.back().energy - peak.energy) < kDegenerateTol) {
      spec.peaks.back().intensity += peak.intensity;
      for (int a = 0; a < 3; ++a)
        spec.peaks.back().axis_contributions[static_cast<std::size_t>(a)] +=
            peak.axis_contributions[static_cast<std::size_t>(a)];
    } else {
      spec.peaks.push_back(peak);
    }
  }
  return spec;
}

// sum_j I_j N(omega; omega_j, sigma) sampled on the grid.
template <typename Scalar = double>
std::vector<Scalar> broaden(const Spectrum<Scalar>& s, Scalar sigma,
                            const std::vector<Scalar>& grid) {
  if (!(sigma > 0)) throw std::invalid_argument("broaden: sigma > 0 required");
  if (grid.empty()) throw std::invalid_argument("broaden: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("broaden: grid must be monotone increasing");
  const Scalar norm =
      Scalar(1) / (sigma * std::sqrt(Scalar(2) * std::numbers::pi_v<Scalar>));
  std::vector<Scalar> curve(grid.size(), Scalar(0));
  for (const auto& peak : s.peaks) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Scalar dx = (grid[i] - peak.energy) / sigma;
      curve[i] += peak.intensity * norm * std::exp(Scalar(-0.5) * dx * dx);
    }
  }
  return curve;
}

}  // namespace vibtk
