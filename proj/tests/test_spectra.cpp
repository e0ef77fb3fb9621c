#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vibtk/spectra.hpp"
#include "vibtk/vibham.hpp"

#include <Eigen/Dense>

#include <numeric>

using vibtk::Encoding;
using vibtk::EncodingKind;
using vibtk::ForceField;
using vibtk::PauliSum;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace {

ForceField<double> harmonic_ff(std::vector<double> omegas) {
  ForceField<double> ff;
  ff.n_modes = static_cast<int>(omegas.size());
  ff.omegas = std::move(omegas);
  return ff;
}

vibtk::MoleculeData<double> co_molecule() {
  vibtk::MoleculeData<double> data;
  data.force_field = harmonic_ff({2157.96});
  data.force_field.cubic[{0, 0, 0}] = -736.66;
  data.force_field.quartic[{0, 0, 0, 0}] = 210.97;
  data.dipole.axis('x').linear[0] = 1.0;
  return data;
}

vibtk::MoleculeData<double> fermi_resonance_molecule() {
  vibtk::MoleculeData<double> data;
  data.force_field = harmonic_ff({1470.0, 2890.0});
  data.force_field.cubic[{0, 0, 1}] = 30.0;
  data.dipole.axis('x').linear[0] = 1.0;
  data.dipole.axis('x').linear[1] = 1.0;
  return data;
}

}  // namespace

TEST_CASE("harmonic CO spectrum is 2157.96 (n + 1/2)") {
  const Encoding enc(EncodingKind::gray, 8);
  const auto h =
      vibtk::build_hamiltonian<double>(harmonic_ff({2157.96}), 8, enc);
  const auto sol = vibtk::diagonalize<double>(h);
  REQUIRE(sol.eigenvalues.size() == 8);
  for (int n = 0; n < 8; ++n)
    CHECK(sol.eigenvalues(n) == doctest::Approx(2157.96 * (n + 0.5)));
  // Residual check per eigenpair.
  const Matrix dense = to_dense(h);
  for (int n = 0; n < 8; ++n)
    CHECK((dense * sol.eigenvectors.col(n) -
           sol.eigenvalues(n) * sol.eigenvectors.col(n))
              .norm() < 1e-8 * dense.norm());
}

TEST_CASE("two-mode harmonic eigenvalues are sums of ladders") {
  const Encoding enc(EncodingKind::gray, 4);
  const auto h =
      vibtk::build_hamiltonian<double>(harmonic_ff({1470.0, 2890.0}), 4, enc);
  const auto sol = vibtk::diagonalize<double>(h);
  std::vector<double> expected;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      expected.push_back(1470.0 * (a + 0.5) + 2890.0 * (b + 0.5));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < sol.eigenvalues.size(); ++i)
    CHECK(sol.eigenvalues(i) ==
          doctest::Approx(expected[static_cast<std::size_t>(i)]));
}

TEST_CASE("non-Hermitian input is rejected") {
  PauliSum<double> h(1);
  h.add_term("X", std::complex<double>(0, 1));
  CHECK_THROWS_AS(vibtk::diagonalize<double>(h), std::invalid_argument);
}

TEST_CASE("subspace restriction embeds eigenvectors in the full space") {
  const Encoding enc(EncodingKind::gray, 6);
  const auto h = vibtk::build_hamiltonian<double>(harmonic_ff({1000.0}), 6, enc);
  const auto basis = vibtk::codeword_basis(enc, 1);
  const auto sol = vibtk::diagonalize<double>(h, basis);
  REQUIRE(sol.eigenvalues.size() == 6);
  for (int n = 0; n < 6; ++n)
    CHECK(sol.eigenvalues(n) == doctest::Approx(1000.0 * (n + 0.5)));
  // Amplitudes vanish outside the codeword subspace.
  for (int j = 0; j < 6; ++j)
    for (std::int64_t b = 0; b < 8; ++b)
      if (std::find(basis.begin(), basis.end(),
                    static_cast<std::uint64_t>(b)) == basis.end())
        CHECK(std::abs(sol.eigenvectors(b, j)) < 1e-12);
}

TEST_CASE("harmonic CO with a linear dipole has one bright transition") {
  const auto mol = co_molecule();
  const Encoding enc(EncodingKind::gray, 8);
  const auto h =
      vibtk::build_hamiltonian<double>(harmonic_ff({2157.96}), 8, enc);
  const auto mu = vibtk::build_dipole<double>(mol.dipole, 'x', 1, 8, enc);
  const auto sol = vibtk::diagonalize<double>(h);
  const auto spec = vibtk::ir_spectrum<double>(sol, {mu});
  int bright = 0;
  for (const auto& p : spec.peaks) {
    if (p.intensity > 1e-10) {
      ++bright;
      CHECK(p.energy == doctest::Approx(2157.96));
      CHECK(p.intensity == doctest::Approx(0.5));  // |<0|q|1>|^2
    }
  }
  CHECK(bright == 1);
}

TEST_CASE("identity dipole produces no intensity") {
  const Encoding enc(EncodingKind::gray, 4);
  const auto h =
      vibtk::build_hamiltonian<double>(harmonic_ff({1500.0}), 4, enc);
  PauliSum<double> mu(2);
  mu.add_term("II", 1.0);
  const auto spec =
      vibtk::ir_spectrum<double>(vibtk::diagonalize<double>(h), {mu});
  for (const auto& p : spec.peaks) CHECK(p.intensity < 1e-20);
}

TEST_CASE("Fermi resonance shows the extra anharmonic peak near 2940") {
  const auto mol = fermi_resonance_molecule();
  const Encoding enc(EncodingKind::gray, 6);
  const auto basis = vibtk::codeword_basis(enc, 2);
  const auto mu = vibtk::build_dipole<double>(mol.dipole, 'x', 2, 6, enc);

  const auto count_near_2940 = [&](const ForceField<double>& ff) {
    const auto h = vibtk::build_hamiltonian<double>(ff, 6, enc);
    const auto spec = vibtk::ir_spectrum<double>(
        vibtk::diagonalize<double>(h, basis), {mu});
    int hits = 0;
    for (const auto& p : spec.peaks)
      if (std::abs(p.energy - 2940.0) < 50.0 && p.intensity > 1e-4) ++hits;
    return hits;
  };
  CHECK(count_near_2940(mol.force_field) == 1);
  CHECK(count_near_2940(harmonic_ff({1470.0, 2890.0})) == 0);
}

TEST_CASE("sum rule: intensities sum to the ground-state mu^2 expectation") {
  const auto mol = co_molecule();
  const Encoding enc(EncodingKind::gray, 8);
  const auto h = vibtk::build_hamiltonian<double>(mol.force_field, 8, enc);
  const auto mu = vibtk::build_dipole<double>(mol.dipole, 'x', 1, 8, enc);
  const auto sol = vibtk::diagonalize<double>(h);
  const auto spec = vibtk::ir_spectrum<double>(sol, {mu});
  const Matrix md = to_dense(mu);
  const CVector ground = sol.eigenvectors.col(0);
  const double mu2 = std::real(ground.dot(md * md * ground));
  double total = std::norm(ground.dot(md * ground));
  for (const auto& p : spec.peaks) total += p.intensity;
  CHECK(total == doctest::Approx(mu2).epsilon(1e-8));
}

TEST_CASE("intensities are invariant under a dipole constant shift") {
  const auto mol = co_molecule();
  const Encoding enc(EncodingKind::gray, 8);
  const auto h = vibtk::build_hamiltonian<double>(mol.force_field, 8, enc);
  const auto sol = vibtk::diagonalize<double>(h);
  const auto mu = vibtk::build_dipole<double>(mol.dipole, 'x', 1, 8, enc);
  auto mu_shifted = mu;
  mu_shifted.add_term(vibtk::PauliString(3), 10.0);
  const auto a = vibtk::ir_spectrum<double>(sol, {mu});
  const auto b = vibtk::ir_spectrum<double>(sol, {mu_shifted});
  REQUIRE(a.peaks.size() == b.peaks.size());
  for (std::size_t i = 0; i < a.peaks.size(); ++i)
    CHECK(a.peaks[i].intensity ==
          doctest::Approx(b.peaks[i].intensity).epsilon(1e-9));
}

TEST_CASE("peak energies agree between Gray and standard-binary encodings") {
  const auto mol = co_molecule();
  std::vector<double> gray_peaks, bin_peaks;
  for (const auto kind : {EncodingKind::gray, EncodingKind::std_binary}) {
    const Encoding enc(kind, 8);
    const auto h = vibtk::build_hamiltonian<double>(mol.force_field, 8, enc);
    const auto mu = vibtk::build_dipole<double>(mol.dipole, 'x', 1, 8, enc);
    const auto spec =
        vibtk::ir_spectrum<double>(vibtk::diagonalize<double>(h), {mu});
    auto& out = kind == EncodingKind::gray ? gray_peaks : bin_peaks;
    for (const auto& p : spec.peaks) out.push_back(p.energy);
  }
  REQUIRE(gray_peaks.size() == bin_peaks.size());
  for (std::size_t i = 0; i < gray_peaks.size(); ++i)
    CHECK(std::abs(gray_peaks[i] - bin_peaks[i]) < 1e-6);
}

TEST_CASE("degenerate multiplets merge into single peaks") {
  const Encoding enc(EncodingKind::gray, 4);
  vibtk::DipoleSurface<double> ds;
  ds.axis('x').linear[0] = 1.0;
  ds.axis('x').linear[1] = 1.0;
  const auto h =
      vibtk::build_hamiltonian<double>(harmonic_ff({1500.0, 1500.0}), 4, enc);
  const auto mu = vibtk::build_dipole<double>(ds, 'x', 2, 4, enc);
  const auto spec =
      vibtk::ir_spectrum<double>(vibtk::diagonalize<double>(h), {mu});
  for (std::size_t i = 1; i < spec.peaks.size(); ++i)
    CHECK(spec.peaks[i].energy > spec.peaks[i - 1].energy + 1e-6);
  // The two degenerate fundamentals pool their intensity into one peak.
  REQUIRE(!spec.peaks.empty());
  CHECK(spec.peaks.front().energy == doctest::Approx(1500.0));
  CHECK(spec.peaks.front().intensity == doctest::Approx(1.0));
}

TEST_CASE("broadened curve peaks at the line and integrates to the weight") {
  vibtk::Spectrum<double> s;
  s.peaks.push_back({1000.0, 1.0, {1.0, 0.0, 0.0}});
  std::vector<double> grid;
  for (double x = 800; x <= 1200; x += 0.5) grid.push_back(x);
  const auto curve = vibtk::broaden<double>(s, 10.0, grid);
  const auto it = std::max_element(curve.begin(), curve.end());
  CHECK(grid[static_cast<std::size_t>(it - curve.begin())] ==
        doctest::Approx(1000.0));
  const double integral =
      std::accumulate(curve.begin(), curve.end(), 0.0) * 0.5;
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(vibtk::broaden<double>(s, -1.0, grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(vibtk::broaden<double>(s, 10.0, {}),
                  std::invalid_argument);
}
