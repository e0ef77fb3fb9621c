#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vibtk/vibham.hpp"

#include <Eigen/Dense>

#include <random>
#include <sstream>

using vibtk::Encoding;
using vibtk::EncodingKind;
using vibtk::ForceField;
using vibtk::PauliString;
using vibtk::PauliSum;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

namespace {

constexpr const char* kToyFile = R"(# toy two-mode system
[omegas]
0 1000.0
1 2000.0

[cubic]
1 0 0 25.0   # indices may arrive unsorted

[quartic]
0 0 1 1 -5.0

[dipole.x]
const 0.25
0 1.5
0 1 -0.75
)";

}  // namespace

TEST_CASE("force-field files parse sections, comments, and sorting") {
  std::istringstream in(kToyFile);
  const auto data = vibtk::load_force_field<double>(in);
  const auto& ff = data.force_field;
  CHECK(ff.n_modes == 2);
  CHECK(ff.omegas[0] == doctest::Approx(1000.0));
  CHECK(ff.omegas[1] == doctest::Approx(2000.0));
  CHECK(ff.cubic.at({0, 0, 1}) == doctest::Approx(25.0));
  CHECK(ff.quartic.at({0, 0, 1, 1}) == doctest::Approx(-5.0));
  const auto& ax = data.dipole.axis('x');
  CHECK(ax.constant == doctest::Approx(0.25));
  CHECK(ax.linear.at(0) == doctest::Approx(1.5));
  CHECK(ax.quadratic.at({0, 1}) == doctest::Approx(-0.75));
  CHECK(!data.dipole.axis('y').quadratic.count({0, 1}));
}

TEST_CASE("load -> dump -> load round-trips exactly") {
  std::istringstream in(kToyFile);
  const auto data = vibtk::load_force_field<double>(in);
  std::stringstream dumped;
  vibtk::dump_force_field<double>(data, dumped);
  const auto back = vibtk::load_force_field<double>(dumped);
  CHECK(back.force_field.n_modes == data.force_field.n_modes);
  CHECK(back.force_field.omegas == data.force_field.omegas);
  CHECK(back.force_field.cubic == data.force_field.cubic);
  CHECK(back.force_field.quartic == data.force_field.quartic);
  CHECK(back.dipole.axis('x').linear == data.dipole.axis('x').linear);
  CHECK(back.dipole.axis('x').quadratic == data.dipole.axis('x').quadratic);
}

TEST_CASE("malformed force fields are rejected") {
  const auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS(vibtk::load_force_field<double>(in));
  };
  reject("0 1000.0\n");                        // entry outside a section
  reject("[omegas]\n0 1000\n[cubic]\n0 0 5\n");  // missing index
  reject("[omegas]\n-1 1000\n");               // negative index
  reject("[omegas]\n0 -5.0\n");                // omega <= 0 fails validation
}

TEST_CASE("all-distinct cubic indices are accepted") {
  ForceField<double> ff;
  ff.n_modes = 3;
  ff.omegas = {1000, 1100, 1200};
  ff.cubic[{0, 1, 2}] = -116.13;
  CHECK_NOTHROW(ff.validate());
}

TEST_CASE("harmonic Hamiltonian matches the closed-form encoding") {
  ForceField<double> ff;
  ff.n_modes = 1;
  ff.omegas = {2157.96};
  const Encoding enc(EncodingKind::gray, 4);
  const auto h = vibtk::build_hamiltonian<double>(ff, 4, enc);
  // omega/2 * (4I - Z0 Z1 - 2 Z1)
  CHECK(h.n_terms() == 3);
  CHECK(h.coefficient(PauliString::from_letters("II")).real() ==
        doctest::Approx(2.0 * 2157.96));
  CHECK(h.coefficient(PauliString::from_letters("ZZ")).real() ==
        doctest::Approx(-2157.96 / 2));
  CHECK(h.coefficient(PauliString::from_letters("IZ")).real() ==
        doctest::Approx(-2157.96));
}

TEST_CASE("anharmonic terms add the encoded monomials") {
  ForceField<double> ff;
  ff.n_modes = 1;
  ff.omegas = {2000.0};
  ff.cubic[{0, 0, 0}] = -700.0;
  ff.quartic[{0, 0, 0, 0}] = 200.0;
  const Encoding enc(EncodingKind::gray, 4);
  const auto h = vibtk::build_hamiltonian<double>(ff, 4, enc);
  const Matrix dense = to_dense(h);

  const auto q3 = vibtk::position_power<double>(3, 4).matrix;
  const auto q4 = vibtk::position_power<double>(4, 4).matrix;
  const auto harm = vibtk::harmonic_operator<double>(4).matrix;
  const Matrix expected_levels =
      1000.0 * harm - 700.0 * q3 + 200.0 * q4;
  for (int l = 0; l < 4; ++l)
    for (int lp = 0; lp < 4; ++lp) {
      const auto r = static_cast<std::int64_t>(enc.codeword(lp));
      const auto c = static_cast<std::int64_t>(enc.codeword(l));
      CHECK(std::abs(dense(r, c) - expected_levels(lp, l)) < 1e-9);
    }
}

TEST_CASE("dipole operators encode the Taylor surface") {
  std::istringstream in(kToyFile);
  const auto data = vibtk::load_force_field<double>(in);
  const Encoding enc(EncodingKind::gray, 4);
  const auto mu = vibtk::build_dipole<double>(data.dipole, 'x', 2, 4, enc);
  const auto q0 = vibtk::encode_mode_product<double>(
      {{0, vibtk::position_power<double>(1, 4)}}, 2, enc);
  const auto q0q1 = vibtk::encode_mode_product<double>(
      {{0, vibtk::position_power<double>(1, 4)},
       {1, vibtk::position_power<double>(1, 4)}},
      2, enc);
  PauliSum<double> expected(4);
  expected.add_term(PauliString(4), Complex(0.25));
  for (const auto& [p, c] : q0.terms()) expected.add_term(p, 1.5 * c);
  for (const auto& [p, c] : q0q1.terms()) expected.add_term(p, -0.75 * c);
  expected.simplify();
  CHECK((to_dense(mu) - to_dense(expected)).cwiseAbs().maxCoeff() < 1e-12);

  // Missing axis yields an empty operator.
  const auto mu_z = vibtk::build_dipole<double>(data.dipole, 'z', 2, 4, enc);
  CHECK(mu_z.n_terms() == 0);
}

TEST_CASE("folding squares the shifted Hamiltonian") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0, 1);
  PauliSum<double> h(3);
  for (const char* letters : {"XZI", "IIZ", "ZZY", "III", "YXI"})
    h.add_term(letters, g(rng));
  const double zeta = 0.37;
  const Matrix dense = to_dense(h);
  const Matrix shifted = dense - zeta * Matrix::Identity(8, 8);
  const Matrix expected = shifted * shifted;
  CHECK((to_dense(vibtk::fold<double>(h, zeta)) - expected)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("pessimistic model enumerates the allowed couplings") {
  const auto ff2 = vibtk::pessimistic_model<double>(3, false);
  CHECK(ff2.omegas == std::vector<double>{1000.0, 2500.0, 4000.0});
  // Cubic: iii (3) + iij (6); quartic 2-body: iiii (3) + iiij (6) + iijj (3).
  CHECK(ff2.cubic.size() == 9);
  CHECK(ff2.quartic.size() == 12);
  for (const auto& [k, v] : ff2.cubic) CHECK(v == doctest::Approx(400.0));
  for (const auto& [k, v] : ff2.quartic) CHECK(v == doctest::Approx(40.0));

  const auto ff3 = vibtk::pessimistic_model<double>(3, true);
  CHECK(ff3.quartic.size() == 15);  // + iijk (3)
  CHECK(ff3.quartic.count({0, 0, 1, 2}) == 1);
  CHECK(ff3.quartic.count({0, 1, 1, 2}) == 1);
  CHECK(ff3.quartic.count({0, 1, 2, 2}) == 1);

  // Endpoints are inclusive for every mode count.
  const auto ff12 = vibtk::pessimistic_model<double>(12, false);
  CHECK(ff12.omegas.front() == doctest::Approx(1000.0));
  CHECK(ff12.omegas.back() == doctest::Approx(4000.0));
  CHECK(ff12.omegas[1] - ff12.omegas[0] ==
        doctest::Approx(3000.0 / 11));
}

TEST_CASE("built Hamiltonians are Hermitian with real coefficients") {
  const auto ff = vibtk::pessimistic_model<double>(2, true);
  const Encoding enc(EncodingKind::gray, 4);
  const auto h = vibtk::build_hamiltonian<double>(ff, 4, enc);
  CHECK(h.is_hermitian());
  const Matrix dense = to_dense(h);
  CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}
