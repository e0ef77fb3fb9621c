#pragma once

// Jordan-Wigner mapping of second-quantized terms and analytic/brute-force
// Pauli-string counting for real-basis electronic-structure Hamiltonians
// with the eight-fold integral symmetry and spin orthogonality.

#include "vibtk/pauli.hpp"

#include <array>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

namespace vibtk {

struct FermionOp {
  int orbital = 0;   // spin-orbital index
  bool dagger = false;
};

// Ordered product of ladder operators times a complex coefficient.
// Normal ordering is not required.
template <typename Scalar = double>
struct FermionTerm {
  std::vector<FermionOp> ops;
  std::complex<Scalar> coefficient{1};
};

// a_p^dag -> (prod_{m<p} Z_m) sigma_p^+,  a_p -> (prod_{m<p} Z_m) sigma_p^-,
// with sigma^{+/-} = (X -/+ iY)/2.
template <typename Scalar = double>
PauliSum<Scalar> jordan_wigner(const FermionTerm<Scalar>& term,
                               int n_orbitals) {
  using Complex = std::complex<Scalar>;
  PauliSum<Scalar> acc(n_orbitals);
  acc.add_term(PauliString(n_orbitals), term.coefficient);
  for (const FermionOp& op : term.ops) {
    if (op.orbital < 0 || op.orbital >= n_orbitals)
      throw std::invalid_argument("jordan_wigner: index out of range");
    const std::uint64_t zchain =
        (std::uint64_t{1} << op.orbital) - 1;
    const std::uint64_t bit = std::uint64_t{1} << op.orbital;
    PauliSum<Scalar> factor(n_orbitals);
    // sigma^+ = (X - iY)/2 for a^dag, sigma^- = (X + iY)/2 for a.
    factor.add_term(PauliString(n_orbitals, bit, zchain), Complex(Scalar(0.5)));
    factor.add_term(PauliString(n_orbitals, bit, zchain | bit),
                    op.dagger ? Complex(Scalar(0), Scalar(-0.5))
                              : Complex(Scalar(0), Scalar(0.5)));
    acc = acc * factor;
  }
  acc.simplify();
  return acc;
}

template <typename Scalar = double>
PauliSum<Scalar> jordan_wigner(const std::vector<FermionTerm<Scalar>>& terms,
                               int n_orbitals) {
  PauliSum<Scalar> acc(n_orbitals);
  for (const auto& t : terms) acc = acc + jordan_wigner<Scalar>(t, n_orbitals);
  return acc;
}

namespace detail {

inline long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// Closed-form count of distinct Pauli strings for an n-spatial-orbital
// electronic Hamiltonian (N = 2n spin orbitals) under the real-basis
// eight-fold symmetry, spin orthogonality, and the vanishing term classes,
// with global deduplication:
//   identity                               1
//   Z_i                                    N
//   Z_i Z_j                                C(N,2)
//   two-X/Y-qubit strings                  4 C(n,2) (N-1)
//   four-X/Y-qubit strings                 4 C(n,2) + 24 C(n,3) + 36 C(n,4)
template <typename Scalar = double>
long long es_pauli_count_analytic(int n_spatial_orbitals) {
  const long long n = n_spatial_orbitals;
  if (n < 1) throw std::invalid_argument("es_pauli_count_analytic: n >= 1");
  const long long N = 2 * n;
  using detail::choose;
  return 1 + N + choose(N, 2) + 4 * choose(n, 2) * (N - 1) +
         4 * choose(n, 2) + 24 * choose(n, 3) + 36 * choose(n, 4);
}

// Brute-force oracle: enumerate the symmetry-equivalence classes of integral
// indices with unit coefficients, Jordan-Wigner map the spin-summed class
// operators, and take the global union of surviving strings. Coefficients
// within a class are forced equal by the eight-fold symmetry (which is what
// creates the cancellations); strings never cancel across classes because
// class coefficients are generic.
template <typename Scalar = double>
long long es_pauli_count_bruteforce(int n_spatial_orbitals) {
  const int n = n_spatial_orbitals;
  if (n < 1) throw std::invalid_argument("es_pauli_count_bruteforce: n >= 1");
  if (n > 8)
    throw std::invalid_argument("es_pauli_count_bruteforce: n <= 8 required");
  const int N = 2 * n;
  const auto spin_orbital = [](int p, int s) { return 2 * p + s; };
  std::unordered_set<PauliString, PauliString::Hash> all;

  const auto collect = [&](const PauliSum<Scalar>& s) {
    for (const auto& [p, c] : s.terms())
      if (std::abs(c) > Scalar(1e-10)) all.insert(p);
  };

  // One-electron classes: {(p,q),(q,p)}, spin-summed.
  std::set<std::set<std::array<int, 2>>> seen1;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      std::set<std::array<int, 2>> orbit{{p, q}, {q, p}};
      if (!seen1.insert(orbit).second) continue;
      std::vector<FermionTerm<Scalar>> terms;
      for (const auto& [a, b] : orbit)
        for (int s = 0; s < 2; ++s)
          terms.push_back({{{spin_orbital(a, s), true},
                            {spin_orbital(b, s), false}},
                           std::complex<Scalar>(1)});
      collect(jordan_wigner<Scalar>(terms, N));
    }
  }

  // Two-electron classes: h_{PQRS} with the eight-fold symmetry; the term for
  // index tuple (P,Q,R,S) is a^dag_{P sigma} a^dag_{R mu} a_{S mu} a_{Q sigma}
  // summed over spins.
  std::set<std::set<std::array<int, 4>>> seen2;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          std::set<std::array<int, 4>> orbit{
              {p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
              {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}};
          if (!seen2.insert(orbit).second) continue;
          std::vector<FermionTerm<Scalar>> terms;
          for (const auto& t : orbit)
            for (int s1 = 0; s1 < 2; ++s1)
              for (int s2 = 0; s2 < 2; ++s2)
                terms.push_back({{{spin_orbital(t[0], s1), true},
                                  {spin_orbital(t[2], s2), true},
                                  {spin_orbital(t[3], s2), false},
                                  {spin_orbital(t[1], s1), false}},
                                 std::complex<Scalar>(1)});
          collect(jordan_wigner<Scalar>(terms, N));
        }

  return static_cast<long long>(all.size());
}

}  // namespace vibtk
