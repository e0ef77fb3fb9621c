#pragma once

// Truncated d-level bosonic operators, level-to-bit encodings (Gray,
// standard binary, unary) and exact conversion to Pauli sums, including
// multi-mode tensor products and the per-term-type counting table.

#include "vibtk/pauli.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vibtk {

// Dense operator on one truncated bosonic mode: A = sum c_{l,l'} |l'><l|.
template <typename Scalar = double>
struct DLevelOperator {
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                               Eigen::Dynamic>;
  int d = 0;
  Matrix matrix;

  DLevelOperator() = default;
  DLevelOperator(int d_, Matrix m) : d(d_), matrix(std::move(m)) {
    if (d < 2) throw std::invalid_argument("DLevelOperator: d >= 2 required");
    if (matrix.rows() != d || matrix.cols() != d)
      throw std::invalid_argument("DLevelOperator: matrix must be d x d");
  }

  bool is_hermitian(Scalar tol = Scalar(1e-10)) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
};

// Annihilation operator a with a[n, n+1] = sqrt(n+1), truncated at d levels.
template <typename Scalar = double>
DLevelOperator<Scalar> ladder_operator(int d) {
  typename DLevelOperator<Scalar>::Matrix a =
      DLevelOperator<Scalar>::Matrix::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n)
    a(n, n + 1) = std::sqrt(static_cast<Scalar>(n + 1));
  return DLevelOperator<Scalar>(d, std::move(a));
}

namespace detail {

// q and p built at an enlarged truncation, raised to `power`, then projected
// back to d levels. Any enlargement >= power gives the same result because
// ladder matrix elements reach at most `power` levels away; the operator is
// then the infinite-space power truncated to the physical d levels.
template <typename Scalar>
typename DLevelOperator<Scalar>::Matrix projected_power(bool momentum,
                                                        int power, int d) {
  using Matrix = typename DLevelOperator<Scalar>::Matrix;
  const int big = d + power + 2;
  const Matrix a = ladder_operator<Scalar>(big).matrix;
  const std::complex<Scalar> inv_sqrt2(Scalar(1) / std::sqrt(Scalar(2)), 0);
  Matrix base;
  if (momentum)
    base = std::complex<Scalar>(0, 1) * inv_sqrt2 * (a.adjoint() - a);
  else
    base = inv_sqrt2 * (a + a.adjoint());
  Matrix acc = Matrix::Identity(big, big);
  for (int k = 0; k < power; ++k) acc = acc * base;
  return acc.topLeftCorner(d, d);
}

}  // namespace detail

// q = (a + a^dag)/sqrt(2)
template <typename Scalar = double>
DLevelOperator<Scalar> position_operator(int d) {
  return DLevelOperator<Scalar>(d, detail::projected_power<Scalar>(false, 1, d));
}

// p = i(a^dag - a)/sqrt(2)
template <typename Scalar = double>
DLevelOperator<Scalar> momentum_operator(int d) {
  return DLevelOperator<Scalar>(d, detail::projected_power<Scalar>(true, 1, d));
}

// q^power (projected power; see detail::projected_power).
template <typename Scalar = double>
DLevelOperator<Scalar> position_power(int power, int d) {
  return DLevelOperator<Scalar>(d,
                                detail::projected_power<Scalar>(false, power, d));
}

// p^power (projected power).
template <typename Scalar = double>
DLevelOperator<Scalar> momentum_power(int power, int d) {
  return DLevelOperator<Scalar>(d,
                                detail::projected_power<Scalar>(true, power, d));
}

// q^2 + p^2 = diag(2n + 1): the truncation corners of q^2 and p^2 cancel.
template <typename Scalar = double>
DLevelOperator<Scalar> harmonic_operator(int d) {
  return DLevelOperator<Scalar>(
      d, position_power<Scalar>(2, d).matrix + momentum_power<Scalar>(2, d).matrix);
}

template <typename Scalar = double>
DLevelOperator<Scalar> identity_operator(int d) {
  return DLevelOperator<Scalar>(d, DLevelOperator<Scalar>::Matrix::Identity(d, d));
}

enum class EncodingKind { gray, std_binary, unary };

inline std::string to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::gray: return "gray";
    case EncodingKind::std_binary: return "binary";
    case EncodingKind::unary: return "unary";
  }
  return "?";
}

inline EncodingKind encoding_from_string(const std::string& s) {
  if (s == "gray") return EncodingKind::gray;
  if (s == "binary" || s == "std_binary") return EncodingKind::std_binary;
  if (s == "unary") return EncodingKind::unary;
  throw std::invalid_argument("unknown encoding: " + s);
}

// Level-to-bit map for one truncated mode.
struct Encoding {
  EncodingKind kind = EncodingKind::gray;
  int d = 2;

  Encoding() = default;
  Encoding(EncodingKind k, int d_) : kind(k), d(d_) {
    if (d < 2) throw std::invalid_argument("Encoding: d >= 2 required");
  }

  int n_qubits_per_mode() const {
    if (kind == EncodingKind::unary) return d;
    int w = 0;
    while ((1 << w) < d) ++w;
    return std::max(w, 1);
  }

  // Bit 0 of the codeword is the lowest-indexed qubit of the mode block.
  std::uint64_t codeword(int level) const {
    if (level < 0 || level >= d)
      throw std::invalid_argument("Encoding::codeword: level out of range");
    const auto l = static_cast<std::uint64_t>(level);
    switch (kind) {
      case EncodingKind::gray: return l ^ (l >> 1);
      case EncodingKind::std_binary: return l;
      case EncodingKind::unary: return std::uint64_t{1} << level;
    }
    return 0;
  }
};

// Exact Pauli decomposition of |l'><l| under the encoding's codewords via
// the tensor product of single-qubit factors
//   |0><0| = (I+Z)/2, |1><1| = (I-Z)/2, |0><1| = (X+iY)/2, |1><0| = (X-iY)/2.
template <typename Scalar = double>
PauliSum<Scalar> projector_to_pauli(int l, int lp, const Encoding& enc) {
  using Complex = std::complex<Scalar>;
  const int w = enc.n_qubits_per_mode();
  const std::uint64_t cb = enc.codeword(l);
  const std::uint64_t cpb = enc.codeword(lp);
  // Accumulate the product over qubits directly: each factor contributes one
  // of two single-qubit strings, so the result has 2^w terms before
  // simplification; build them by binary expansion.
  PauliSum<Scalar> result(w);
  const std::int64_t n_branches = std::int64_t{1} << w;
  for (std::int64_t branch = 0; branch < n_branches; ++branch) {
    std::uint64_t x = 0, z = 0;
    Complex coeff(1);
    for (int q = 0; q < w; ++q) {
      const bool bl = (cb >> q) & 1u;
      const bool blp = (cpb >> q) & 1u;
      const bool second = (branch >> q) & 1u;  // pick 2nd term of the factor
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (bl == blp) {
        // (I +/- Z)/2
        coeff *= Complex(Scalar(0.5));
        if (second) {
          z |= bit;
          if (bl) coeff *= Complex(Scalar(-1));
        }
      } else {
        // (X -+ iY)/2 : |0><1| has +i, |1><0| has -i on the Y branch.
        coeff *= Complex(Scalar(0.5));
        x |= bit;
        if (second) {
          z |= bit;  // X with Z bit set = Y
          coeff *= blp ? Complex(Scalar(0), Scalar(-1))
                       : Complex(Scalar(0), Scalar(1));
        }
      }
    }
    result.add_term(PauliString(w, x, z), coeff);
  }
  result.simplify();
  return result;
}

// sum_{l,l'} c_{l,l'} |l'><l| encoded; restricted to the codeword subspace it
// equals op.matrix exactly (unary: zero outside the codeword subspace).
template <typename Scalar = double>
PauliSum<Scalar> encode_operator(const DLevelOperator<Scalar>& op,
                                 const Encoding& enc) {
  if (op.d != enc.d)
    throw std::invalid_argument("encode_operator: dimension mismatch");
  PauliSum<Scalar> result(enc.n_qubits_per_mode());
  for (int l = 0; l < op.d; ++l) {
    for (int lp = 0; lp < op.d; ++lp) {
      const std::complex<Scalar> c = op.matrix(lp, l);
      if (std::abs(c) < Scalar(1e-14)) continue;
      PauliSum<Scalar> proj = projector_to_pauli<Scalar>(l, lp, enc);
      for (const auto& [p, v] : proj.terms()) result.add_term(p, c * v);
    }
  }
  result.simplify();
  return result;
}

// Tensor-embedded Pauli sum over n_modes * w qubits; mode m occupies qubits
// [m*w, (m+1)*w); modes not listed carry identity. Mode indices must be
// distinct (pre-multiply powers on the same mode first).
template <typename Scalar = double>
PauliSum<Scalar> encode_mode_product(
    const std::vector<std::pair<int, DLevelOperator<Scalar>>>& factors,
    int n_modes, const Encoding& enc) {
  const int w = enc.n_qubits_per_mode();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].first < 0 || factors[i].first >= n_modes)
      throw std::invalid_argument("encode_mode_product: mode index out of range");
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (factors[i].first == factors[j].first)
        throw std::invalid_argument(
            "encode_mode_product: repeated mode index; pre-multiply powers");
  }
  const int n_qubits = n_modes * w;
  if (n_qubits > 64)
    throw std::invalid_argument("encode_mode_product: > 64 qubits");
  PauliSum<Scalar> result(n_qubits);
  result.add_term(PauliString(n_qubits), std::complex<Scalar>(1));
  for (const auto& [mode, op] : factors) {
    const PauliSum<Scalar> local = encode_operator<Scalar>(op, enc);
    PauliSum<Scalar> next(n_qubits);
    const int shift = mode * w;
    for (const auto& [pl, cl] : local.terms()) {
      const PauliString embedded(n_qubits, pl.x_mask() << shift,
                                 pl.z_mask() << shift);
      for (const auto& [pr, cr] : result.terms()) {
        // Disjoint supports: plain mask OR, no phase.
        next.add_term(PauliString(n_qubits, embedded.x_mask() | pr.x_mask(),
                                  embedded.z_mask() | pr.z_mask()),
                      cl * cr);
      }
    }
    result = std::move(next);
  }
  result.simplify();
  return result;
}

struct TermCount {
  std::size_t n_nonidentity = 0;
  bool includes_identity = false;
};

// Per-term-type Pauli counts for the 8 anharmonic term types, computed by
// encoding each pre-multiplied operator product. Counts exclude the identity
// string; a flag reports whether the identity appears.
template <typename Scalar = double>
std::map<std::string, TermCount> vibrational_term_count_table(int d) {
  if (d != 4 && d != 8)
    throw std::invalid_argument("vibrational_term_count_table: d must be 4 or 8");
  const Encoding enc(EncodingKind::gray, d);
  const auto count = [](const PauliSum<Scalar>& s) {
    TermCount tc;
    for (const auto& [p, c] : s.terms()) {
      if (p.is_identity())
        tc.includes_identity = true;
      else
        ++tc.n_nonidentity;
    }
    return tc;
  };
  const auto q1 = position_power<Scalar>(1, d);
  const auto q2 = position_power<Scalar>(2, d);
  const auto q3 = position_power<Scalar>(3, d);
  const auto q4 = position_power<Scalar>(4, d);
  const auto p2 = momentum_power<Scalar>(2, d);
  std::map<std::string, TermCount> table;
  table["p2"] = count(encode_operator<Scalar>(p2, enc));
  table["q2"] = count(encode_operator<Scalar>(q2, enc));
  table["q3"] = count(encode_operator<Scalar>(q3, enc));
  table["q4"] = count(encode_operator<Scalar>(q4, enc));
  table["q2qj"] = count(encode_mode_product<Scalar>({{0, q2}, {1, q1}}, 2, enc));
  table["q3qj"] = count(encode_mode_product<Scalar>({{0, q3}, {1, q1}}, 2, enc));
  table["q2qj2"] = count(encode_mode_product<Scalar>({{0, q2}, {1, q2}}, 2, enc));
  table["q2qjqk"] =
      count(encode_mode_product<Scalar>({{0, q2}, {1, q1}, {2, q1}}, 3, enc));
  return table;
}

// Basis states (over n_modes * w qubits) spanned by products of per-mode
// codewords — the physical subspace of the encoding.
inline std::vector<std::uint64_t> codeword_basis(const Encoding& enc,
                                                 int n_modes) {
  const int w = enc.n_qubits_per_mode();
  if (n_modes * w > 62)
    throw std::invalid_argument("codeword_basis: too many qubits");
  std::vector<std::uint64_t> states{0};
  for (int m = 0; m < n_modes; ++m) {
    std::vector<std::uint64_t> next;
    next.reserve(states.size() * static_cast<std::size_t>(enc.d));
    for (int l = 0; l < enc.d; ++l) {
      const std::uint64_t cw = enc.codeword(l) << (m * w);
      for (const std::uint64_t s : states) next.push_back(s | cw);
    }
    states = std::move(next);
  }
  std::sort(states.begin(), states.end());
  return states;
}

}  // namespace vibtk
