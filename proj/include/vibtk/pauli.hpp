#pragma once

// Exact symbolic algebra over sums of Pauli strings, resource metrics
// (term count, locality distribution, magnitude W) and dense realization.

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vibtk {

inline constexpr double kHartreeInCm = 219474.6313632;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

// A tensor product of single-qubit operators from {I,X,Y,Z} on a fixed
// number of qubits, stored as X/Z bit masks (qubit q = bit q):
//   (x,z) = (0,0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits) : n_(n_qubits) { check_size(n_qubits); }
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z)
      : x_(x), z_(z), n_(n_qubits) {
    check_size(n_qubits);
  }

  // Parses e.g. "XZII"; leftmost character is qubit 0.
  static PauliString from_letters(std::string_view letters) {
    PauliString p(static_cast<int>(letters.size()));
    for (int q = 0; q < p.n_; ++q) {
      switch (letters[static_cast<std::size_t>(q)]) {
        case 'I': break;
        case 'X': p.set_letter(q, Pauli::X); break;
        case 'Y': p.set_letter(q, Pauli::Y); break;
        case 'Z': p.set_letter(q, Pauli::Z); break;
        default:
          throw std::invalid_argument("invalid Pauli letter in: " +
                                      std::string(letters));
      }
    }
    return p;
  }

  int n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  Pauli letter(int q) const {
    const int xb = static_cast<int>((x_ >> q) & 1u);
    const int zb = static_cast<int>((z_ >> q) & 1u);
    static constexpr Pauli table[4] = {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y};
    return table[xb + 2 * zb];
  }

  void set_letter(int q, Pauli p) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    x_ &= ~bit;
    z_ &= ~bit;
    if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
    if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
  }

  // Number of non-identity letters.
  int weight() const { return std::popcount(x_ | z_); }
  bool is_identity() const { return (x_ | z_) == 0; }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = pauli_char(letter(q));
    return s;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  // Lexicographic over letter sequences with qubit 0 leftmost, I < X < Y < Z.
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
    if (diff == 0) return false;
    const int q = std::countr_zero(diff);
    return letter_rank(a, q) < letter_rank(b, q);
  }

  struct Hash {
    std::size_t operator()(const PauliString& p) const {
      std::uint64_t h = p.x_ * 0x9e3779b97f4a7c15ull;
      h ^= p.z_ + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(p.n_));
    }
  };

 private:
  static int letter_rank(const PauliString& p, int q) {
    const int xb = static_cast<int>((p.x_ >> q) & 1u);
    const int zb = static_cast<int>((p.z_ >> q) & 1u);
    // I=0 < X=1 < Y=2 < Z=3
    static constexpr int rank[4] = {0, 1, 3, 2};  // index xb + 2*zb
    return rank[xb + 2 * zb];
  }

  static void check_size(int n) {
    if (n < 0 || n > 64)
      throw std::invalid_argument("PauliString supports 0..64 qubits");
  }

  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int n_ = 0;
};

// Product of two Pauli strings: returns the resulting string and the
// accumulated phase (XY = iZ and cyclic, tracked per qubit).
template <typename Scalar = double>
inline std::pair<PauliString, std::complex<Scalar>> pauli_product(
    const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("pauli_product: qubit-count mismatch");
  const std::uint64_t x1 = a.x_mask(), z1 = a.z_mask();
  const std::uint64_t x2 = b.x_mask(), z2 = b.z_mask();
  // Phase exponent of i: each qubit contributes via the symplectic form.
  // Using P = i^{x z} X^x Z^z per qubit:
  //   P1 P2 = i^{x1 z1 + x2 z2 - x3 z3} (-1)^{z1 x2} X^{x3} Z^{z3}  (mod 4)
  // with x3 = x1^x2, z3 = z1^z2.
  const std::uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
  int e = std::popcount(x1 & z1) + std::popcount(x2 & z2) -
          std::popcount(x3 & z3) + 2 * std::popcount(z1 & x2);
  e &= 3;
  static constexpr std::complex<double> iota[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> ph = iota[e];
  return {PauliString(a.n_qubits(), x3, z3),
          std::complex<Scalar>(static_cast<Scalar>(ph.real()),
                               static_cast<Scalar>(ph.imag()))};
}

namespace detail {
inline int dense_limit_from_env(int fallback) {
  if (const char* env = std::getenv("VIBTK_DENSE_LIMIT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}
}  // namespace detail

inline int default_dense_limit() { return detail::dense_limit_from_env(14); }

// Linear combination of Pauli strings with complex coefficients.
// Units are carried externally (cm^-1, Hartree, Debye, ...).
template <typename Scalar = double>
class PauliSum {
 public:
  using Complex = std::complex<Scalar>;
  using TermMap = std::map<PauliString, Complex>;

  static constexpr Scalar kDropTol = Scalar(1e-12);

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 0 || n_qubits > 64)
      throw std::invalid_argument("PauliSum supports 0..64 qubits");
  }

  int n_qubits() const { return n_; }
  std::size_t n_terms() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(const PauliString& p, Complex c) {
    if (p.n_qubits() != n_)
      throw std::invalid_argument("add_term: qubit-count mismatch");
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) it->second += c;
  }
  void add_term(std::string_view letters, Complex c) {
    add_term(PauliString::from_letters(letters), c);
  }

  Complex coefficient(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex(0) : it->second;
  }
  Complex identity_coefficient() const {
    return coefficient(PauliString(n_));
  }

  // Drops coefficients below `tol` relative to the largest magnitude.
  PauliSum& simplify(Scalar tol = kDropTol) {
    Scalar max_mag = 0;
    for (const auto& [p, c] : terms_) max_mag = std::max(max_mag, std::abs(c));
    if (max_mag == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) <= tol * max_mag)
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  bool is_hermitian(Scalar tol = Scalar(1e-10)) const {
    Scalar max_mag = Scalar(0);
    for (const auto& [p, c] : terms_) max_mag = std::max(max_mag, std::abs(c));
    const Scalar bound = tol * std::max(max_mag, Scalar(1));
    for (const auto& [p, c] : terms_)
      if (std::abs(c.imag()) > bound) return false;
    return true;
  }

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_)
      throw std::invalid_argument("PauliSum add: qubit-count mismatch");
    PauliSum r = a;
    for (const auto& [p, c] : b.terms_) r.add_term(p, c);
    r.simplify();
    return r;
  }

  friend PauliSum operator-(const PauliSum& a, const PauliSum& b) {
    return a + (b * Complex(-1));
  }

  friend PauliSum operator*(const PauliSum& a, Complex s) {
    PauliSum r = a;
    for (auto& [p, c] : r.terms_) c *= s;
    r.simplify();
    return r;
  }
  friend PauliSum operator*(Complex s, const PauliSum& a) { return a * s; }
  friend PauliSum operator*(const PauliSum& a, Scalar s) {
    return a * Complex(s);
  }
  friend PauliSum operator*(Scalar s, const PauliSum& a) {
    return a * Complex(s);
  }

  // Exact product with single-qubit phase tracking; simplified.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_)
      throw std::invalid_argument("PauliSum multiply: qubit-count mismatch");
    PauliSum r(a.n_);
    for (const auto& [p1, c1] : a.terms_) {
      for (const auto& [p2, c2] : b.terms_) {
        auto [p, ph] = pauli_product<Scalar>(p1, p2);
        r.add_term(p, c1 * c2 * ph);
      }
    }
    r.simplify();
    return r;
  }

  // W = sqrt(sum_{k != I} a_k^2); identity term excluded.
  Scalar w_magnitude() const {
    if (!is_hermitian())
      throw std::invalid_argument("w_magnitude: non-Hermitian input");
    Scalar s2 = 0;
    for (const auto& [p, c] : terms_) {
      if (p.is_identity()) continue;
      s2 += c.real() * c.real();
    }
    return std::sqrt(s2);
  }

  Scalar max_nonidentity_coefficient() const {
    Scalar m = 0;
    for (const auto& [p, c] : terms_) {
      if (p.is_identity()) continue;
      m = std::max(m, std::abs(c));
    }
    return m;
  }

  // Counts of strings by weight; identity counted at weight 0.
  std::map<int, std::size_t> locality_histogram() const {
    std::map<int, std::size_t> h;
    for (const auto& [p, c] : terms_) ++h[p.weight()];
    return h;
  }

  // One term per line: "<letters> <re> <im>"; leftmost character = qubit 0.
  void write(std::ostream& os, std::string_view unit = "none") const {
    os << "n_qubits " << n_ << "\n";
    os << "unit " << unit << "\n";
    os.precision(17);
    for (const auto& [p, c] : terms_)
      os << p.str() << " " << c.real() << " " << c.imag() << "\n";
  }

  static PauliSum read(std::istream& is, std::string* unit_out = nullptr) {
    std::string key;
    int n = 0;
    if (!(is >> key >> n) || key != "n_qubits")
      throw std::runtime_error("PauliSum::read: missing n_qubits header");
    std::string unit_key, unit;
    if (!(is >> unit_key >> unit) || unit_key != "unit")
      throw std::runtime_error("PauliSum::read: missing unit header");
    if (unit_out) *unit_out = unit;
    PauliSum r(n);
    std::string letters;
    Scalar re, im;
    while (is >> letters >> re >> im)
      r.add_term(PauliString::from_letters(letters), Complex(re, im));
    r.simplify();
    return r;
  }

 private:
  TermMap terms_;
  int n_ = 0;
};

// Dense realization: sum_k a_k (tensor product of sigma), dimension 2^{N_q}.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> to_dense(
    const PauliSum<Scalar>& h, int dense_limit = default_dense_limit()) {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = h.n_qubits();
  if (n > dense_limit)
    throw std::invalid_argument("to_dense: dimension limit exceeded (" +
                                std::to_string(n) + " > " +
                                std::to_string(dense_limit) + " qubits)");
  const std::int64_t dim = std::int64_t{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  static constexpr std::complex<double> iota[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [p, c] : h.terms()) {
    const std::uint64_t x = p.x_mask(), z = p.z_mask();
    const Complex base =
        c * Complex(static_cast<Scalar>(iota[std::popcount(x & z) & 3].real()),
                    static_cast<Scalar>(iota[std::popcount(x & z) & 3].imag()));
    for (std::int64_t col = 0; col < dim; ++col) {
      const auto b = static_cast<std::uint64_t>(col);
      const std::int64_t row = static_cast<std::int64_t>(b ^ x);
      const Scalar sign =
          (std::popcount(z & b) & 1) ? Scalar(-1) : Scalar(1);
      m(row, col) += base * sign;
    }
  }
  return m;
}

}  // namespace vibtk
