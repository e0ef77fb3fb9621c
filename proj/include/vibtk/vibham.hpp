#pragma once

// Force-field and dipole-surface data model; builders for anharmonic
// Hamiltonians, dipole operators, folded Hamiltonians, and the pessimistic
// resource-model generator.

#include "vibtk/boson.hpp"
#include "vibtk/pauli.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace vibtk {

// Harmonic frequencies (cm^-1) plus cubic/quartic force constants keyed by
// ascending-sorted index multisets. Coefficients multiply the monomial once
// (no symmetry-factor multiplicity).
template <typename Scalar = double>
struct ForceField {
  int n_modes = 0;
  std::vector<Scalar> omegas;                       // cm^-1
  std::map<std::array<int, 3>, Scalar> cubic;       // cm^-1
  std::map<std::array<int, 4>, Scalar> quartic;     // cm^-1

  void validate() const {
    if (static_cast<int>(omegas.size()) != n_modes)
      throw std::invalid_argument("ForceField: omegas size != n_modes");
    for (const Scalar w : omegas)
      if (!(w > 0)) throw std::invalid_argument("ForceField: omega <= 0");
    const auto check = [&](const auto& key) {
      int prev = -1;
      for (const int i : key) {
        if (i < 0 || i >= n_modes)
          throw std::invalid_argument("ForceField: index out of range");
        if (i < prev)
          throw std::invalid_argument("ForceField: indices must be sorted");
        prev = i;
      }
    };
    for (const auto& [k, v] : cubic) check(k);
    for (const auto& [k, v] : quartic) check(k);
  }
};

// Dipole Taylor coefficients for one Cartesian axis.
template <typename Scalar = double>
struct DipoleAxis {
  Scalar constant{0};
  std::map<int, Scalar> linear;                 // m_i
  std::map<std::array<int, 2>, Scalar> quadratic;  // m_{ij}, (i,j) sorted
};

template <typename Scalar = double>
struct DipoleSurface {
  std::array<DipoleAxis<Scalar>, 3> axes;  // x, y, z

  const DipoleAxis<Scalar>& axis(char a) const {
    switch (a) {
      case 'x': return axes[0];
      case 'y': return axes[1];
      case 'z': return axes[2];
    }
    throw std::invalid_argument(std::string("unknown axis: ") + a);
  }
  DipoleAxis<Scalar>& axis(char a) {
    return const_cast<DipoleAxis<Scalar>&>(
        static_cast<const DipoleSurface&>(*this).axis(a));
  }

  bool has_any() const {
    for (const auto& ax : axes)
      if (ax.constant != Scalar(0) || !ax.linear.empty() ||
          !ax.quadratic.empty())
        return true;
    return false;
  }
};

namespace detail {

// Encode a monomial prod_m q_m^{power_m} (powers from an index multiset).
template <typename Scalar>
PauliSum<Scalar> encode_monomial(const std::map<int, int>& powers, int n_modes,
                                 int d, const Encoding& enc) {
  std::vector<std::pair<int, DLevelOperator<Scalar>>> factors;
  factors.reserve(powers.size());
  for (const auto& [mode, power] : powers)
    factors.emplace_back(mode, position_power<Scalar>(power, d));
  return encode_mode_product<Scalar>(factors, n_modes, enc);
}

template <typename Scalar, std::size_t K>
std::map<int, int> multiset_powers(const std::array<int, K>& key) {
  std::map<int, int> powers;
  for (const int i : key) ++powers[i];
  return powers;
}

}  // namespace detail

// H = 1/2 sum_i omega_i (q_i^2 + p_i^2) + sum h_{ijk} q_i q_j q_k
//     + sum h_{ijkl} q_i q_j q_k q_l, encoded; coefficients in cm^-1.
template <typename Scalar = double>
PauliSum<Scalar> build_hamiltonian(const ForceField<Scalar>& ff, int d,
                                   const Encoding& enc) {
  ff.validate();
  if (enc.d != d) throw std::invalid_argument("build_hamiltonian: enc.d != d");
  const int w = enc.n_qubits_per_mode();
  const int n_qubits = std::max(ff.n_modes * w, 1);
  PauliSum<Scalar> h(n_qubits);
  if (ff.n_modes == 0) return h;
  const auto harm = harmonic_operator<Scalar>(d);
  for (int i = 0; i < ff.n_modes; ++i) {
    const PauliSum<Scalar> enc_h = encode_mode_product<Scalar>(
        {{i, harm}}, ff.n_modes, enc);
    for (const auto& [p, c] : enc_h.terms())
      h.add_term(p, c * std::complex<Scalar>(ff.omegas[static_cast<std::size_t>(i)] / 2));
  }
  const auto add_terms = [&](const auto& table) {
    for (const auto& [key, coeff] : table) {
      const PauliSum<Scalar> enc_t = detail::encode_monomial<Scalar>(
          detail::multiset_powers<Scalar>(key), ff.n_modes, d, enc);
      for (const auto& [p, c] : enc_t.terms())
        h.add_term(p, c * std::complex<Scalar>(coeff));
    }
  };
  add_terms(ff.cubic);
  add_terms(ff.quartic);
  h.simplify();
  return h;
}

// mu^(alpha) = mu_0 + sum m_i q_i + sum m_{ij} q_i q_j, encoded.
template <typename Scalar = double>
PauliSum<Scalar> build_dipole(const DipoleSurface<Scalar>& ds, char axis,
                              int n_modes, int d, const Encoding& enc) {
  const DipoleAxis<Scalar>& ax = ds.axis(axis);
  const int w = enc.n_qubits_per_mode();
  const int n_qubits = std::max(n_modes * w, 1);
  PauliSum<Scalar> mu(n_qubits);
  if (ax.constant != Scalar(0))
    mu.add_term(PauliString(n_qubits), std::complex<Scalar>(ax.constant));
  for (const auto& [i, m] : ax.linear) {
    const PauliSum<Scalar> enc_q = detail::encode_monomial<Scalar>(
        {{i, 1}}, n_modes, d, enc);
    for (const auto& [p, c] : enc_q.terms())
      mu.add_term(p, c * std::complex<Scalar>(m));
  }
  for (const auto& [ij, m] : ax.quadratic) {
    std::map<int, int> powers;
    ++powers[ij[0]];
    ++powers[ij[1]];
    const PauliSum<Scalar> enc_qq =
        detail::encode_monomial<Scalar>(powers, n_modes, d, enc);
    for (const auto& [p, c] : enc_qq.terms())
      mu.add_term(p, c * std::complex<Scalar>(m));
  }
  mu.simplify();
  return mu;
}

// H_fold = (H - zeta I)^2, exact Pauli square.
template <typename Scalar = double>
PauliSum<Scalar> fold(const PauliSum<Scalar>& h, Scalar zeta) {
  if (!h.is_hermitian())
    throw std::invalid_argument("fold: Hermitian input required");
  PauliSum<Scalar> shifted = h;
  shifted.add_term(PauliString(h.n_qubits()), std::complex<Scalar>(-zeta));
  shifted.simplify();
  return shifted * shifted;
}

// Pessimistic resource model: omegas evenly spaced on [1000, 4000] cm^-1
// (inclusive endpoints), every allowed cubic multiset at 400 cm^-1 and every
// allowed quartic multiset at 40 cm^-1; all-distinct index multisets are
// forbidden, and with include_3body = false multisets touching >= 3 distinct
// modes are omitted.
template <typename Scalar = double>
ForceField<Scalar> pessimistic_model(int n_modes, bool include_3body) {
  if (n_modes < 1) throw std::invalid_argument("pessimistic_model: n_modes >= 1");
  ForceField<Scalar> ff;
  ff.n_modes = n_modes;
  ff.omegas.resize(static_cast<std::size_t>(n_modes));
  for (int i = 0; i < n_modes; ++i)
    ff.omegas[static_cast<std::size_t>(i)] =
        n_modes == 1
            ? Scalar(1000)
            : Scalar(1000) + Scalar(i) * Scalar(3000) / Scalar(n_modes - 1);
  const Scalar cubic_coeff(400), quartic_coeff(40);
  for (int i = 0; i < n_modes; ++i) {
    // q_i^3 and q_i^4
    {
      std::array<int, 3> k{i, i, i};
      ff.cubic[k] = cubic_coeff;
      std::array<int, 4> k4{i, i, i, i};
      ff.quartic[k4] = quartic_coeff;
    }
    for (int j = 0; j < n_modes; ++j) {
      if (j == i) continue;
      // q_i^2 q_j and q_i^3 q_j
      std::array<int, 3> k{i, i, j};
      std::sort(k.begin(), k.end());
      ff.cubic[k] = cubic_coeff;
      std::array<int, 4> k4{i, i, i, j};
      std::sort(k4.begin(), k4.end());
      ff.quartic[k4] = quartic_coeff;
      if (j > i) {
        // q_i^2 q_j^2
        std::array<int, 4> kp{i, i, j, j};
        ff.quartic[kp] = quartic_coeff;
      }
    }
    if (include_3body) {
      for (int j = 0; j < n_modes; ++j) {
        if (j == i) continue;
        for (int k = j + 1; k < n_modes; ++k) {
          if (k == i) continue;
          std::array<int, 4> key{i, i, j, k};
          std::sort(key.begin(), key.end());
          ff.quartic[key] = quartic_coeff;
        }
      }
    }
  }
  return ff;
}

// ---------------------------------------------------------------------------
// Force-field file format: sections [omegas], [cubic], [quartic],
// [dipole.x|y|z]; keys are space-separated index tuples, one entry per line;
// '#' starts a comment. In dipole sections, "const <v>" sets the constant,
// one index sets a linear coefficient, two indices a quadratic one.
// ---------------------------------------------------------------------------

template <typename Scalar = double>
struct MoleculeData {
  ForceField<Scalar> force_field;
  DipoleSurface<Scalar> dipole;
};

template <typename Scalar = double>
MoleculeData<Scalar> load_force_field(std::istream& is) {
  MoleculeData<Scalar> data;
  std::string line, section;
  int max_mode = -1;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first.front() == '[') {
      if (first.back() != ']')
        throw std::runtime_error("force field line " + std::to_string(line_no) +
                                 ": malformed section header");
      section = first.substr(1, first.size() - 2);
      continue;
    }
    const auto bad = [&](const std::string& why) {
      return std::runtime_error("force field line " + std::to_string(line_no) +
                                ": " + why);
    };
    if (section == "omegas") {
      std::istringstream es(line);
      int idx;
      Scalar v;
      if (!(es >> idx >> v)) throw bad("expected '<mode> <omega>'");
      if (idx < 0) throw bad("negative mode index");
      max_mode = std::max(max_mode, idx);
      if (static_cast<int>(data.force_field.omegas.size()) <= idx)
        data.force_field.omegas.resize(static_cast<std::size_t>(idx) + 1,
                                       Scalar(0));
      data.force_field.omegas[static_cast<std::size_t>(idx)] = v;
    } else if (section == "cubic" || section == "quartic") {
      std::istringstream es(line);
      std::vector<int> idx;
      std::vector<Scalar> vals;
      Scalar v;
      int i;
      const int arity = section == "cubic" ? 3 : 4;
      for (int k = 0; k < arity; ++k) {
        if (!(es >> i)) throw bad("expected " + std::to_string(arity) + " indices");
        idx.push_back(i);
      }
      if (!(es >> v)) throw bad("expected coefficient");
      std::sort(idx.begin(), idx.end());
      if (idx.front() < 0) throw bad("negative mode index");
      max_mode = std::max(max_mode, idx.back());
      if (arity == 3)
        data.force_field.cubic[{idx[0], idx[1], idx[2]}] = v;
      else
        data.force_field.quartic[{idx[0], idx[1], idx[2], idx[3]}] = v;
    } else if (section.rfind("dipole.", 0) == 0 && section.size() == 8) {
      DipoleAxis<Scalar>& ax = data.dipole.axis(section[7]);
      if (first == "const") {
        Scalar v;
        if (!(ls >> v)) throw bad("expected 'const <value>'");
        ax.constant = v;
      } else {
        std::istringstream es(line);
        std::vector<int> idx;
        std::vector<Scalar> nums;
        Scalar tok;
        while (es >> tok) nums.push_back(tok);
        if (nums.size() == 2) {
          const int i0 = static_cast<int>(nums[0]);
          if (i0 < 0) throw bad("negative mode index");
          max_mode = std::max(max_mode, i0);
          ax.linear[i0] = nums[1];
        } else if (nums.size() == 3) {
          int i0 = static_cast<int>(nums[0]), i1 = static_cast<int>(nums[1]);
          if (i0 > i1) std::swap(i0, i1);
          if (i0 < 0) throw bad("negative mode index");
          max_mode = std::max(max_mode, i1);
          ax.quadratic[{i0, i1}] = nums[2];
        } else {
          throw bad("expected '<i> <m>' or '<i> <j> <m>'");
        }
      }
    } else {
      throw bad("entry outside a known section");
    }
  }
  data.force_field.n_modes = max_mode + 1;
  if (static_cast<int>(data.force_field.omegas.size()) <
      data.force_field.n_modes)
    data.force_field.omegas.resize(
        static_cast<std::size_t>(data.force_field.n_modes), Scalar(0));
  data.force_field.validate();
  return data;
}

template <typename Scalar = double>
MoleculeData<Scalar> load_force_field_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open force field file: " + path);
  return load_force_field<Scalar>(f);
}

template <typename Scalar = double>
void dump_force_field(const MoleculeData<Scalar>& data, std::ostream& os) {
  os.precision(17);
  os << "[omegas]\n";
  for (int i = 0; i < data.force_field.n_modes; ++i)
    os << i << " " << data.force_field.omegas[static_cast<std::size_t>(i)]
       << "\n";
  if (!data.force_field.cubic.empty()) {
    os << "[cubic]\n";
    for (const auto& [k, v] : data.force_field.cubic)
      os << k[0] << " " << k[1] << " " << k[2] << " " << v << "\n";
  }
  if (!data.force_field.quartic.empty()) {
    os << "[quartic]\n";
    for (const auto& [k, v] : data.force_field.quartic)
      os << k[0] << " " << k[1] << " " << k[2] << " " << k[3] << " " << v
         << "\n";
  }
  const char axes[3] = {'x', 'y', 'z'};
  for (const char a : axes) {
    const DipoleAxis<Scalar>& ax = data.dipole.axis(a);
    if (ax.constant == Scalar(0) && ax.linear.empty() && ax.quadratic.empty())
      continue;
    os << "[dipole." << a << "]\n";
    if (ax.constant != Scalar(0)) os << "const " << ax.constant << "\n";
    for (const auto& [i, m] : ax.linear) os << i << " " << m << "\n";
    for (const auto& [ij, m] : ax.quadratic)
      os << ij[0] << " " << ij[1] << " " << m << "\n";
  }
}

}  // namespace vibtk
