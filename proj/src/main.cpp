// Command-line front-end: molecule ingestion, resource censuses, spectra,
// Trotter scans, transition-protocol validation, and phase-estimation
// histograms. All outputs are deterministic CSV files plus a JSON manifest
// echoing the fully resolved configuration.

#include "vibtk/boson.hpp"
#include "vibtk/fermion.hpp"
#include "vibtk/pauli.hpp"
#include "vibtk/qsim.hpp"
#include "vibtk/spectra.hpp"
#include "vibtk/trotter.hpp"
#include "vibtk/vibham.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using vibtk::Encoding;
using vibtk::PauliSum;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitProtocol = 4;

std::string data_dir() {
  if (const char* env = std::getenv("VIBTK_DATA_DIR")) return env;
#ifdef VIBTK_DATA_DIR
  return VIBTK_DATA_DIR;
#else
  return "data";
#endif
}

struct MoleculeConfig {
  std::string molecule;  // built-in name
  std::string file;      // explicit path (overrides molecule)
  std::string encoding = "gray";
  int d = 8;

  std::string resolved_path() const {
    if (!file.empty()) return file;
    if (molecule.empty())
      throw std::invalid_argument("specify --molecule or --file");
    return data_dir() + "/" + molecule + ".ff";
  }
};

void add_molecule_options(CLI::App* cmd, MoleculeConfig& mc) {
  cmd->add_option("--molecule", mc.molecule,
                  "built-in molecule name (co, coh, fermi_resonance)");
  cmd->add_option("--file", mc.file, "force-field file path");
  cmd->add_option("--encoding", mc.encoding, "level encoding: gray|binary|unary")
      ->capture_default_str();
  cmd->add_option("--d", mc.d, "levels per mode")->capture_default_str();
}

struct LoadedSystem {
  vibtk::MoleculeData<double> data;
  Encoding enc;
  PauliSum<double> h;
  std::vector<std::uint64_t> subspace;  // empty = full space
};

LoadedSystem load_system(const MoleculeConfig& mc, bool harmonic_only) {
  LoadedSystem sys{vibtk::load_force_field_file<double>(mc.resolved_path()),
                   Encoding(vibtk::encoding_from_string(mc.encoding), mc.d),
                   {},
                   {}};
  vibtk::ForceField<double> ff = sys.data.force_field;
  if (harmonic_only) {
    ff.cubic.clear();
    ff.quartic.clear();
  }
  sys.h = vibtk::build_hamiltonian<double>(ff, mc.d, sys.enc);
  const int w = sys.enc.n_qubits_per_mode();
  if (sys.enc.kind == vibtk::EncodingKind::unary || mc.d < (1 << w))
    sys.subspace = vibtk::codeword_basis(sys.enc, ff.n_modes);
  return sys;
}

std::vector<PauliSum<double>> build_dipoles(const LoadedSystem& sys, int d,
                                            std::vector<char>* axes_out) {
  std::vector<PauliSum<double>> dipoles;
  for (const char a : {'x', 'y', 'z'}) {
    const auto& ax = sys.data.dipole.axis(a);
    if (ax.constant == 0 && ax.linear.empty() && ax.quadratic.empty())
      continue;
    dipoles.push_back(vibtk::build_dipole<double>(
        sys.data.dipole, a, sys.data.force_field.n_modes, d, sys.enc));
    if (axes_out) axes_out->push_back(a);
  }
  if (dipoles.empty())
    throw std::invalid_argument("molecule has no dipole surface");
  return dipoles;
}

std::ofstream open_output(const std::filesystem::path& dir,
                          const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  f.precision(12);
  return f;
}

void write_manifest(const std::filesystem::path& dir, const json& config) {
  auto f = open_output(dir, "manifest.json");
  f << config.dump(2) << "\n";
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

// ---------------------------------------------------------------------------
// resources
// ---------------------------------------------------------------------------

int cmd_resources(const std::string& output, const std::string& classes_csv,
                  const std::string& qubits_csv) {
  const std::vector<int> qubit_counts = parse_int_list(qubits_csv);
  std::vector<std::string> classes;
  {
    std::stringstream ss(classes_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) classes.push_back(tok);
  }
  auto csv = open_output(output, "resources.csv");
  csv << "class,n_qubits,size,n_terms,locality_histogram,max_coeff_ha,w_ha,"
         "w_over_eps_100cm,w_over_eps_10cm,w_over_eps_1cm\n";
  for (const std::string& cls : classes) {
    for (const int nq : qubit_counts) {
      if (cls == "fermionic") {
        if (nq % 2) throw std::invalid_argument("fermionic rows need even N_q");
        const int n = nq / 2;
        csv << cls << "," << nq << "," << n << ","
            << vibtk::es_pauli_count_analytic<double>(n) << ",,,,,,\n";
        continue;
      }
      int body = 0, d = 0;
      if (cls == "vib2d4") body = 2, d = 4;
      else if (cls == "vib3d4") body = 3, d = 4;
      else if (cls == "vib2d8") body = 2, d = 8;
      else if (cls == "vib3d8") body = 3, d = 8;
      else throw std::invalid_argument("unknown class: " + cls);
      const int w = d == 4 ? 2 : 3;
      if (nq % w)
        throw std::invalid_argument("qubit count not divisible by mode width");
      const int m = nq / w;
      const Encoding enc(vibtk::EncodingKind::gray, d);
      const PauliSum<double> h = vibtk::build_hamiltonian<double>(
          vibtk::pessimistic_model<double>(m, body == 3), d, enc);
      const double max_ha =
          h.max_nonidentity_coefficient() / vibtk::kHartreeInCm;
      const double w_ha = h.w_magnitude() / vibtk::kHartreeInCm;
      std::string hist;
      for (const auto& [weight, count] : h.locality_histogram()) {
        if (!hist.empty()) hist += ';';
        hist += std::to_string(weight) + ":" + std::to_string(count);
      }
      csv << cls << "," << nq << "," << m << "," << h.n_terms() << "," << hist
          << "," << max_ha << "," << w_ha;
      for (const double eps_cm : {100.0, 10.0, 1.0})
        csv << "," << w_ha / (eps_cm / vibtk::kHartreeInCm);
      csv << "\n";
    }
  }
  write_manifest(output, {{"subcommand", "resources"},
                          {"classes", classes},
                          {"qubits", qubit_counts}});
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

int cmd_spectrum(const MoleculeConfig& mc, const std::string& output,
                 bool harmonic_only, double sigma, int n_transitions) {
  const LoadedSystem sys = load_system(mc, harmonic_only);
  const auto sol = vibtk::diagonalize<double>(sys.h, sys.subspace);
  std::vector<char> axes;
  const auto dipoles = build_dipoles(sys, mc.d, &axes);
  std::optional<std::size_t> count;
  if (n_transitions > 0) count = static_cast<std::size_t>(n_transitions);
  auto spec = vibtk::ir_spectrum<double>(sol, dipoles, count);
  if (n_transitions <= 0) {
    // Default window: 1.2 x (largest fundamental + largest overtone).
    const auto& om = sys.data.force_field.omegas;
    const double omax = *std::max_element(om.begin(), om.end());
    const double cutoff = 1.2 * (omax + 2 * omax);
    std::erase_if(spec.peaks,
                  [&](const auto& p) { return p.energy > cutoff; });
  }
  double strongest = 0;
  for (const auto& p : spec.peaks) strongest = std::max(strongest, p.intensity);
  if (strongest == 0) strongest = 1;
  auto peaks = open_output(output, "peaks.csv");
  peaks << "omega_cm1,intensity,axis_x,axis_y,axis_z\n";
  for (const auto& p : spec.peaks) {
    peaks << p.energy << "," << p.intensity / strongest;
    for (int a = 0; a < 3; ++a)
      peaks << "," << p.axis_contributions[static_cast<std::size_t>(a)] / strongest;
    peaks << "\n";
  }
  // Broadened curve on a 1 cm^-1 grid, normalized like the peaks.
  double grid_max = 100;
  for (const auto& p : spec.peaks)
    grid_max = std::max(grid_max, p.energy + 5 * sigma);
  std::vector<double> grid;
  for (double x = 0; x <= grid_max; x += 1.0) grid.push_back(x);
  vibtk::Spectrum<double> normalized = spec;
  for (auto& p : normalized.peaks) p.intensity /= strongest;
  const auto curve = vibtk::broaden<double>(normalized, sigma, grid);
  auto cf = open_output(output, "curve.csv");
  cf << "omega_cm1,f\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    cf << grid[i] << "," << curve[i] << "\n";
  write_manifest(output, {{"subcommand", "spectrum"},
                          {"molecule", mc.molecule},
                          {"file", mc.file},
                          {"encoding", mc.encoding},
                          {"d", mc.d},
                          {"harmonic_only", harmonic_only},
                          {"sigma", sigma},
                          {"n_transitions", n_transitions},
                          {"n_peaks", spec.peaks.size()}});
  return 0;
}

// ---------------------------------------------------------------------------
// trotter
// ---------------------------------------------------------------------------

std::vector<int> default_tracked_states(const LoadedSystem& sys,
                                        const MoleculeConfig& mc) {
  // The three most intense transitions, identified from the IR spectrum;
  // falls back to the three lowest states without a dipole surface.
  try {
    const auto sol = vibtk::diagonalize<double>(sys.h, sys.subspace);
    const auto dipoles = build_dipoles(sys, mc.d, nullptr);
    auto spec = vibtk::ir_spectrum<double>(sol, dipoles);
    std::vector<std::size_t> order(spec.peaks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return spec.peaks[a].intensity > spec.peaks[b].intensity;
    });
    std::vector<int> states;
    for (std::size_t i = 0; i < order.size() && states.size() < 3; ++i) {
      // Recover the eigenstate index of each peak by energy match.
      const double e = spec.peaks[order[i]].energy + sol.eigenvalues(0);
      for (int j = 1; j < sol.eigenvalues.size(); ++j)
        if (std::abs(sol.eigenvalues(j) - e) < 1e-6) {
          states.push_back(j);
          break;
        }
    }
    std::sort(states.begin(), states.end());
    if (!states.empty()) return states;
  } catch (const std::invalid_argument&) {
  }
  return {0, 1, 2};
}

int cmd_trotter(const MoleculeConfig& mc, const std::string& output,
                const std::string& mode, const std::string& steps_spec,
                const std::string& states_csv, const std::string& order,
                unsigned seed, double zeta, bool has_zeta) {
  const LoadedSystem sys = load_system(mc, false);
  if (!sys.subspace.empty())
    throw std::invalid_argument(
        "trotter scans need an encoding covering the full qubit space");
  const auto ordering = vibtk::ordering_from_string(order);
  const auto sol = vibtk::diagonalize<double>(sys.h);

  double lo = 0, hi = 0;
  int n_steps = 0;
  double cap = 0;
  if (mode == "real") cap = std::numbers::pi / vibtk::one_norm<double>(sys.h);
  if (!steps_spec.empty()) {
    std::stringstream ss(steps_spec);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, c, ':'))
      throw std::invalid_argument("--steps expects lo:hi:count");
    lo = std::stod(a);
    hi = std::stod(b);
    n_steps = std::stoi(c);
  } else if (mode == "real") {
    hi = 0.5 * cap;
    lo = hi * 1e-4;
    n_steps = 13;
  } else {
    // Power iteration contracts like exp(-dbeta * gap); steps much below
    // ~3e-7 cm cannot converge within the iteration cap for cm^-1 spectra.
    hi = 1e-4;
    lo = 3e-7;
    n_steps = 11;
  }
  if (mode == "real" && hi >= cap) hi = 0.99 * cap;  // aliasing cap
  const auto steps = vibtk::geometric_grid<double>(lo, hi, n_steps);

  std::vector<int> states = states_csv.empty()
                                ? default_tracked_states(sys, mc)
                                : parse_int_list(states_csv);

  vibtk::TrotterScan<double> scan;
  scan.steps = steps;
  scan.states = states;
  scan.ordering = order;
  scan.step_cap = cap;
  auto csv = open_output(output, "scan.csv");
  csv << "step,state,error_cm1\n";
  for (const double step : steps) {
    std::vector<double> errors;
    if (mode == "real") {
      errors = vibtk::propagator_eigenphase_errors<double>(sys.h, step, states,
                                                           ordering, seed);
    } else if (mode == "imag") {
      for (const int j : states) {
        vibtk::IteEnergyResult<double> r;
        if (has_zeta || j != 0) {
          // Excited state via the folded Hamiltonian; target the eigenvalue
          // nearest zeta (default: exactly the tracked state's eigenvalue).
          const double z = has_zeta ? zeta : sol.eigenvalues(j);
          int nearest = 0;
          for (int i = 0; i < sol.eigenvalues.size(); ++i)
            if (std::abs(sol.eigenvalues(i) - z) <
                std::abs(sol.eigenvalues(nearest) - z))
              nearest = i;
          r = vibtk::ite_energy_error<double>(
              sys.h, vibtk::fold<double>(sys.h, z), step,
              sol.eigenvalues(nearest), {}, ordering);
        } else {
          r = vibtk::ite_energy_error<double>(sys.h, sys.h, step,
                                              sol.eigenvalues(0), {}, ordering);
        }
        errors.push_back(r.error);
      }
    } else {
      throw std::invalid_argument("--mode must be real or imag");
    }
    scan.errors.push_back(errors);
    for (std::size_t s = 0; s < states.size(); ++s)
      csv << step << "," << states[s] << "," << errors[s] << "\n";
  }
  json manifest{{"subcommand", "trotter"}, {"molecule", mc.molecule},
                {"file", mc.file},         {"encoding", mc.encoding},
                {"d", mc.d},               {"mode", mode},
                {"order", order},          {"seed", seed},
                {"states", states},        {"steps", steps}};
  if (mode == "real") manifest["step_cap"] = cap;
  if (has_zeta) manifest["zeta"] = zeta;
  write_manifest(output, manifest);
  return 0;
}

// ---------------------------------------------------------------------------
// transition
// ---------------------------------------------------------------------------

int cmd_transition(const MoleculeConfig& mc, const std::string& output,
                   const std::string& axis, int from, const std::string& to_csv,
                   const std::string& protocol) {
  const LoadedSystem sys = load_system(mc, false);
  const auto sol = vibtk::diagonalize<double>(sys.h, sys.subspace);
  const PauliSum<double> mu = vibtk::build_dipole<double>(
      sys.data.dipole, axis.at(0), sys.data.force_field.n_modes, mc.d, sys.enc);
  const std::vector<int> targets = parse_int_list(to_csv);
  if (from < 0 || from >= sol.eigenvalues.size())
    throw std::invalid_argument("--from state index out of range");
  const vibtk::StateVector<double> psi_i = sol.eigenvectors.col(from);
  auto csv = open_output(output, "report.csv");
  csv << "axis,from,to,protocol,value,direct_value,abs_diff\n";
  for (const int to : targets) {
    if (to < 0 || to >= sol.eigenvalues.size())
      throw std::invalid_argument("--to state index out of range");
    const vibtk::StateVector<double> psi_j = sol.eigenvectors.col(to);
    const double direct =
        vibtk::direct_transition_amplitude<double>(psi_i, psi_j, mu);
    double value = direct;
    if (protocol == "ibe") {
      if (to == from)
        throw std::invalid_argument(
            "the interference protocol needs orthogonal states (--from != --to)");
      value = vibtk::ibe_transition_amplitude<double>(psi_i, psi_j, mu).value;
      if (std::abs(value - direct) > 1e-8)
        throw vibtk::ProtocolError(
            "transition protocol disagrees with the direct value for 0->" +
            std::to_string(to));
    } else if (protocol != "direct") {
      throw std::invalid_argument("--protocol must be direct or ibe");
    }
    csv << axis << "," << from << "," << to << "," << protocol << "," << value
        << "," << direct << "," << std::abs(value - direct) << "\n";
  }
  write_manifest(output, {{"subcommand", "transition"},
                          {"molecule", mc.molecule},
                          {"file", mc.file},
                          {"encoding", mc.encoding},
                          {"d", mc.d},
                          {"axis", axis},
                          {"from", from},
                          {"to", targets},
                          {"protocol", protocol}});
  return 0;
}

// ---------------------------------------------------------------------------
// qpe
// ---------------------------------------------------------------------------

int cmd_qpe(const MoleculeConfig& mc, const std::string& output, int bits,
            const std::string& kernel, const std::string& initial,
            const std::string& axis, double t) {
  const LoadedSystem sys = load_system(mc, false);
  const auto sol = vibtk::diagonalize<double>(sys.h, sys.subspace);
  vibtk::StateVector<double> eta0;
  if (initial == "ground") {
    eta0 = sol.eigenvectors.col(0);
  } else if (initial == "uniform") {
    const std::int64_t dim = std::int64_t{1} << sys.h.n_qubits();
    eta0 = vibtk::StateVector<double>::Constant(dim, 1.0);
    if (!sys.subspace.empty()) {
      eta0.setZero();
      for (const auto s : sys.subspace)
        eta0(static_cast<std::int64_t>(s)) = 1.0;
    }
    eta0.normalize();
  } else if (initial == "dipole-excited") {
    const PauliSum<double> mu =
        vibtk::build_dipole<double>(sys.data.dipole, axis.at(0),
                                    sys.data.force_field.n_modes, mc.d, sys.enc);
    eta0 = vibtk::apply<double>(mu, sol.eigenvectors.col(0));
    const double n = eta0.norm();
    if (n < 1e-14)
      throw std::domain_error("dipole-excited initial state vanishes");
    eta0 /= n;
  } else {
    throw std::invalid_argument(
        "--initial must be ground, uniform, or dipole-excited");
  }
  const auto hist = vibtk::qpe_histogram<double>(
      sys.h, eta0, bits, t, vibtk::qpe_kernel_from_string(kernel));
  auto csv = open_output(output, "histogram.csv");
  csv << "bin,phase,probability\n";
  for (std::size_t m = 0; m < hist.bins.size(); ++m)
    csv << m << "," << static_cast<double>(m) / static_cast<double>(hist.bins.size())
        << "," << hist.bins[m] << "\n";
  write_manifest(output, {{"subcommand", "qpe"},
                          {"molecule", mc.molecule},
                          {"file", mc.file},
                          {"encoding", mc.encoding},
                          {"d", mc.d},
                          {"bits", bits},
                          {"kernel", kernel},
                          {"initial", initial},
                          {"axis", axis},
                          {"t", hist.t}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("VIBTK_THREADS")) {
    try {
      Eigen::setNbThreads(std::stoi(threads));
    } catch (const std::exception&) {
    }
  }

  CLI::App app{"Vibrational-spectroscopy quantum-simulation toolkit"};
  app.require_subcommand(1);

  // resources
  auto* resources = app.add_subcommand(
      "resources", "Pauli-term census and magnitude table");
  std::string res_output = ".";
  std::string res_classes = "vib2d4,vib3d4,vib2d8,vib3d8,fermionic";
  std::string res_qubits = "24,36,48";
  resources->add_option("--output", res_output, "output directory")
      ->capture_default_str();
  resources->add_option("--classes", res_classes, "comma-separated class list")
      ->capture_default_str();
  resources->add_option("--qubits", res_qubits, "comma-separated qubit counts")
      ->capture_default_str();

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "IR spectrum of a molecule");
  MoleculeConfig spec_mc;
  add_molecule_options(spectrum, spec_mc);
  std::string spec_output = ".";
  bool harmonic_only = false;
  double sigma = 10.0;
  int n_transitions = 0;
  spectrum->add_option("--output", spec_output, "output directory")
      ->capture_default_str();
  spectrum->add_flag("--harmonic-only", harmonic_only,
                     "drop cubic/quartic terms");
  spectrum->add_option("--sigma", sigma, "Gaussian broadening width (cm^-1)")
      ->capture_default_str();
  spectrum->add_option("--n-transitions", n_transitions,
                       "number of excited states (0 = automatic window)")
      ->capture_default_str();

  // trotter
  auto* trotter = app.add_subcommand("trotter", "Trotter-error step scans");
  MoleculeConfig trot_mc;
  trot_mc.d = 4;
  add_molecule_options(trotter, trot_mc);
  std::string trot_output = ".", trot_mode = "real", trot_steps, trot_states;
  std::string trot_order = "lex";
  unsigned trot_seed = 0;
  double trot_zeta = 0;
  trotter->add_option("--output", trot_output, "output directory")
      ->capture_default_str();
  trotter->add_option("--mode", trot_mode, "real|imag")->capture_default_str();
  trotter->add_option("--steps", trot_steps, "geometric grid lo:hi:count");
  trotter->add_option("--states", trot_states,
                      "tracked eigenstate indices (default: most intense)");
  trotter->add_option("--order", trot_order,
                      "term ordering: lex|magnitude-desc|seeded-shuffle")
      ->capture_default_str();
  trotter->add_option("--seed", trot_seed, "shuffle seed")
      ->capture_default_str();
  auto* zeta_opt = trotter->add_option(
      "--zeta", trot_zeta, "folded-spectrum target energy (cm^-1, imag mode)");

  // transition
  auto* transition =
      app.add_subcommand("transition", "dipole transition amplitudes");
  MoleculeConfig trans_mc;
  trans_mc.d = 4;
  add_molecule_options(transition, trans_mc);
  std::string trans_output = ".", trans_axis = "x", trans_to = "1";
  std::string trans_protocol = "direct";
  int trans_from = 0;
  transition->add_option("--output", trans_output, "output directory")
      ->capture_default_str();
  transition->add_option("--axis", trans_axis, "dipole axis x|y|z")
      ->capture_default_str();
  transition->add_option("--from", trans_from, "initial eigenstate index")
      ->capture_default_str();
  transition->add_option("--to", trans_to, "target eigenstate indices")
      ->capture_default_str();
  transition->add_option("--protocol", trans_protocol, "direct|ibe")
      ->capture_default_str();

  // qpe
  auto* qpe = app.add_subcommand("qpe", "phase-estimation histogram");
  MoleculeConfig qpe_mc;
  add_molecule_options(qpe, qpe_mc);
  std::string qpe_output = ".", qpe_kernel = "ideal", qpe_initial = "ground";
  std::string qpe_axis = "x";
  int qpe_bits = 8;
  double qpe_t = 0;
  qpe->add_option("--output", qpe_output, "output directory")
      ->capture_default_str();
  qpe->add_option("--bits", qpe_bits, "phase-register bits")
      ->capture_default_str();
  qpe->add_option("--kernel", qpe_kernel, "ideal|exact")->capture_default_str();
  qpe->add_option("--initial", qpe_initial,
                  "ground|uniform|dipole-excited")
      ->capture_default_str();
  qpe->add_option("--axis", qpe_axis, "dipole axis for dipole-excited")
      ->capture_default_str();
  qpe->add_option("--t", qpe_t, "time scale (0 = auto)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", e.what()}, {"exit_code", kExitConfig}}.dump()
              << "\n";
    return kExitConfig;
  }

  try {
    if (resources->parsed())
      return cmd_resources(res_output, res_classes, res_qubits);
    if (spectrum->parsed())
      return cmd_spectrum(spec_mc, spec_output, harmonic_only, sigma,
                          n_transitions);
    if (trotter->parsed())
      return cmd_trotter(trot_mc, trot_output, trot_mode, trot_steps,
                         trot_states, trot_order, trot_seed, trot_zeta,
                         zeta_opt->count() > 0);
    if (transition->parsed())
      return cmd_transition(trans_mc, trans_output, trans_axis, trans_from,
                            trans_to, trans_protocol);
    if (qpe->parsed())
      return cmd_qpe(qpe_mc, qpe_output, qpe_bits, qpe_kernel, qpe_initial,
                     qpe_axis, qpe_t);
  } catch (const vibtk::ProtocolError& e) {
    std::cerr << json{{"error", e.what()}, {"exit_code", kExitProtocol}}.dump()
              << "\n";
    return kExitProtocol;
  } catch (const std::domain_error& e) {
    std::cerr << json{{"error", e.what()}, {"exit_code", kExitNumeric}}.dump()
              << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"exit_code", kExitConfig}}.dump()
              << "\n";
    return kExitConfig;
  }
  return 0;
}
