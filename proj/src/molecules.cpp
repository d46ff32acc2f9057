#include "cpcav/molecules.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cpcav/config.hpp"
#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"

namespace cpcav {

using constants::hbar;
using constants::k_B;

void Molecule::validate() const {
  if (name.empty()) throw DomainError("molecule: empty name");
  if (transitions.empty()) throw DomainError("molecule '" + name + "': no transitions");
  for (const Transition& t : transitions) {
    if (!(t.omega > 0.0)) throw DomainError("molecule '" + name + "': transition omega must be positive");
    if (!(t.d_squared > 0.0)) throw DomainError("molecule '" + name + "': d_squared must be positive");
  }
  if (!std::is_sorted(transitions.begin(), transitions.end(),
                      [](const Transition& a, const Transition& b) { return a.omega < b.omega; })) {
    throw DomainError("molecule '" + name + "': transitions must ascend in omega");
  }
}

void ThermalEnvironment::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw DomainError("temperature must be positive");
}

double polarizability_imag(const Molecule& mol, double xi) {
  if (!(xi >= 0.0)) throw DomainError("polarizability_imag: xi must be >= 0");
  double sum = 0.0;
  for (const Transition& t : mol.transitions) sum += t.d_squared * t.omega / (t.omega * t.omega + xi * xi);
  return 2.0 * sum / (3.0 * hbar);
}

double photon_number(double omega, const ThermalEnvironment& env) {
  if (!(omega > 0.0)) throw DomainError("photon_number: omega must be positive");
  env.validate();
  return 1.0 / std::expm1(hbar * omega / (k_B * env.temperature));
}

double matsubara_frequency(int j, const ThermalEnvironment& env) {
  if (j < 0) throw DomainError("matsubara_frequency: j must be >= 0");
  env.validate();
  return 2.0 * constants::pi * j * k_B * env.temperature / hbar;
}

double omega3n_peak(const ThermalEnvironment& env) {
  env.validate();
  // d/dx [x^3 / (e^x - 1)] = 0  <=>  x = 3 (1 - e^-x)
  double x = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double g = x - 3.0 * -std::expm1(-x);
    const double dg = 1.0 - 3.0 * std::exp(-x);
    const double step = g / dg;
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x * k_B * env.temperature / hbar;
}

Molecule builtin_lih() { return Molecule{"LiH", {{2.78973e12, 3.847e-58}}}; }

MoleculeRegistry::MoleculeRegistry() { entries_.emplace("LiH", builtin_lih()); }

bool MoleculeRegistry::add(Molecule mol) {
  mol.validate();
  const bool replaced = entries_.contains(mol.name);
  const std::string key = mol.name;
  entries_.insert_or_assign(key, std::move(mol));
  return replaced;
}

const Molecule& MoleculeRegistry::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw ConfigError("unknown molecule '" + name + "'", 0, "molecule");
  return it->second;
}

bool MoleculeRegistry::contains(const std::string& name) const { return entries_.contains(name); }

std::vector<std::string> MoleculeRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

MoleculeRegistry load_molecules(std::istream& in, std::vector<std::string>* warnings) {
  Config cfg = load_config(in);
  if (warnings) warnings->insert(warnings->end(), cfg.warnings.begin(), cfg.warnings.end());
  return std::move(cfg.molecules);
}

void write_molecules(std::ostream& out, const MoleculeRegistry& registry) {
  const auto old_precision = out.precision(17);
  for (const auto& [name, mol] : registry.entries()) {
    out << "[molecule:" << name << "]\n";
    for (const Transition& t : mol.transitions) out << "transition = " << t.omega << ", " << t.d_squared << "\n";
    out << "\n";
  }
  out.precision(old_precision);
}

void MultiLevelMolecule::validate() const {
  if (level_omegas.empty()) throw DomainError("multilevel molecule: no levels");
  const int n_levels = static_cast<int>(level_omegas.size());
  for (const LevelCoupling& c : couplings) {
    if (c.n < 0 || c.k < 0 || c.n >= n_levels || c.k >= n_levels || c.n == c.k) {
      throw DomainError("multilevel molecule: coupling indices out of range");
    }
    if (!(c.d_squared > 0.0)) throw DomainError("multilevel molecule: d_squared must be positive");
    if (level_omegas[c.n] == level_omegas[c.k]) throw DomainError("multilevel molecule: degenerate coupled levels");
  }
}

double MultiLevelMolecule::polarizability_imag(int n, double xi) const {
  double sum = 0.0;
  for (const LevelCoupling& c : couplings) {
    if (c.n != n && c.k != n) continue;
    const int k = c.n == n ? c.k : c.n;
    const double w = level_omegas[k] - level_omegas[n];
    sum += c.d_squared * w / (w * w + xi * xi);
  }
  return 2.0 * sum / (3.0 * hbar);
}

Molecule MultiLevelMolecule::ground_state_view(const std::string& name) const {
  Molecule mol{name, {}};
  for (const LevelCoupling& c : couplings) {
    if (c.n != 0 && c.k != 0) continue;
    const int k = c.n == 0 ? c.k : c.n;
    mol.transitions.push_back({level_omegas[k] - level_omegas[0], c.d_squared});
  }
  std::sort(mol.transitions.begin(), mol.transitions.end(),
            [](const Transition& a, const Transition& b) { return a.omega < b.omega; });
  return mol;
}

}  // namespace cpcav
