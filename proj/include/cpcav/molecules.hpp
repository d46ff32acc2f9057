#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cpcav {

/// Ground-state transition: angular frequency and summed squared dipole moment.
struct Transition {
  double omega;      // rad/s
  double d_squared;  // C^2 m^2

  bool operator==(const Transition&) const = default;
};

struct Molecule {
  std::string name;
  std::vector<Transition> transitions;  // ascending in omega

  void validate() const;
  bool operator==(const Molecule&) const = default;
};

struct ThermalEnvironment {
  double temperature;  // K

  void validate() const;
};

/// Ground-state polarizability on the imaginary axis, xi >= 0.
double polarizability_imag(const Molecule& mol, double xi);

/// Bose-Einstein occupation at angular frequency omega > 0.
double photon_number(double omega, const ThermalEnvironment& env);

/// xi_j = 2 pi j k_B T / hbar.
double matsubara_frequency(int j, const ThermalEnvironment& env);

/// Location of the maximum of omega^3 n(omega).
double omega3n_peak(const ThermalEnvironment& env);

/// Name-keyed set of molecules. Always contains the built-in LiH entry unless
/// it was explicitly overridden.
class MoleculeRegistry {
 public:
  MoleculeRegistry();

  /// Inserts or replaces; returns true when an existing entry was replaced.
  bool add(Molecule mol);
  const Molecule& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;
  const std::map<std::string, Molecule>& entries() const { return entries_; }

 private:
  std::map<std::string, Molecule> entries_;
};

Molecule builtin_lih();

/// Reads the molecule sections of a configuration source. Warnings about
/// overridden built-ins are appended to `warnings` when given.
MoleculeRegistry load_molecules(std::istream& in, std::vector<std::string>* warnings = nullptr);

/// Writes molecule sections that load_molecules reads back unchanged.
void write_molecules(std::ostream& out, const MoleculeRegistry& registry);

/// Multi-level molecule for the general-state potential. Levels are labelled by
/// index; couplings are symmetric.
struct LevelCoupling {
  int n;
  int k;
  double d_squared;  // |d_nk|^2, C^2 m^2
};

struct MultiLevelMolecule {
  std::vector<double> level_omegas;  // rad/s (energy / hbar)
  std::vector<LevelCoupling> couplings;

  void validate() const;
  /// Polarizability of level n on the imaginary axis.
  double polarizability_imag(int n, double xi) const;
  /// Ground-state view: transitions out of level 0.
  Molecule ground_state_view(const std::string& name = "multilevel") const;
};

}  // namespace cpcav
