#pragma once

#include <span>
#include <vector>

#include "cpcav/greens.hpp"
#include "cpcav/molecules.hpp"
#include "cpcav/numerics/quadrature.hpp"

namespace cpcav {

struct PotentialComponents {
  double z = 0.0;        // m
  double U_nr = 0.0;     // J
  double U_pr = 0.0;     // J
  double U_ev = 0.0;     // J
  double U_total = 0.0;  // J
};

struct ResonantParts {
  double propagating;  // J
  double evanescent;   // J
};

/// Matsubara sum stops after two consecutive terms below this fraction of the
/// running sum, or at max_terms.
struct MatsubaraControl {
  double rel_cutoff = 1e-12;
  int max_terms = 100000;
};

double nonresonant_potential(double z, const Molecule& mol, const Geometry& geometry, const ThermalEnvironment& env,
                             const QuadratureSpec& spec = {}, const MatsubaraControl& control = {});

ResonantParts resonant_potential(double z, const Molecule& mol, const Geometry& geometry,
                                 const ThermalEnvironment& env, const QuadratureSpec& spec = {},
                                 TraceTerms terms = TraceTerms::full);

/// All three components at one position, unshifted.
PotentialComponents potential_components(double z, const Molecule& mol, const Geometry& geometry,
                                         const ThermalEnvironment& env, const QuadratureSpec& spec = {});

/// Propagating part of the resonant potential only.
double propagating_potential(double z, const Molecule& mol, const CavityGeometry& cavity,
                             const ThermalEnvironment& env, const QuadratureSpec& spec = {},
                             TraceTerms terms = TraceTerms::full);

/// Potential of an incoherent mixture of levels with populations p_n.
double general_state_potential(double z, const MultiLevelMolecule& mol, std::span<const double> populations,
                               const Geometry& geometry, const ThermalEnvironment& env, const QuadratureSpec& spec = {},
                               const MatsubaraControl& control = {});

/// Resonant part only of general_state_potential.
double general_state_resonant_potential(double z, const MultiLevelMolecule& mol, std::span<const double> populations,
                                        const Geometry& geometry, const ThermalEnvironment& env,
                                        const QuadratureSpec& spec = {});

/// Cavity width a = nu pi c / omega at which the transition meets the nu-th resonance.
double resonance_width(const Transition& transition, int nu);

struct Extremum {
  double z;      // m
  double value;  // J
};

struct ExtremumReport {
  int nu = 0;
  double width = 0.0;       // m
  double wavelength = 0.0;  // m
  std::vector<Extremum> maxima;
  std::vector<Extremum> minima;
  /// Well depth (nu >= 2) or peak height (nu = 1), J. Positive for a well.
  double depth = 0.0;
  /// Same quantity evaluated at the unrefined grid positions.
  double grid_depth = 0.0;
  bool is_peak_height = false;
  Extremum deepest_minimum{};
  Extremum adjacent_maximum{};
};

struct DepthOptions {
  std::size_t transition = 0;  // index of the transition tuned to resonance
  bool locate_all = false;     // refine every extremum, not only the pair defining the depth
  double position_tol = 1e-6;  // relative to the cavity width
  TraceTerms terms = TraceTerms::full;
};

/// Locates the extrema of the propagating potential for a cavity tuned to the
/// nu-th resonance and reports the depth of the deepest well.
ExtremumReport potential_depth(const Molecule& mol, const MirrorSpec& mirror, int nu, const ThermalEnvironment& env,
                               const QuadratureSpec& spec = {}, const DepthOptions& options = {});

/// Free-space heating rate out of the ground state, 1/s.
double heating_rate_free(const Molecule& mol, const ThermalEnvironment& env);

/// Total heating rate Gamma_0 + Gamma_cav at z, 1/s.
double heating_rate_profile(double z, const Molecule& mol, const Geometry& geometry, const ThermalEnvironment& env,
                            const QuadratureSpec& spec = {});

}  // namespace cpcav
