#include "cpcav/potential.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"

namespace cpcav {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::mu0;
using constants::pi;

namespace {

template <class Alpha>
double matsubara_sum(double z, Alpha&& alpha, const Geometry& geometry, const ThermalEnvironment& env,
                     const QuadratureSpec& spec, const MatsubaraControl& control) {
  env.validate();
  double sum = 0.5 * alpha(0.0) * trace_zero_frequency(z, geometry, spec);
  int small_in_a_row = 0;
  for (int j = 1; j <= control.max_terms; ++j) {
    const double xi = matsubara_frequency(j, env);
    const double term = xi * xi * alpha(xi) * trace_imagfreq(z, xi, geometry, spec);
    sum += term;
    small_in_a_row = std::abs(term) <= control.rel_cutoff * std::abs(sum) ? small_in_a_row + 1 : 0;
    if (small_in_a_row == 2) return mu0 * k_B * env.temperature * sum;
  }
  throw ConvergenceError("Matsubara sum did not converge within " + std::to_string(control.max_terms) + " terms",
                         mu0 * k_B * env.temperature * sum, std::abs(sum));
}

void check_populations(const MultiLevelMolecule& mol, std::span<const double> populations) {
  mol.validate();
  if (populations.size() != mol.level_omegas.size()) {
    throw DomainError("general_state_potential: one population per level required");
  }
  double total = 0.0;
  for (double p : populations) {
    if (!(p >= 0.0)) throw DomainError("general_state_potential: populations must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("general_state_potential: populations must sum to 1");
}

// Signed resonant weight of the k <-> n coupling seen from level n, with the
// transition frequency it multiplies.
struct ResonantTerm {
  double omega;
  double weight;
};

ResonantTerm resonant_term(double omega_kn, const ThermalEnvironment& env) {
  if (omega_kn > 0.0) return {omega_kn, photon_number(omega_kn, env)};
  return {-omega_kn, -(photon_number(-omega_kn, env) + 1.0)};
}

}  // namespace

double nonresonant_potential(double z, const Molecule& mol, const Geometry& geometry, const ThermalEnvironment& env,
                             const QuadratureSpec& spec, const MatsubaraControl& control) {
  mol.validate();
  return matsubara_sum(
      z, [&](double xi) { return polarizability_imag(mol, xi); }, geometry, env, spec, control);
}

ResonantParts resonant_potential(double z, const Molecule& mol, const Geometry& geometry,
                                 const ThermalEnvironment& env, const QuadratureSpec& spec, TraceTerms terms) {
  mol.validate();
  env.validate();
  ResonantParts out{0.0, 0.0};
  for (const Transition& t : mol.transitions) {
    const double n = photon_number(t.omega, env);
    if (n == 0.0) continue;
    const GreenTraceParts g = trace_realfreq(z, t.omega, geometry, spec, terms);
    const double coupling = mu0 / 3.0 * t.omega * t.omega * n * t.d_squared;
    out.propagating += coupling * g.propagating.real();
    out.evanescent += coupling * g.evanescent.real();
  }
  return out;
}

PotentialComponents potential_components(double z, const Molecule& mol, const Geometry& geometry,
                                         const ThermalEnvironment& env, const QuadratureSpec& spec) {
  PotentialComponents out;
  out.z = z;
  out.U_nr = nonresonant_potential(z, mol, geometry, env, spec);
  const ResonantParts r = resonant_potential(z, mol, geometry, env, spec);
  out.U_pr = r.propagating;
  out.U_ev = r.evanescent;
  out.U_total = out.U_nr + out.U_pr + out.U_ev;
  return out;
}

double propagating_potential(double z, const Molecule& mol, const CavityGeometry& cavity,
                             const ThermalEnvironment& env, const QuadratureSpec& spec, TraceTerms terms) {
  mol.validate();
  env.validate();
  double sum = 0.0;
  for (const Transition& t : mol.transitions) {
    const double n = photon_number(t.omega, env);
    if (n == 0.0) continue;
    sum += mu0 / 3.0 * t.omega * t.omega * n * t.d_squared *
           cavity_trace_propagating(z, t.omega, cavity, spec, terms).real();
  }
  return sum;
}

double general_state_resonant_potential(double z, const MultiLevelMolecule& mol, std::span<const double> populations,
                                        const Geometry& geometry, const ThermalEnvironment& env,
                                        const QuadratureSpec& spec) {
  check_populations(mol, populations);
  env.validate();
  double sum = 0.0;
  for (std::size_t n = 0; n < populations.size(); ++n) {
    if (populations[n] == 0.0) continue;
    for (const LevelCoupling& cpl : mol.couplings) {
      if (cpl.n != static_cast<int>(n) && cpl.k != static_cast<int>(n)) continue;
      const int k = cpl.n == static_cast<int>(n) ? cpl.k : cpl.n;
      const ResonantTerm term = resonant_term(mol.level_omegas[k] - mol.level_omegas[n], env);
      if (term.weight == 0.0) continue;
      const double re_trace = trace_realfreq(z, term.omega, geometry, spec).total().real();
      sum += populations[n] * mu0 / 3.0 * term.omega * term.omega * term.weight * cpl.d_squared * re_trace;
    }
  }
  return sum;
}

double general_state_potential(double z, const MultiLevelMolecule& mol, std::span<const double> populations,
                               const Geometry& geometry, const ThermalEnvironment& env, const QuadratureSpec& spec,
                               const MatsubaraControl& control) {
  check_populations(mol, populations);
  double nonresonant = 0.0;
  for (std::size_t n = 0; n < populations.size(); ++n) {
    if (populations[n] == 0.0) continue;
    const int level = static_cast<int>(n);
    nonresonant += populations[n] * matsubara_sum(
                                        z, [&](double xi) { return mol.polarizability_imag(level, xi); }, geometry,
                                        env, spec, control);
  }
  return nonresonant + general_state_resonant_potential(z, mol, populations, geometry, env, spec);
}

double resonance_width(const Transition& transition, int nu) {
  if (nu < 1) throw DomainError("resonance_width: nu must be >= 1");
  if (!(transition.omega > 0.0)) throw DomainError("resonance_width: omega must be positive");
  return nu * pi * c / transition.omega;
}

namespace {

enum class Kind { maximum, minimum };

Extremum refine(auto&& f, double seed, double half_width, double tol, Kind kind) {
  const double sign = kind == Kind::maximum ? 1.0 : -1.0;
  auto g = [&](double z) { return sign * f(z); };

  double lo = seed - half_width;
  double hi = seed + half_width;
  const double g_seed = g(seed);
  if (!(g_seed >= g(lo) && g_seed >= g(hi))) {
    throw ExtremumNotFound(std::string(kind == Kind::maximum ? "maximum" : "minimum") + " not bracketed near z = " +
                           std::to_string(seed));
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  while (hi - lo > tol) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + inv_phi * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - inv_phi * (hi - lo);
      g1 = g(x1);
    }
  }
  const double z = 0.5 * (lo + hi);
  if (std::abs(z - seed) > half_width - 2.0 * tol) {
    throw ExtremumNotFound("extremum drifted to the edge of its bracket near z = " + std::to_string(seed));
  }
  return {z, f(z)};
}

}  // namespace

ExtremumReport potential_depth(const Molecule& mol, const MirrorSpec& mirror, int nu, const ThermalEnvironment& env,
                               const QuadratureSpec& spec, const DepthOptions& options) {
  mol.validate();
  env.validate();
  if (options.transition >= mol.transitions.size()) throw DomainError("potential_depth: transition index out of range");
  const Transition& t = mol.transitions[options.transition];

  ExtremumReport report;
  report.nu = nu;
  report.width = resonance_width(t, nu);
  report.wavelength = 2.0 * pi * c / t.omega;
  const double a = report.width;
  const double lambda = report.wavelength;
  const double tol = options.position_tol * a;
  const CavityGeometry cavity{a, mirror};
  auto U = [&](double z) { return propagating_potential(z, mol, cavity, env, spec, options.terms); };

  if (nu == 1) {
    const Extremum peak{0.0, U(0.0)};
    const double edge = U(0.5 * a - a / 1000.0);
    report.maxima.push_back(peak);
    report.is_peak_height = true;
    report.adjacent_maximum = peak;
    report.depth = report.grid_depth = peak.value - edge;
    return report;
  }

  const double left = -nu * lambda / 4.0;
  const double max_seed = (nu - 3) * lambda / 4.0;
  const double min_seed = (nu - 2) * lambda / 4.0;
  const double grid_max = U(max_seed);
  const double grid_min = U(min_seed);
  report.grid_depth = grid_max - grid_min;

  report.adjacent_maximum = refine(U, max_seed, lambda / 8.0, tol, Kind::maximum);
  report.deepest_minimum = refine(U, min_seed, lambda / 8.0, tol, Kind::minimum);
  report.depth = report.adjacent_maximum.value - report.deepest_minimum.value;

  if (options.locate_all) {
    for (int mu = 1; mu <= nu; ++mu) {
      report.maxima.push_back(refine(U, left + (mu - 0.5) * lambda / 2.0, lambda / 8.0, tol, Kind::maximum));
    }
    for (int mu = 1; mu < nu; ++mu) {
      report.minima.push_back(refine(U, left + mu * lambda / 2.0, lambda / 8.0, tol, Kind::minimum));
    }
  } else {
    report.maxima.push_back(report.adjacent_maximum);
    report.minima.push_back(report.deepest_minimum);
  }
  return report;
}

double heating_rate_free(const Molecule& mol, const ThermalEnvironment& env) {
  mol.validate();
  env.validate();
  double sum = 0.0;
  for (const Transition& t : mol.transitions) {
    sum += t.d_squared * t.omega * t.omega * t.omega * photon_number(t.omega, env);
  }
  return sum / (3.0 * pi * hbar * c * c * c * constants::epsilon0);
}

double heating_rate_profile(double z, const Molecule& mol, const Geometry& geometry, const ThermalEnvironment& env,
                            const QuadratureSpec& spec) {
  double cavity_part = 0.0;
  for (const Transition& t : mol.transitions) {
    const double n = photon_number(t.omega, env);
    if (n == 0.0) continue;
    cavity_part += t.d_squared * t.omega * t.omega * n * trace_realfreq(z, t.omega, geometry, spec).total().imag();
  }
  return heating_rate_free(mol, env) + 2.0 * mu0 / (3.0 * hbar) * cavity_part;
}

}  // namespace cpcav
