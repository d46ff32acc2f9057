#pragma once

#include <vector>

#include "cpcav/potential.hpp"

namespace cpcav {

struct HeatingPoint {
  double z;           // m
  double gamma;       // 1/s
  double gamma_free;  // 1/s
};

/// n evenly spaced points from lo to hi inclusive, n >= 2.
std::vector<double> linear_grid(double lo, double hi, int n);

/// Reference kernels, one position after another.
std::vector<PotentialComponents> potential_profile_serial(const std::vector<double>& z, const Molecule& mol,
                                                          const Geometry& geometry, const ThermalEnvironment& env,
                                                          const QuadratureSpec& spec = {});
std::vector<HeatingPoint> heating_profile_serial(const std::vector<double>& z, const Molecule& mol,
                                                 const Geometry& geometry, const ThermalEnvironment& env,
                                                 const QuadratureSpec& spec = {});

/// OpenMP kernels. threads <= 0 uses the runtime default. Results are
/// identical to the serial kernels; the first exception raised by any
/// position is rethrown.
std::vector<PotentialComponents> potential_profile(const std::vector<double>& z, const Molecule& mol,
                                                   const Geometry& geometry, const ThermalEnvironment& env,
                                                   const QuadratureSpec& spec = {}, int threads = 0);
std::vector<HeatingPoint> heating_profile(const std::vector<double>& z, const Molecule& mol, const Geometry& geometry,
                                          const ThermalEnvironment& env, const QuadratureSpec& spec = {},
                                          int threads = 0);

/// Subtracts each component's value at the reference so that all of them
/// vanish there.
void shift_profile(std::vector<PotentialComponents>& profile, const PotentialComponents& reference);

}  // namespace cpcav
