#pragma once

#include <complex>
#include <variant>

#include "cpcav/materials.hpp"
#include "cpcav/numerics/quadrature.hpp"

namespace cpcav {

/// Two identical walls at z = -width/2 and z = +width/2.
struct CavityGeometry {
  double width;  // m
  MirrorSpec mirror;
};

/// A single wall occupying z < plate_position.
struct PlateGeometry {
  double plate_position;  // m
  MirrorSpec mirror;
};

using Geometry = std::variant<CavityGeometry, PlateGeometry>;

void validate(const Geometry& geometry);

/// Distance from z to the nearest wall; throws if z lies outside the vacuum gap.
double wall_clearance(const Geometry& geometry, double z);

struct GreenTraceParts {
  cplx propagating;
  cplx evanescent;

  cplx total() const { return propagating + evanescent; }
};

/// Which terms of the scattering trace to keep at real frequency. The full
/// trace adds the z-independent double-reflection term, which keeps the
/// propagating and evanescent parts separately finite for real mirrors.
/// position_dependent is accepted for ConstantR mirrors only.
enum class TraceTerms { full, position_dependent };

/// beta = sqrt(omega^2/c^2 - k_perp^2) with Im beta >= 0.
cplx transverse_beta(cplx omega, double k_perp);

/// Tr G^(1)(z, z, i xi), xi > 0. Real.
double cavity_trace_imagfreq(double z, double xi, const CavityGeometry& cavity, const QuadratureSpec& spec = {});

/// Tr G^(1)(z, z, omega) at real omega > 0, split at k_perp = omega/c.
GreenTraceParts cavity_trace_realfreq(double z, double omega, const CavityGeometry& cavity,
                                      const QuadratureSpec& spec = {}, TraceTerms terms = TraceTerms::full);

/// Propagating part only, for callers that scan positions.
cplx cavity_trace_propagating(double z, double omega, const CavityGeometry& cavity, const QuadratureSpec& spec = {},
                              TraceTerms terms = TraceTerms::full);

/// lim_{xi -> 0} xi^2 Tr G^(1)(z, z, i xi).
double zero_frequency_trace_limit(double z, const CavityGeometry& cavity, const QuadratureSpec& spec = {});

/// Single-wall trace at the given distance from the wall, real omega > 0.
GreenTraceParts single_plate_trace_parts(double distance, double omega, const MirrorSpec& mirror,
                                         const QuadratureSpec& spec = {});

/// Single-wall trace for real omega > 0 or omega on the positive imaginary axis.
cplx single_plate_trace(double distance, cplx omega, const MirrorSpec& mirror, const QuadratureSpec& spec = {});

double single_plate_zero_frequency_limit(double distance, const MirrorSpec& mirror, const QuadratureSpec& spec = {});

// Geometry-generic forms used by the potential assembly.
double trace_imagfreq(double z, double xi, const Geometry& geometry, const QuadratureSpec& spec = {});
GreenTraceParts trace_realfreq(double z, double omega, const Geometry& geometry, const QuadratureSpec& spec = {},
                               TraceTerms terms = TraceTerms::full);
double trace_zero_frequency(double z, const Geometry& geometry, const QuadratureSpec& spec = {});

}  // namespace cpcav
