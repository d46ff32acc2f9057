#pragma once

#include "cpcav/numerics/quadrature.hpp"

namespace cpcav {

/// Cavity with k_perp- and frequency-independent reflectivity r_p = -r_s = r,
/// tuned to the nu-th resonance of a transition of wavelength lambda.
struct ConstantRCavity {
  double r;
  int nu;
  double wavelength;  // m

  void validate() const;
  double width() const { return nu * wavelength / 2.0; }
  double delta() const { return 1.0 - r; }
};

/// I(phi), phi = z/a in [0, 1/2), from the closed-form resummation of the
/// reflection series. Units m^-3.
double I_phi_series(const ConstantRCavity& cavity, double phi);

/// I(phi), phi in [0, 1/2], by direct adaptive quadrature over x = 2 beta a.
double I_phi_quadrature(const ConstantRCavity& cavity, double phi, const QuadratureSpec& spec = {});

/// I(1/2) for nu = 1: pi (r + 1/r) ln(1 - r^2) / (4 a^3).
double I_half_closed(double r, double a);

/// Leading small-delta forms of I(1/2) and I(0) for nu = 1.
double I_half_asym(double delta, double a);
double I_zero_asym(double delta, double a);

/// U_pr(0) - U_pr(a/2) at nu = 1 for coupling n(omega) d^2 (C^2 m^2), J.
double depth_nu1_asym(double coupling, double delta, double a);

/// phi(nu) as tabulated: the printed digamma / Hurwitz form plus nu/(4(nu-1)).
double phi_nu(int nu);

/// phi(nu) exactly as printed, without the nu/(4(nu-1)) term.
double phi_nu_printed(int nu);

/// Large-nu form -(5/12 - 2/(27 pi^2)) nu + ln 2 + 1/4.
double phi_asymptote(int nu);
double phi_asymptote_slope();
double phi_asymptote_intercept();

/// Well depth Delta U_nu > 0 for coupling n(omega) d^2 (C^2 m^2), J.
double depth_scaling(int nu, double delta, double wavelength, double coupling);

/// Normalized depth Delta U_nu (3 eps0 nu lambda^3)/(8 pi n d^2) = -ln delta - phi.
double normalized_depth(double depth, int nu, double wavelength, double coupling);

}  // namespace cpcav
