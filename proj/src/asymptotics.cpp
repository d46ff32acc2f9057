#include "cpcav/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"
#include "cpcav/numerics/special_functions.hpp"

namespace cpcav {

using constants::epsilon0;
using constants::euler_gamma;
using constants::pi;
using constants::zeta3;

void ConstantRCavity::validate() const {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("ConstantRCavity: r must lie in (0, 1)");
  if (nu < 1) throw DomainError("ConstantRCavity: nu must be >= 1");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw DomainError("ConstantRCavity: wavelength must be positive");
}

namespace {

void check_phi(double phi) {
  if (!(phi >= 0.0 && phi < 0.5)) throw DomainError("phi must lie in [0, 1/2)");
}

// sum_j r^{2j} y(j + b), using that cos and sin of 2 pi nu (j + b) do not depend on j.
double y_sum(double r2, int nu, double b) {
  const double arg = 2.0 * pi * nu * b;
  const double cb = std::cos(arg);
  const double sb = std::sin(arg);
  const double s1 = lerch_phi(r2, 1, b);
  const double s2 = lerch_phi(r2, 2, b);
  const double s3 = lerch_phi(r2, 3, b);
  return -2.0 * s3 + cb * (2.0 * s3 - 4.0 * nu * nu * pi * pi * s1) + sb * 4.0 * nu * pi * s2;
}

void check_nu(int nu) {
  if (nu < 2) throw DomainError("phi(nu) requires nu >= 2");
}

}  // namespace

double I_phi_series(const ConstantRCavity& cavity, double phi) {
  cavity.validate();
  check_phi(phi);
  const double r = cavity.r;
  const double l3 = cavity.wavelength * cavity.wavelength * cavity.wavelength;
  const double nu3 = static_cast<double>(cavity.nu) * cavity.nu * cavity.nu;
  const double sum = y_sum(r * r, cavity.nu, 0.5 + phi) + y_sum(r * r, cavity.nu, 0.5 - phi);
  return r / (2.0 * pi * nu3 * l3) * sum;
}

double I_phi_quadrature(const ConstantRCavity& cavity, double phi, const QuadratureSpec& spec) {
  cavity.validate();
  if (!(phi >= 0.0 && phi <= 0.5)) throw DomainError("phi must lie in [0, 1/2]");
  const double r = cavity.r;
  const double a = cavity.width();
  const double x0 = 2.0 * pi * cavity.nu;
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  auto f = [&](double x) -> std::complex<double> {
    const double m = std::round(x / (2.0 * pi));
    const double u = x - 2.0 * pi * m;
    const double s = std::sin(0.5 * u);
    const std::complex<double> em1{-2.0 * s * s, std::sin(u)};
    const std::complex<double> d = one_minus_r2 - r * r * em1;
    const std::complex<double> half{std::cos(0.5 * x), std::sin(0.5 * x)};
    return x * x * half * std::cos(phi * x) / d;
  };
  std::vector<double> pts;
  for (int m = 1; m <= cavity.nu; ++m) {
    const double xm = 2.0 * pi * m;
    pts.push_back(xm);
    for (double w = one_minus_r2; w < pi; w *= 4.0) {
      pts.push_back(xm - w);
      pts.push_back(xm + w);
    }
  }
  const auto edges = make_breakpoints(0.0, x0, std::move(pts));
  const auto result = integrate(f, std::span<const double>(edges), spec);
  return r / (8.0 * pi * a * a * a) * result.value.imag();
}

double I_half_closed(double r, double a) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("I_half_closed: r must lie in (0, 1)");
  if (!(a > 0.0)) throw DomainError("I_half_closed: a must be positive");
  return pi * (r + 1.0 / r) * std::log1p(-r * r) / (4.0 * a * a * a);
}

double I_half_asym(double delta, double a) { return pi / (2.0 * a * a * a) * (std::log(delta) + std::log(2.0)); }

double I_zero_asym(double delta, double a) {
  return -pi / (2.0 * a * a * a) * (std::log(delta) - std::log(2.0) + 7.0 * zeta3 / (pi * pi));
}

double depth_nu1_asym(double coupling, double delta, double a) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("depth_nu1_asym: delta must lie in (0, 1)");
  if (!(a > 0.0)) throw DomainError("depth_nu1_asym: a must be positive");
  return -(pi * coupling / (3.0 * epsilon0 * a * a * a)) * (std::log(delta) + 7.0 * zeta3 / (2.0 * pi * pi));
}

double phi_nu_printed(int nu) {
  check_nu(nu);
  const double b3 = 3.0 / (2.0 * nu);
  const double b1 = 1.0 / nu;
  const double psi = digamma(1.0 - b3) + digamma(b3) + digamma(1.0 - b1) + digamma(b1);
  const double zeta = hurwitz_zeta3(1.0 - b3) + hurwitz_zeta3(b3);
  return std::log(2.0) + euler_gamma + 0.25 * psi + zeta / (4.0 * pi * pi * nu * nu);
}

double phi_nu(int nu) { return phi_nu_printed(nu) + nu / (4.0 * (nu - 1.0)); }

double phi_asymptote_slope() { return 5.0 / 12.0 - 2.0 / (27.0 * pi * pi); }

double phi_asymptote_intercept() { return std::log(2.0) + 0.25; }

double phi_asymptote(int nu) {
  check_nu(nu);
  return -phi_asymptote_slope() * nu + phi_asymptote_intercept();
}

double depth_scaling(int nu, double delta, double wavelength, double coupling) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("depth_scaling: delta must lie in (0, 1)");
  if (!(wavelength > 0.0)) throw DomainError("depth_scaling: wavelength must be positive");
  const double l3 = wavelength * wavelength * wavelength;
  return coupling / (3.0 * epsilon0) * 8.0 * pi / (nu * l3) * std::abs(std::log(delta) + phi_nu(nu));
}

double normalized_depth(double depth, int nu, double wavelength, double coupling) {
  const double l3 = wavelength * wavelength * wavelength;
  return depth * 3.0 * epsilon0 * nu * l3 / (8.0 * pi * coupling);
}

}  // namespace cpcav
