#include "cpcav/greens.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <vector>

#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"

namespace cpcav {

namespace {

constexpr double c0 = constants::c;
constexpr double pi = constants::pi;
constexpr cplx I{0.0, 1.0};

// Evanescent integrands decay as exp(-kappa * L); cut where the exponent reaches this.
constexpr double kDecayCut = 40.0;

// e^{-kappa a} cosh(2 kappa z) without overflow.
double decay_cosh(double kappa, double a, double z) {
  return 0.5 * (std::exp(-kappa * (a - 2.0 * z)) + std::exp(-kappa * (a + 2.0 * z)));
}

void check_inside(double z, double a) {
  if (!(std::abs(z) < 0.5 * a)) throw DomainError("position must satisfy |z| < a/2");
}

std::vector<double> near_zero_breaks(double scale) {
  std::vector<double> out;
  for (int k = 1; k <= 8; ++k) out.push_back(scale * std::pow(10.0, -k));
  return out;
}

struct PropagatingPanels {
  std::vector<double> edges;
  // Smallest 1 - |r| over the resonances found.
  double min_loss = 1.0;
};

// Panel edges that grade geometrically into each cavity resonance, where r^2 exp(2 i beta a) = 1.
PropagatingPanels propagating_breaks(double omega, double a, const MirrorSpec& mirror) {
  double min_loss = 1.0;
  const double top = omega / c0;
  std::vector<double> pts = near_zero_breaks(top);
  const int samples = std::max(64, static_cast<int>(std::ceil(64.0 * top * a / pi)));
  auto round_trip = [&](double b) {
    const Reflection r = reflection_beta(mirror, omega, b);
    const cplx phase = std::exp(2.0 * I * b * a);
    return std::array<cplx, 2>{r.s * r.s * phase, r.p * r.p * phase};
  };
  // Reflection at exactly grazing incidence may be singular.
  double prev_b = 1e-9 * top;
  std::array<cplx, 2> prev_val = round_trip(prev_b);
  std::array<double, 2> prev_phase{std::arg(prev_val[0]), std::arg(prev_val[1])};
  for (int i = 1; i <= samples; ++i) {
    const double b = top * i / samples;
    const std::array<cplx, 2> val = round_trip(b);
    for (int pol = 0; pol < 2; ++pol) {
      const double phase = prev_phase[pol] + std::remainder(std::arg(val[pol]) - std::arg(prev_val[pol]), 2.0 * pi);
      const double target = 2.0 * pi * std::floor(phase / (2.0 * pi));
      if (target > prev_phase[pol] && std::abs(val[pol]) > 0.5) {
        auto unwrapped = [&](double x) {
          return prev_phase[pol] + std::remainder(std::arg(round_trip(x)[pol]) - std::arg(prev_val[pol]), 2.0 * pi);
        };
        double lo = prev_b;
        double hi = b;
        for (int it = 0; it < 60 && hi - lo > 1e-15 * top; ++it) {
          const double mid = 0.5 * (lo + hi);
          (unwrapped(mid) < target ? lo : hi) = mid;
        }
        const double root = 0.5 * (lo + hi);
        const double slope = (phase - prev_phase[pol]) / (b - prev_b);
        const double loss = 1.0 - std::sqrt(std::abs(round_trip(root)[pol]));
        min_loss = std::min(min_loss, loss);
        const double width = std::max(2.0 * loss / std::abs(slope), 1e-13 * top);
        pts.push_back(root);
        for (double w = width; w < 0.5 * pi / a; w *= 4.0) {
          pts.push_back(root - w);
          pts.push_back(root + w);
        }
      }
      prev_phase[pol] = phase;
    }
    prev_val = val;
    prev_b = b;
  }
  return {make_breakpoints(0.0, top, std::move(pts)), min_loss};
}

double integrate_real(const std::vector<double>& edges, auto&& f, const QuadratureSpec& spec) {
  return integrate(f, std::span<const double>(edges), spec).value.real();
}

cplx integrate_complex(const std::vector<double>& edges, auto&& f, const QuadratureSpec& spec) {
  return integrate(f, std::span<const double>(edges), spec).value;
}

}  // namespace

void validate(const Geometry& geometry) {
  std::visit(
      [](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, CavityGeometry>) {
          if (!(g.width > 0.0) || !std::isfinite(g.width)) throw DomainError("cavity width must be positive");
        } else {
          if (!std::isfinite(g.plate_position)) throw DomainError("plate position must be finite");
        }
        validate(g.mirror);
      },
      geometry);
}

double wall_clearance(const Geometry& geometry, double z) {
  return std::visit(
      [z](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        double d;
        if constexpr (std::is_same_v<T, CavityGeometry>) {
          d = 0.5 * g.width - std::abs(z);
        } else {
          d = z - g.plate_position;
        }
        if (!(d > 0.0)) throw DomainError("position lies outside the vacuum region");
        return d;
      },
      geometry);
}

cplx transverse_beta(cplx omega, double k_perp) {
  if (k_perp < 0.0) throw DomainError("transverse_beta: k_perp must be >= 0");
  const cplx k0 = omega / c0;
  const cplx beta = sqrt_upper(k0 * k0 - k_perp * k_perp);
  assert(beta.imag() >= 0.0);
  return beta;
}

double cavity_trace_imagfreq(double z, double xi, const CavityGeometry& cavity, const QuadratureSpec& spec) {
  if (!(xi > 0.0)) throw DomainError("cavity_trace_imagfreq: xi must be positive; use zero_frequency_trace_limit");
  const double a = cavity.width;
  check_inside(z, a);
  const double gap = a - 2.0 * std::abs(z);
  const double lo = xi / c0;
  const double hi = std::max((kDecayCut + 2.0 * xi * a / c0) / gap, lo + kDecayCut / gap);
  const cplx omega{0.0, xi};
  auto f = [&](double kappa) -> cplx {
    const Reflection r = reflection_beta(cavity.mirror, omega, cplx{0.0, kappa});
    const double rs = r.s.real();
    const double rp = r.p.real();
    const double e2 = std::exp(-2.0 * kappa * a);
    const double ds = 1.0 - rs * rs * e2;
    const double dp = 1.0 - rp * rp * e2;
    const double ratio = c0 * kappa / xi;
    const double bracket = 2.0 * ratio * ratio * rp / dp - rs / ds - rp / dp;
    return -bracket * decay_cosh(kappa, a, z) / (2.0 * pi);
  };
  std::vector<double> pts;
  for (double m : {1.0, 3.0, 10.0, 30.0}) pts.push_back(lo + m / gap);
  const auto edges = make_breakpoints(lo, hi, std::move(pts));
  const cplx v = integrate_complex(edges, f, spec);
  if (std::abs(v.imag()) > 1e-10 * std::abs(v.real()) + 1e-300) {
    throw std::logic_error("cavity_trace_imagfreq: result not real");
  }
  return v.real();
}

namespace {

cplx propagating_part(double z, double omega, const CavityGeometry& cavity, const QuadratureSpec& spec, bool full) {
  const double a = cavity.width;
  const double top = omega / c0;
  const double spacing = pi / a;
  auto f = [&](double beta) -> cplx {
    const Reflection r = reflection_beta(cavity.mirror, omega, beta);
    // Phase measured from the nearest resonance so that D stays accurate when |r| -> 1.
    const double m = std::round(beta / spacing);
    const double x = a * (beta - m * spacing);
    const double sign = std::fmod(m, 2.0) == 0.0 ? 1.0 : -1.0;
    const cplx e1 = sign * cplx{std::cos(x), std::sin(x)};
    const double s1 = std::sin(x);
    const cplx e2_minus_1{-2.0 * s1 * s1, std::sin(2.0 * x)};
    const cplx e2 = 1.0 + e2_minus_1;
    const cplx ds = (1.0 - r.s) * (1.0 + r.s) - r.s * r.s * e2_minus_1;
    const cplx dp = (1.0 - r.p) * (1.0 + r.p) - r.p * r.p * e2_minus_1;
    const double t = 2.0 * (beta / top) * (beta / top);
    const cplx bracket = t * r.p / dp - r.s / ds - r.p / dp;
    cplx v = -I * bracket * e1 * std::cos(2.0 * beta * z) / (2.0 * pi);
    if (full) v += I * (r.s * r.s / ds + r.p * r.p / dp) * e2 / (2.0 * pi);
    return v;
  };
  const PropagatingPanels panels = propagating_breaks(omega, a, cavity.mirror);
  QuadratureSpec local = spec;
  // Computed reflection amplitudes carry round-off, so D near a resonance is good to eps / (1 - |r|).
  if (!std::holds_alternative<ConstantR>(cavity.mirror) && panels.min_loss > 0.0) {
    local.roundoff_gain = std::max(spec.roundoff_gain, 1.0 / (50.0 * panels.min_loss));
  }
  return integrate_complex(panels.edges, f, local);
}

cplx evanescent_part(double z, double omega, const CavityGeometry& cavity, const QuadratureSpec& spec, bool full) {
  const double a = cavity.width;
  const double top = omega / c0;
  const double gap = a - 2.0 * std::abs(z);
  auto f = [&](double kappa) -> cplx {
    const Reflection r = reflection_beta(cavity.mirror, omega, cplx{0.0, kappa});
    const double e2 = std::exp(-2.0 * kappa * a);
    const cplx ds = 1.0 - r.s * r.s * e2;
    const cplx dp = 1.0 - r.p * r.p * e2;
    const double t = 2.0 * (kappa / top) * (kappa / top);
    const cplx bracket = -t * r.p / dp - r.s / ds - r.p / dp;
    cplx v = -bracket * decay_cosh(kappa, a, z) / (2.0 * pi);
    if (full) v += (r.s * r.s / ds + r.p * r.p / dp) * e2 / (2.0 * pi);
    return v;
  };
  std::vector<double> pts = near_zero_breaks(top);
  pts.push_back(top);
  for (double m : {1.0, 3.0, 10.0}) pts.push_back(m / gap);
  return integrate_complex(make_breakpoints(0.0, kDecayCut / gap, std::move(pts)), f, spec);
}

}  // namespace

cplx cavity_trace_propagating(double z, double omega, const CavityGeometry& cavity, const QuadratureSpec& spec,
                              TraceTerms terms) {
  if (!(omega > 0.0)) throw DomainError("cavity_trace_propagating: omega must be positive");
  check_inside(z, cavity.width);
  if (terms == TraceTerms::position_dependent && !std::holds_alternative<ConstantR>(cavity.mirror)) {
    throw DomainError("position-dependent trace terms diverge at grazing incidence unless the mirror is ConstantR");
  }
  return propagating_part(z, omega, cavity, spec, terms == TraceTerms::full);
}

GreenTraceParts cavity_trace_realfreq(double z, double omega, const CavityGeometry& cavity, const QuadratureSpec& spec,
                                      TraceTerms terms) {
  if (!(omega > 0.0)) throw DomainError("cavity_trace_realfreq: omega must be positive");
  check_inside(z, cavity.width);
  const bool full = terms == TraceTerms::full;
  if (!full && !std::holds_alternative<ConstantR>(cavity.mirror)) {
    throw DomainError("position-dependent trace terms diverge at grazing incidence unless the mirror is ConstantR");
  }
  return {propagating_part(z, omega, cavity, spec, full), evanescent_part(z, omega, cavity, spec, full)};
}

double zero_frequency_trace_limit(double z, const CavityGeometry& cavity, const QuadratureSpec& spec) {
  const double a = cavity.width;
  check_inside(z, a);
  const double gap = a - 2.0 * std::abs(z);
  const double hi = 1.25 * kDecayCut / gap;
  auto f = [&](double k) -> double {
    const double rp = static_limit_reflection(cavity.mirror, k).p;
    const double e2 = std::exp(-2.0 * k * a);
    return -(c0 * c0 / pi) * k * k * rp * decay_cosh(k, a, z) / (1.0 - rp * rp * e2);
  };
  std::vector<double> pts{1.0 / a};
  for (double m : {1.0, 3.0, 10.0, 30.0}) pts.push_back(m / gap);
  return integrate_real(make_breakpoints(0.0, hi, std::move(pts)), f, spec);
}

GreenTraceParts single_plate_trace_parts(double distance, double omega, const MirrorSpec& mirror,
                                         const QuadratureSpec& spec) {
  if (!(distance > 0.0)) throw DomainError("single_plate_trace: distance must be positive");
  if (!(omega > 0.0)) throw DomainError("single_plate_trace_parts: omega must be positive");
  const double top = omega / c0;
  auto prop = [&](double beta) -> cplx {
    const Reflection r = reflection_beta(mirror, omega, beta);
    const double t = 2.0 * (beta / top) * (beta / top);
    return I * (r.s + r.p - t * r.p) * std::exp(I * (2.0 * beta * distance)) / (4.0 * pi);
  };
  auto evan = [&](double kappa) -> cplx {
    const Reflection r = reflection_beta(mirror, omega, cplx{0.0, kappa});
    const double t = 2.0 * (kappa / top) * (kappa / top);
    return (r.s + r.p + t * r.p) * std::exp(-2.0 * kappa * distance) / (4.0 * pi);
  };
  const double kappa_max = 0.5 * kDecayCut / distance;
  std::vector<double> ev_pts = near_zero_breaks(top);
  ev_pts.push_back(top);
  for (double m : {0.5, 1.5, 5.0}) ev_pts.push_back(m / distance);
  GreenTraceParts out;
  // One panel per half period of exp(2 i beta d).
  std::vector<double> pr_pts = near_zero_breaks(top);
  const double period = pi / distance;
  for (double b = period; b < top && pr_pts.size() < 100000; b += period) pr_pts.push_back(b);
  out.propagating = integrate_complex(make_breakpoints(0.0, top, std::move(pr_pts)), prop, spec);
  out.evanescent = integrate_complex(make_breakpoints(0.0, kappa_max, std::move(ev_pts)), evan, spec);
  return out;
}

cplx single_plate_trace(double distance, cplx omega, const MirrorSpec& mirror, const QuadratureSpec& spec) {
  if (!(distance > 0.0)) throw DomainError("single_plate_trace: distance must be positive");
  if (omega.imag() == 0.0) return single_plate_trace_parts(distance, omega.real(), mirror, spec).total();
  if (!(omega.real() == 0.0 && omega.imag() > 0.0)) {
    throw DomainError("single_plate_trace: omega must be real positive or positive imaginary");
  }
  const double xi = omega.imag();
  const double lo = xi / c0;
  const double hi = lo + 0.5 * kDecayCut / distance;
  auto f = [&](double kappa) -> double {
    const Reflection r = reflection_beta(mirror, omega, cplx{0.0, kappa});
    const double ratio = c0 * kappa / xi;
    return (r.s.real() + r.p.real() - 2.0 * ratio * ratio * r.p.real()) * std::exp(-2.0 * kappa * distance) / (4.0 * pi);
  };
  std::vector<double> pts;
  for (double m : {0.5, 1.5, 5.0}) pts.push_back(lo + m / distance);
  return integrate_real(make_breakpoints(lo, hi, std::move(pts)), f, spec);
}

double single_plate_zero_frequency_limit(double distance, const MirrorSpec& mirror, const QuadratureSpec& spec) {
  if (!(distance > 0.0)) throw DomainError("single_plate_zero_frequency_limit: distance must be positive");
  const double hi = 0.625 * kDecayCut / distance;
  auto f = [&](double k) -> double {
    const double rp = static_limit_reflection(mirror, k).p;
    return -(c0 * c0 / (2.0 * pi)) * k * k * rp * std::exp(-2.0 * k * distance);
  };
  std::vector<double> pts;
  for (double m : {0.5, 1.5, 5.0}) pts.push_back(m / distance);
  return integrate_real(make_breakpoints(0.0, hi, std::move(pts)), f, spec);
}

double trace_imagfreq(double z, double xi, const Geometry& geometry, const QuadratureSpec& spec) {
  if (const auto* cav = std::get_if<CavityGeometry>(&geometry)) return cavity_trace_imagfreq(z, xi, *cav, spec);
  const auto& plate = std::get<PlateGeometry>(geometry);
  return single_plate_trace(wall_clearance(geometry, z), cplx{0.0, xi}, plate.mirror, spec).real();
}

GreenTraceParts trace_realfreq(double z, double omega, const Geometry& geometry, const QuadratureSpec& spec,
                               TraceTerms terms) {
  if (const auto* cav = std::get_if<CavityGeometry>(&geometry)) return cavity_trace_realfreq(z, omega, *cav, spec, terms);
  const auto& plate = std::get<PlateGeometry>(geometry);
  return single_plate_trace_parts(wall_clearance(geometry, z), omega, plate.mirror, spec);
}

double trace_zero_frequency(double z, const Geometry& geometry, const QuadratureSpec& spec) {
  if (const auto* cav = std::get_if<CavityGeometry>(&geometry)) return zero_frequency_trace_limit(z, *cav, spec);
  const auto& plate = std::get<PlateGeometry>(geometry);
  return single_plate_zero_frequency_limit(wall_clearance(geometry, z), plate.mirror, spec);
}

}  // namespace cpcav
