#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cpcav {

using cplx = std::complex<double>;

/// Square root on the branch with non-negative imaginary part. A purely real
/// positive radicand yields the positive real root.
cplx sqrt_upper(cplx w);

struct Vacuum {};

struct Drude {
  double plasma_frequency;  // rad/s
  double damping;           // rad/s
};

struct ConstantLossy {
  double eps_real;
  double eps_imag;
};

using PermittivityModel = std::variant<Vacuum, Drude, ConstantLossy>;

void validate(const PermittivityModel& model);

/// Relative permittivity at complex angular frequency omega. On the positive
/// imaginary axis the result is real. ConstantLossy returns its real part
/// there, so that all imaginary-frequency quantities stay real.
cplx permittivity_at(const PermittivityModel& model, cplx omega);

/// Static permittivity; nullopt stands for an infinite value (conductor).
std::optional<double> static_permittivity(const PermittivityModel& model);

struct Layer {
  static constexpr double semi_infinite = std::numeric_limits<double>::infinity();

  PermittivityModel material;
  double thickness = semi_infinite;  // m

  bool is_semi_infinite() const { return thickness == semi_infinite; }
};

struct HalfSpace {
  PermittivityModel material;
};

struct Stack {
  std::vector<Layer> layers;  // front (cavity side) to back
};

/// Frequency- and angle-independent wall with r_p = -r_s = r.
struct ConstantR {
  double r;
};

using MirrorSpec = std::variant<HalfSpace, Stack, ConstantR>;

void validate(const MirrorSpec& mirror);
void validate_stack(std::span<const Layer> layers);

enum class Polarization { s, p };

struct Reflection {
  cplx s;
  cplx p;
};

/// Half-space Fresnel coefficients seen from vacuum.
Reflection fresnel_halfspace(cplx eps, cplx omega, double k_perp);

/// Same, parametrised by the vacuum normal wave number beta.
Reflection fresnel_halfspace_beta(cplx eps, cplx omega, cplx beta);

/// Reflection of a layered stack fronted by vacuum.
cplx multilayer_reflection(std::span<const Layer> layers, cplx omega, double k_perp, Polarization pol);
Reflection multilayer_reflection_beta(std::span<const Layer> layers, cplx omega, cplx beta);

/// N (a, b) pairs of quarter-wave layers at omega0 followed by semi-infinite a.
std::vector<Layer> quarter_wave_stack(const PermittivityModel& mat_a, const PermittivityModel& mat_b, int n_pairs,
                                      double omega0);

/// Reflection of any mirror, parametrised by the vacuum normal wave number.
Reflection reflection_beta(const MirrorSpec& mirror, cplx omega, cplx beta);
Reflection reflection(const MirrorSpec& mirror, cplx omega, double k_perp);

struct StaticReflection {
  double s;
  double p;
};

/// omega -> 0 limit of the coefficients at fixed k_perp > 0.
StaticReflection static_limit_reflection(const MirrorSpec& mirror, double k_perp);

struct BraggPoint {
  int n_pairs;
  double one_minus_re_r;
  double abs_r;
};

/// Normal-incidence reflection of quarter-wave stacks for each N in the range.
std::vector<BraggPoint> bragg_scan(const PermittivityModel& mat_a, const PermittivityModel& mat_b, int n_min,
                                   int n_max, double omega0);

/// First N whose 1 - Re r lies within rel_tol of the large-N limit, or
/// nullopt if the stack has not saturated within the scanned range.
std::optional<int> bragg_saturation(const PermittivityModel& mat_a, const PermittivityModel& mat_b,
                                    std::span<const BraggPoint> scan, double omega0, double rel_tol = 0.2);

std::string describe(const PermittivityModel& model);

}  // namespace cpcav
