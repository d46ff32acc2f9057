#include "cpcav/materials.hpp"

#include <cmath>
#include <sstream>

#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"

namespace cpcav {

namespace {

constexpr double c0 = constants::c;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool on_imaginary_axis(cplx omega) { return omega.real() == 0.0 && omega.imag() > 0.0; }

// Normal wave number inside a medium of permittivity eps.
cplx medium_beta(cplx eps, cplx omega, cplx beta) {
  const cplx k0 = omega / c0;
  return sqrt_upper(beta * beta + (eps - 1.0) * k0 * k0);
}

cplx interface_s(cplx beta_i, cplx beta_j) { return (beta_i - beta_j) / (beta_i + beta_j); }

cplx interface_p(cplx eps_i, cplx beta_i, cplx eps_j, cplx beta_j) {
  return (eps_j * beta_i - eps_i * beta_j) / (eps_j * beta_i + eps_i * beta_j);
}

// Static p-interface coefficient; nullopt permittivities are infinite.
double static_interface_p(std::optional<double> eps_i, std::optional<double> eps_j) {
  if (!eps_i && !eps_j) return 0.0;
  if (!eps_j) return 1.0;
  if (!eps_i) return -1.0;
  return (*eps_j - *eps_i) / (*eps_j + *eps_i);
}

}  // namespace

cplx sqrt_upper(cplx w) {
  cplx root = std::sqrt(w);
  if (root.imag() < 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) root = -root;
  return {root.real(), root.imag() == 0.0 ? 0.0 : root.imag()};
}

void validate(const PermittivityModel& model) {
  std::visit(overloaded{
                 [](const Vacuum&) {},
                 [](const Drude& d) {
                   if (!(d.plasma_frequency > 0.0)) throw DomainError("Drude: plasma frequency must be positive");
                   if (!(d.damping > 0.0)) throw DomainError("Drude: damping must be positive");
                 },
                 [](const ConstantLossy& m) {
                   if (!(m.eps_imag >= 0.0)) throw DomainError("ConstantLossy: imaginary part must be >= 0");
                   if (!std::isfinite(m.eps_real)) throw DomainError("ConstantLossy: real part must be finite");
                 },
             },
             model);
}

cplx permittivity_at(const PermittivityModel& model, cplx omega) {
  return std::visit(overloaded{
                        [](const Vacuum&) -> cplx { return 1.0; },
                        [omega](const Drude& d) -> cplx {
                          if (omega == 0.0) {
                            throw DomainError("Drude permittivity diverges at omega = 0; static limit requires static_limit_reflection");
                          }
                          if (on_imaginary_axis(omega)) {
                            const double xi = omega.imag();
                            return 1.0 + d.plasma_frequency * d.plasma_frequency / (xi * (xi + d.damping));
                          }
                          const cplx i{0.0, 1.0};
                          return 1.0 - d.plasma_frequency * d.plasma_frequency / (omega * (omega + i * d.damping));
                        },
                        [omega](const ConstantLossy& m) -> cplx {
                          if (on_imaginary_axis(omega)) return m.eps_real;
                          return {m.eps_real, m.eps_imag};
                        },
                    },
                    model);
}

std::optional<double> static_permittivity(const PermittivityModel& model) {
  return std::visit(overloaded{
                        [](const Vacuum&) -> std::optional<double> { return 1.0; },
                        [](const Drude&) -> std::optional<double> { return std::nullopt; },
                        [](const ConstantLossy& m) -> std::optional<double> { return m.eps_real; },
                    },
                    model);
}

void validate_stack(std::span<const Layer> layers) {
  if (layers.empty()) throw DomainError("stack: at least one layer required");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    validate(layers[i].material);
    const bool last = i + 1 == layers.size();
    if (last && !layers[i].is_semi_infinite()) throw DomainError("stack: final layer must be semi-infinite");
    if (!last && !(layers[i].thickness > 0.0 && std::isfinite(layers[i].thickness))) {
      throw DomainError("stack: inner layers need finite positive thickness");
    }
  }
}

void validate(const MirrorSpec& mirror) {
  std::visit(overloaded{
                 [](const HalfSpace& h) { validate(h.material); },
                 [](const Stack& s) { validate_stack(s.layers); },
                 [](const ConstantR& c) {
                   if (!(c.r >= 0.0 && c.r < 1.0)) throw DomainError("ConstantR: r must lie in [0, 1)");
                 },
             },
             mirror);
}

Reflection fresnel_halfspace_beta(cplx eps, cplx omega, cplx beta) {
  const cplx root = medium_beta(eps, omega, beta);
  return {(beta - root) / (beta + root), (eps * beta - root) / (eps * beta + root)};
}

Reflection fresnel_halfspace(cplx eps, cplx omega, double k_perp) {
  if (k_perp < 0.0) throw DomainError("fresnel_halfspace: k_perp must be >= 0");
  const cplx k0 = omega / c0;
  return fresnel_halfspace_beta(eps, omega, sqrt_upper(k0 * k0 - k_perp * k_perp));
}

Reflection multilayer_reflection_beta(std::span<const Layer> layers, cplx omega, cplx beta) {
  validate_stack(layers);
  const std::size_t n = layers.size();
  std::vector<cplx> eps(n + 1);
  std::vector<cplx> beta_j(n + 1);
  eps[0] = 1.0;
  beta_j[0] = beta;
  for (std::size_t j = 0; j < n; ++j) {
    eps[j + 1] = permittivity_at(layers[j].material, omega);
    beta_j[j + 1] = medium_beta(eps[j + 1], omega, beta);
  }
  // back to front over interfaces (i, i+1), i = n-1 ... 0
  cplx rs = interface_s(beta_j[n - 1], beta_j[n]);
  cplx rp = interface_p(eps[n - 1], beta_j[n - 1], eps[n], beta_j[n]);
  const cplx i_unit{0.0, 1.0};
  for (std::size_t i = n - 1; i-- > 0;) {
    const cplx phase = std::exp(2.0 * i_unit * beta_j[i + 1] * layers[i].thickness);
    const cplx rs_ij = interface_s(beta_j[i], beta_j[i + 1]);
    const cplx rp_ij = interface_p(eps[i], beta_j[i], eps[i + 1], beta_j[i + 1]);
    rs = (rs_ij + rs * phase) / (1.0 + rs_ij * rs * phase);
    rp = (rp_ij + rp * phase) / (1.0 + rp_ij * rp * phase);
  }
  return {rs, rp};
}

cplx multilayer_reflection(std::span<const Layer> layers, cplx omega, double k_perp, Polarization pol) {
  if (k_perp < 0.0) throw DomainError("multilayer_reflection: k_perp must be >= 0");
  const cplx k0 = omega / c0;
  const Reflection r = multilayer_reflection_beta(layers, omega, sqrt_upper(k0 * k0 - k_perp * k_perp));
  return pol == Polarization::s ? r.s : r.p;
}

std::vector<Layer> quarter_wave_stack(const PermittivityModel& mat_a, const PermittivityModel& mat_b, int n_pairs,
                                      double omega0) {
  if (n_pairs < 0) throw DomainError("quarter_wave_stack: N must be >= 0");
  if (!(omega0 > 0.0)) throw DomainError("quarter_wave_stack: design frequency must be positive");
  auto quarter = [omega0](const PermittivityModel& m) {
    const cplx eps = permittivity_at(m, omega0);
    if (!(eps.real() > 0.0)) throw DomainError("quarter_wave_stack: Re eps must be positive at the design frequency");
    const double n = sqrt_upper(eps).real();
    return constants::pi * c0 / (2.0 * n * omega0);
  };
  const double d_a = quarter(mat_a);
  const double d_b = quarter(mat_b);
  std::vector<Layer> layers;
  layers.reserve(2 * static_cast<std::size_t>(n_pairs) + 1);
  for (int i = 0; i < n_pairs; ++i) {
    layers.push_back({mat_a, d_a});
    layers.push_back({mat_b, d_b});
  }
  layers.push_back({mat_a, Layer::semi_infinite});
  return layers;
}

Reflection reflection_beta(const MirrorSpec& mirror, cplx omega, cplx beta) {
  return std::visit(overloaded{
                        [&](const HalfSpace& h) {
                          return fresnel_halfspace_beta(permittivity_at(h.material, omega), omega, beta);
                        },
                        [&](const Stack& s) { return multilayer_reflection_beta(s.layers, omega, beta); },
                        [](const ConstantR& c) { return Reflection{-c.r, c.r}; },
                    },
                    mirror);
}

Reflection reflection(const MirrorSpec& mirror, cplx omega, double k_perp) {
  if (k_perp < 0.0) throw DomainError("reflection: k_perp must be >= 0");
  const cplx k0 = omega / c0;
  return reflection_beta(mirror, omega, sqrt_upper(k0 * k0 - k_perp * k_perp));
}

StaticReflection static_limit_reflection(const MirrorSpec& mirror, double k_perp) {
  if (!(k_perp > 0.0)) throw DomainError("static_limit_reflection: k_perp must be positive");
  return std::visit(overloaded{
                        [](const HalfSpace& h) {
                          return StaticReflection{0.0, static_interface_p(1.0, static_permittivity(h.material))};
                        },
                        [k_perp](const Stack& s) {
                          validate_stack(s.layers);
                          const std::size_t n = s.layers.size();
                          std::vector<std::optional<double>> eps(n + 1);
                          eps[0] = 1.0;
                          for (std::size_t j = 0; j < n; ++j) eps[j + 1] = static_permittivity(s.layers[j].material);
                          double rp = static_interface_p(eps[n - 1], eps[n]);
                          for (std::size_t i = n - 1; i-- > 0;) {
                            const double phase = std::exp(-2.0 * k_perp * s.layers[i].thickness);
                            const double rp_ij = static_interface_p(eps[i], eps[i + 1]);
                            rp = (rp_ij + rp * phase) / (1.0 + rp_ij * rp * phase);
                          }
                          return StaticReflection{0.0, rp};
                        },
                        [](const ConstantR& c) { return StaticReflection{-c.r, c.r}; },
                    },
                    mirror);
}

std::vector<BraggPoint> bragg_scan(const PermittivityModel& mat_a, const PermittivityModel& mat_b, int n_min,
                                   int n_max, double omega0) {
  if (n_min < 0 || n_max < n_min) throw DomainError("bragg_scan: empty or negative N range");
  std::vector<BraggPoint> out;
  out.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    const auto layers = quarter_wave_stack(mat_a, mat_b, n, omega0);
    const cplx r = multilayer_reflection(layers, omega0, 0.0, Polarization::p);
    out.push_back({n, 1.0 - r.real(), std::abs(r)});
  }
  return out;
}

std::optional<int> bragg_saturation(const PermittivityModel& mat_a, const PermittivityModel& mat_b,
                                    std::span<const BraggPoint> scan, double omega0, double rel_tol) {
  constexpr int n_limit = 2000;
  constexpr double roundoff_floor = 1e-13;
  const auto layers = quarter_wave_stack(mat_a, mat_b, n_limit, omega0);
  const double limit = 1.0 - multilayer_reflection(layers, omega0, 0.0, Polarization::p).real();
  if (!(limit > roundoff_floor)) return std::nullopt;
  for (const BraggPoint& pt : scan) {
    if (std::abs(pt.one_minus_re_r - limit) <= rel_tol * limit) return pt.n_pairs;
  }
  return std::nullopt;
}

std::string describe(const PermittivityModel& model) {
  std::ostringstream os;
  os.precision(6);
  std::visit(overloaded{
                 [&](const Vacuum&) { os << "vacuum"; },
                 [&](const Drude& d) { os << "drude(wp=" << d.plasma_frequency << ", gamma=" << d.damping << ")"; },
                 [&](const ConstantLossy& m) { os << "constant(" << m.eps_real << "+" << m.eps_imag << "i)"; },
             },
             model);
  return os.str();
}

}  // namespace cpcav
