#include "cpcav/profile.hpp"

#include <exception>

#include <omp.h>

#include "cpcav/errors.hpp"

namespace cpcav {

namespace {

template <class Point, class Eval>
std::vector<Point> run_parallel(const std::vector<double>& z, int threads, Eval&& eval) {
  std::vector<Point> out(z.size());
  std::exception_ptr first_error;
  const long n = static_cast<long>(z.size());
  const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested) if (requested != 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = eval(z[i]);
    } catch (...) {
#pragma omp critical(cpcav_profile_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 2) throw DomainError("grid needs at least 2 points");
  if (!(hi > lo)) throw DomainError("grid bounds must satisfy lo < hi");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

std::vector<PotentialComponents> potential_profile_serial(const std::vector<double>& z, const Molecule& mol,
                                                          const Geometry& geometry, const ThermalEnvironment& env,
                                                          const QuadratureSpec& spec) {
  std::vector<PotentialComponents> out;
  out.reserve(z.size());
  for (double zi : z) out.push_back(potential_components(zi, mol, geometry, env, spec));
  return out;
}

std::vector<HeatingPoint> heating_profile_serial(const std::vector<double>& z, const Molecule& mol,
                                                 const Geometry& geometry, const ThermalEnvironment& env,
                                                 const QuadratureSpec& spec) {
  const double free = heating_rate_free(mol, env);
  std::vector<HeatingPoint> out;
  out.reserve(z.size());
  for (double zi : z) out.push_back({zi, heating_rate_profile(zi, mol, geometry, env, spec), free});
  return out;
}

std::vector<PotentialComponents> potential_profile(const std::vector<double>& z, const Molecule& mol,
                                                   const Geometry& geometry, const ThermalEnvironment& env,
                                                   const QuadratureSpec& spec, int threads) {
  return run_parallel<PotentialComponents>(
      z, threads, [&](double zi) { return potential_components(zi, mol, geometry, env, spec); });
}

std::vector<HeatingPoint> heating_profile(const std::vector<double>& z, const Molecule& mol, const Geometry& geometry,
                                          const ThermalEnvironment& env, const QuadratureSpec& spec, int threads) {
  const double free = heating_rate_free(mol, env);
  return run_parallel<HeatingPoint>(z, threads, [&](double zi) {
    return HeatingPoint{zi, heating_rate_profile(zi, mol, geometry, env, spec), free};
  });
}

void shift_profile(std::vector<PotentialComponents>& profile, const PotentialComponents& reference) {
  for (PotentialComponents& p : profile) {
    p.U_nr -= reference.U_nr;
    p.U_pr -= reference.U_pr;
    p.U_ev -= reference.U_ev;
    p.U_total = p.U_nr + p.U_pr + p.U_ev;
  }
}

}  // namespace cpcav
