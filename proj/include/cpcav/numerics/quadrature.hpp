#pragma once

// Adaptive Gauss-Kronrod (G10/K21) integration of real or complex integrands
// over finite intervals. Subintervals are bisected in order of decreasing
// error estimate until the global estimate meets the requested tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "cpcav/errors.hpp"

namespace cpcav {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;
  /// Multiplier on the round-off floor, for integrands evaluated with less than full precision.
  double roundoff_gain = 1.0;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be non-negative");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(roundoff_gain >= 1.0)) throw DomainError("QuadratureSpec: roundoff_gain must be >= 1");
  }
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

namespace detail {

inline constexpr std::array<double, 11> kK21Nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kK21Weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478156, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
inline constexpr std::array<double, 5> kG10Weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lo;
  double hi;
  std::complex<double> value;
  double error;
  double abs_value;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gk21(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const std::complex<double> fc = f(center);
  std::complex<double> kronrod = fc * kK21Weights[10];
  std::complex<double> gauss{0.0, 0.0};
  double abs_sum = std::abs(fc) * kK21Weights[10];
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kK21Nodes[i];
    const std::complex<double> f1 = f(center - dx);
    const std::complex<double> f2 = f(center + dx);
    kronrod += (f1 + f2) * kK21Weights[i];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kK21Weights[i];
    if (i % 2 == 1) gauss += (f1 + f2) * kG10Weights[i / 2];
  }
  return Segment{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace detail

/// Integrates f over the union of consecutive panels [b0,b1], [b1,b2], ...
/// Breakpoints must be strictly increasing; use them to place panel edges at
/// known peaks or kinks of the integrand.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breakpoints, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (breakpoints.size() < 2) throw DomainError("integrate: need at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) throw DomainError("integrate: breakpoints must increase");
  }

  auto g = [&f](double x) -> std::complex<double> { return std::complex<double>(f(x)); };

  std::priority_queue<detail::Segment> heap;
  std::complex<double> total{0.0, 0.0};
  double total_error = 0.0;
  double total_abs = 0.0;
  int evaluations = 0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    detail::Segment s = detail::gk21(g, breakpoints[i - 1], breakpoints[i]);
    evaluations += 21;
    total += s.value;
    total_error += s.error;
    total_abs += s.abs_value;
    heap.push(s);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto tolerance = [&] {
    return std::max({spec.abs_tol, spec.rel_tol * std::abs(total), 50.0 * eps * spec.roundoff_gain * total_abs});
  };

  int subdivisions = 0;
  while (total_error > tolerance()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("integrate: subdivision budget exhausted", total, total_error);
    }
    detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw ConvergenceError("integrate: interval cannot be bisected further", total, total_error);
    }
    heap.pop();
    detail::Segment left = detail::gk21(g, worst.lo, mid);
    detail::Segment right = detail::gk21(g, mid, worst.hi);
    evaluations += 42;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to remove drift from the running updates.
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return QuadratureResult{value, error, subdivisions, evaluations};
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
  if (!(lo < hi)) throw DomainError("integrate: require lo < hi");
  const std::array<double, 2> edges{lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(edges), spec);
}

/// Sorts, clips to [lo, hi] and de-duplicates candidate breakpoints, always
/// keeping lo and hi themselves.
inline std::vector<double> make_breakpoints(double lo, double hi, std::vector<double> interior) {
  std::vector<double> out;
  out.reserve(interior.size() + 2);
  out.push_back(lo);
  std::sort(interior.begin(), interior.end());
  const double min_gap = 1e-12 * (hi - lo);
  for (double x : interior) {
    if (x > out.back() + min_gap && x < hi - min_gap) out.push_back(x);
  }
  out.push_back(hi);
  return out;
}

}  // namespace cpcav
