#include "cpcav/numerics/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"

namespace cpcav {

namespace {

using std::numbers::pi;

// B_{2k} / (2k)! for k = 1..8
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 12.0,           -1.0 / 720.0,           1.0 / 30240.0,           -1.0 / 1209600.0,
    1.0 / 47900160.0,     -691.0 / 1307674368000.0, 1.0 / 74724249600.0, -3617.0 / 10670622842880000.0};

// Bernoulli numbers B_0..B_8
constexpr std::array<double, 9> kBernoulli = {1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0};

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double bernoulli_unit(int n, double x) {
  if (n < static_cast<int>(kBernoulli.size())) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) sum += binomial(n, k) * kBernoulli[k] * std::pow(x, n - k);
    return sum;
  }
  // Fourier series, valid on [0, 1] for n >= 2.
  const double scale = -2.0 * std::exp(std::lgamma(n + 1.0) - n * std::log(2.0 * pi));
  double sum = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double term = std::cos(2.0 * pi * k * x - 0.5 * n * pi) * std::pow(static_cast<double>(k), -n);
    sum += term;
    if (std::pow(static_cast<double>(k), -n) < 1e-18) break;
  }
  return scale * sum;
}

double riemann_zeta_int(int s) {
  switch (s) {
    case 2: return pi * pi / 6.0;
    case 3: return constants::zeta3;
    default: return hurwitz_zeta(s, 1.0);
  }
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// Expansion of Phi(e^mu, s, b) in powers of mu; converges for |mu| < 2 pi.
double lerch_log_series(double x, int s, double b) {
  const double mu = std::log(x);
  double total = std::pow(mu, s - 1) / factorial(s - 1) * (digamma(s) - digamma(b) - std::log(-mu));
  double mu_pow = 1.0;  // mu^k / k!
  int small = 0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) mu_pow *= mu / k;
    if (k == s - 1) continue;
    const int m = s - k;
    const double z = m >= 2 ? hurwitz_zeta(m, b) : -bernoulli_polynomial(1 - m, b) / (1 - m);
    const double term = z * mu_pow;
    total += term;
    if (std::abs(term) < 1e-18 * std::abs(total)) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  return std::pow(x, -b) * total;
}

double lerch_direct(double x, int s, double b) {
  double sum = 0.0;
  double xj = 1.0;
  for (int j = 0; j < 1000000; ++j) {
    const double term = xj * std::pow(j + b, -s);
    sum += term;
    if (term < 1e-18 * sum) break;
    xj *= x;
    if (xj == 0.0) break;
  }
  return sum;
}

}  // namespace

double bernoulli_polynomial(int n, double x) {
  if (n < 0) throw DomainError("bernoulli_polynomial: n must be >= 0");
  if (n == 0) return 1.0;
  if (n == 1) return x - 0.5;
  if (n < static_cast<int>(kBernoulli.size()) || (x >= 0.0 && x <= 1.0)) return bernoulli_unit(n, x);
  // B_n(x + 1) = B_n(x) + n x^(n-1)
  if (x > 1.0) return bernoulli_polynomial(n, x - 1.0) + n * std::pow(x - 1.0, n - 1);
  return bernoulli_polynomial(n, x + 1.0) - n * std::pow(x, n - 1);
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: argument must be positive");
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double p = inv2;
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    // B_{2k}/(2k) = (B_{2k}/(2k)!) (2k-1)!
    const int two_k = 2 * static_cast<int>(k + 1);
    series += kBernoulliOverFactorial[k] * factorial(two_k - 1) * p;
    p *= inv2;
  }
  return result + std::log(x) - 0.5 / x - series;
}

double hurwitz_zeta(int s, double b) {
  if (s < 2) throw DomainError("hurwitz_zeta: s must be >= 2");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("hurwitz_zeta: b must be positive");
  constexpr double cutoff = 20.0;
  double sum = 0.0;
  double a = b;
  while (a < cutoff) {
    sum += std::pow(a, -s);
    a += 1.0;
  }
  // Euler-Maclaurin tail for sum_{j>=0} (a+j)^-s
  double tail = std::pow(a, 1.0 - s) / (s - 1) + 0.5 * std::pow(a, -s);
  double rising = s;  // s (s+1) ... (s+2k-2)
  double a_pow = std::pow(a, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    const double term = kBernoulliOverFactorial[k] * rising * a_pow;
    tail += term;
    if (std::abs(term) < 1e-18 * tail) break;
    const double n = s + 2.0 * k;
    rising *= (n + 1.0) * (n + 2.0);
    a_pow /= a * a;
  }
  return sum + tail;
}

double lerch_phi(double x, int s, double b) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("lerch_phi: require 0 <= x < 1");
  if (s < 1) throw DomainError("lerch_phi: s must be >= 1");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("lerch_phi: b must be positive");
  if (x == 0.0) return std::pow(b, -s);
  if (x <= 0.5) return lerch_direct(x, s, b);
  if (b <= 2.0) return lerch_log_series(x, s, b);
  // Lower b into (1, 2]: Phi(x,s,b) = (Phi(x,s,b-m) - sum_{j<m} x^j (b-m+j)^-s) / x^m
  const int m = static_cast<int>(std::ceil(b - 2.0));
  const double b0 = b - m;
  double head = 0.0;
  double xj = 1.0;
  for (int j = 0; j < m; ++j) {
    head += xj * std::pow(b0 + j, -s);
    xj *= x;
  }
  return (lerch_log_series(x, s, b0) - head) / xj;
}

double shifted_geometric_sum(double b, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("shifted_geometric_sum: require 0 <= r < 1");
  return lerch_phi(r * r, 1, b);
}

std::complex<double> polylog(int s, std::complex<double> z) {
  if (s < 0 || s > 3) throw DomainError("polylog: order must be 0, 1, 2 or 3");
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("polylog: |z| must not exceed 1");
  const bool at_one = z == std::complex<double>(1.0, 0.0);
  if (at_one && s <= 1) throw DomainError("polylog: Li_0 and Li_1 diverge at z = 1");
  if (z == 0.0) return 0.0;
  if (s == 0) return z / (1.0 - z);
  if (s == 1) return -std::log(1.0 - z);
  if (at_one) return riemann_zeta_int(s);

  if (std::abs(z) <= 0.5) {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> zk = 1.0;
    for (int k = 1; k < 200; ++k) {
      zk *= z;
      const std::complex<double> term = zk / std::pow(static_cast<double>(k), s);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }

  // Li_s(e^mu) = mu^{s-1}/(s-1)! [H_{s-1} - ln(-mu)] + sum_{k != s-1} zeta(s-k) mu^k / k!
  const std::complex<double> mu = std::log(z);
  const double harmonic = s == 2 ? 1.0 : 1.5;
  std::complex<double> total = std::pow(mu, s - 1) / factorial(s - 1) * (harmonic - std::log(-mu));
  for (int k = 0; k < s - 1; ++k) total += riemann_zeta_int(s - k) * std::pow(mu, k) / factorial(k);
  // k = s: zeta(0) = -1/2
  total += -0.5 * std::pow(mu, s) / factorial(s);
  // k = s + 2m - 1 (m >= 1): zeta(1-2m) = -B_{2m}/(2m)
  // B_{2m}/(2m)! = (-1)^{m+1} 2 zeta(2m) / (2 pi)^{2m}
  std::complex<double> mu_pow = std::pow(mu, s + 1) / (2.0 * pi * 2.0 * pi);  // mu^{s+2m-1} / (2pi)^{2m}
  const std::complex<double> mu2 = mu * mu / (4.0 * pi * pi);
  int small = 0;
  for (int m = 1; m < 400; ++m) {
    const int k = s + 2 * m - 1;
    // (2m)!/k! = 1 / ((2m+1) ... k)
    double ratio = 1.0;
    for (int i = 2 * m + 1; i <= k; ++i) ratio /= i;
    const double zeta_2m = m == 1 ? pi * pi / 6.0 : hurwitz_zeta(2 * m, 1.0);
    const double b_over_fact = (m % 2 == 1 ? 2.0 : -2.0) * zeta_2m;  // times (2pi)^{-2m}, carried in mu_pow
    const std::complex<double> term = -b_over_fact / (2.0 * m) * ratio * mu_pow;
    total += term;
    if (std::abs(term) < 1e-18 * std::abs(total)) {
      if (++small >= 2) break;
    } else {
      small = 0;
    }
    mu_pow *= mu2;
  }
  return total;
}

namespace oracle {

std::complex<double> polylog_series(int s, std::complex<double> z) {
  if (s < 0 || s > 3) throw DomainError("polylog_series: order must be 0, 1, 2 or 3");
  const double mod = std::abs(z);
  if (mod > 1.0) throw DomainError("polylog_series: |z| must not exceed 1");
  constexpr long n_max = 20000000;
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> zk = 1.0;
  long k = 1;
  for (; k <= n_max; ++k) {
    zk *= z;
    const std::complex<double> term = zk / std::pow(static_cast<double>(k), s);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
  }
  if (z == std::complex<double>(1.0, 0.0) && s >= 2) {
    // tail sum_{k>n} k^-s by Euler-Maclaurin
    const double n = static_cast<double>(n_max);
    sum += std::pow(n, 1.0 - s) / (s - 1) - 0.5 * std::pow(n, -s) + s * std::pow(n, -s - 1.0) / 12.0;
  }
  return sum;
}

double digamma_series(double x) {
  if (!(x > 0.0)) throw DomainError("digamma_series: argument must be positive");
  constexpr long n_terms = 2000000;
  double sum = 0.0;
  for (long n = n_terms - 1; n >= 0; --n) sum += 1.0 / (n + 1.0) - 1.0 / (n + x);
  // remainder sum_{n>=N} f(n) ~ integral + f(N)/2
  const double n = static_cast<double>(n_terms);
  sum += std::log((n + x) / (n + 1.0)) + 0.5 * (1.0 / (n + 1.0) - 1.0 / (n + x));
  return -constants::euler_gamma + sum;
}

double hurwitz_zeta_series(int s, double b) {
  if (s < 2 || !(b > 0.0)) throw DomainError("hurwitz_zeta_series: require s >= 2, b > 0");
  constexpr long n_terms = 1000000;
  double sum = 0.0;
  for (long j = n_terms - 1; j >= 0; --j) sum += std::pow(j + b, -s);
  const double a = n_terms + b;
  sum += std::pow(a, 1.0 - s) / (s - 1) + 0.5 * std::pow(a, -s) + s * std::pow(a, -s - 1.0) / 12.0;
  return sum;
}

double lerch_phi_series(double x, int s, double b) {
  if (!(x >= 0.0 && x < 1.0) || s < 1 || !(b > 0.0)) throw DomainError("lerch_phi_series: bad argument");
  return lerch_direct(x, s, b);
}

double shifted_geometric_sum_series(double b, double r) {
  if (!(r >= 0.0 && r < 1.0) || !(b > 0.0)) throw DomainError("shifted_geometric_sum_series: bad argument");
  return lerch_direct(r * r, 1, b);
}

}  // namespace oracle

}  // namespace cpcav
