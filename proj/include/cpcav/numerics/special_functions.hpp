#pragma once

#include <complex>

namespace cpcav {

/// Li_s(z) = sum_{k>=1} z^k / k^s for s in {0,1,2,3} and |z| <= 1.
std::complex<double> polylog(int s, std::complex<double> z);

/// Logarithmic derivative of the gamma function, x > 0.
double digamma(double x);

/// zeta(s, b) = sum_{j>=0} (j+b)^-s for integer s >= 2 and b > 0.
double hurwitz_zeta(int s, double b);

inline double hurwitz_zeta3(double b) { return hurwitz_zeta(3, b); }

/// Lerch transcendent Phi(x, s, b) = sum_{j>=0} x^j (j+b)^-s for 0 <= x < 1,
/// integer s >= 1 and b > 0.
double lerch_phi(double x, int s, double b);

/// sum_{j>=0} r^{2j} / (j+b) for 0 <= r < 1, b > 0.
double shifted_geometric_sum(double b, double r);

/// Bernoulli polynomial B_n(x) for n >= 0.
double bernoulli_polynomial(int n, double x);

/// Slow reference implementations by direct summation, used to cross-check
/// the fast paths above.
namespace oracle {

std::complex<double> polylog_series(int s, std::complex<double> z);
double digamma_series(double x);
double hurwitz_zeta_series(int s, double b);
double lerch_phi_series(double x, int s, double b);
double shifted_geometric_sum_series(double b, double r);

}  // namespace oracle

}  // namespace cpcav
