#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cpcav/asymptotics.hpp"
#include "cpcav/config.hpp"
#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"
#include "cpcav/greens.hpp"

using namespace cpcav;
using constants::c;
using constants::pi;

namespace {

const MirrorSpec kGold = HalfSpace{Drude{1.37e16, 5.32e13}};
const MirrorSpec kSapphire = HalfSpace{ConstantLossy{10.0, 1e-4}};
constexpr double kOmega = 2.78973e12;

double wavelength(double omega) { return 2.0 * pi * c / omega; }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(TransverseBeta, PropagatingAtNormalIncidence) {
  const cplx b = transverse_beta(cplx{kOmega, 0.0}, 0.0);
  EXPECT_NEAR(b.real(), kOmega / c, 1e-12 * kOmega / c);
  EXPECT_EQ(b.imag(), 0.0);
}

TEST(TransverseBeta, EvanescentBranch) {
  const cplx b = transverse_beta(cplx{kOmega, 0.0}, 2.0 * kOmega / c);
  EXPECT_NEAR(b.real(), 0.0, 1e-12 * kOmega / c);
  EXPECT_NEAR(b.imag(), std::sqrt(3.0) * kOmega / c, 1e-12 * kOmega / c);
}

TEST(TransverseBeta, ImaginaryFrequency) {
  for (double k : {0.0, 1e3, 1e5}) {
    const cplx b = transverse_beta(cplx{0.0, kOmega}, k);
    EXPECT_NEAR(b.real(), 0.0, 1e-12 * std::abs(b));
    EXPECT_NEAR(b.imag(), std::hypot(kOmega / c, k), 1e-12 * std::abs(b));
  }
}

TEST(TransverseBeta, RejectsNegativeKPerp) { EXPECT_THROW(transverse_beta(cplx{kOmega, 0.0}, -1.0), DomainError); }

TEST(CavityTraceImag, NoScatteringGivesZero) {
  const CavityGeometry cav{1e-3, ConstantR{0.0}};
  EXPECT_EQ(cavity_trace_imagfreq(0.0, 1e12, cav), 0.0);
  EXPECT_EQ(cavity_trace_imagfreq(2e-4, 1e12, cav), 0.0);
}

TEST(CavityTraceImag, EvenInZ) {
  for (const MirrorSpec& m : {kGold, kSapphire, MirrorSpec{ConstantR{0.9}}}) {
    const CavityGeometry cav{6.75e-4, m};
    for (double z : {1e-5, 1.2e-4, 3.0e-4}) {
      const double plus = cavity_trace_imagfreq(z, 3e12, cav);
      const double minus = cavity_trace_imagfreq(-z, 3e12, cav);
      EXPECT_NEAR(plus, minus, 1e-10 * std::abs(plus));
    }
  }
}

TEST(CavityTraceImag, HighFrequencySuppressed) {
  const double a = 1e-3;
  const CavityGeometry cav{a, ConstantR{1.0 - 1e-9}};
  const double low = cavity_trace_imagfreq(0.0, 0.1 * c / a, cav);
  const double high = cavity_trace_imagfreq(0.0, 10.0 * c / a, cav);
  EXPECT_LE(std::abs(high), std::exp(-10.0) * std::abs(low));
}

TEST(CavityTraceImag, RealOnRandomGrid) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double a = std::pow(10.0, -5.0 + 3.0 * u(rng));
    const double z = (u(rng) - 0.5) * 0.9 * a;
    const double xi = std::pow(10.0, 10.0 + 5.0 * u(rng));
    const MirrorSpec m = i % 3 == 0 ? kGold : i % 3 == 1 ? kSapphire : MirrorSpec{ConstantR{u(rng)}};
    EXPECT_NO_THROW({
      const double v = cavity_trace_imagfreq(z, xi, CavityGeometry{a, m});
      EXPECT_TRUE(std::isfinite(v));
    });
  }
}

TEST(CavityTraceImag, RejectsBadInput) {
  const CavityGeometry cav{1e-3, kGold};
  EXPECT_THROW(cavity_trace_imagfreq(0.0, 0.0, cav), DomainError);
  EXPECT_THROW(cavity_trace_imagfreq(5e-4, 1e12, cav), DomainError);
}

TEST(CavityTraceReal, EvenInZ) {
  const double a = wavelength(kOmega);
  for (const MirrorSpec& m : {kGold, kSapphire}) {
    const CavityGeometry cav{a, m};
    for (double z : {0.07 * a, 0.31 * a}) {
      const GreenTraceParts p = cavity_trace_realfreq(z, kOmega, cav);
      const GreenTraceParts q = cavity_trace_realfreq(-z, kOmega, cav);
      EXPECT_LT(rel(p.propagating, q.propagating), 1e-10);
      EXPECT_LT(rel(p.evanescent, q.evanescent), 1e-10);
    }
  }
}

TEST(CavityTraceReal, ConstantRHasOppositeChannels) {
  for (double r : {0.0, 0.3, 0.99}) {
    for (double beta : {0.0, 1e3, 5e3}) {
      const Reflection refl = reflection_beta(ConstantR{r}, cplx{kOmega, 0.0}, cplx{beta, 0.0});
      EXPECT_EQ(refl.s, -refl.p);
    }
  }
}

TEST(CavityTraceReal, MatchesSeriesOracle) {
  const double lambda = wavelength(kOmega);
  for (int nu : {1, 2, 3}) {
    for (double r : {0.5, 0.9, 0.99}) {
      const ConstantRCavity oracle{r, nu, lambda};
      const CavityGeometry cav{oracle.width(), ConstantR{r}};
      for (double phi : {0.0, 0.1, 0.25, 0.4}) {
        const cplx g = cavity_trace_propagating(phi * cav.width, kOmega, cav, {}, TraceTerms::position_dependent);
        const double lhs = (kOmega / c) * (kOmega / c) * g.real();
        const double rhs = I_phi_series(oracle, phi);
        EXPECT_NEAR(lhs, rhs, 1e-6 * std::abs(rhs)) << "nu=" << nu << " r=" << r << " phi=" << phi;
      }
    }
  }
}

TEST(CavityTraceReal, LogDivergenceAsReflectivityApproachesOne) {
  const double a = 0.5 * wavelength(kOmega);
  auto at = [&](double delta) {
    return cavity_trace_propagating(0.0, kOmega, CavityGeometry{a, ConstantR{1.0 - delta}}, {},
                                    TraceTerms::position_dependent);
  };
  const cplx g4 = at(1e-4);
  const cplx g6 = at(1e-6);
  const cplx g8 = at(1e-8);
  const double step1 = g6.real() - g4.real();
  const double step2 = g8.real() - g6.real();
  EXPECT_GT(std::abs(step1), 0.1 * std::abs(g4.real()));
  EXPECT_NEAR(step1, step2, 1e-3 * std::abs(step1));
  EXPECT_LT(std::abs(g8.imag() - g4.imag()), 1e-2 * std::abs(step1));
}

TEST(CavityTraceReal, PositionDependentTermsNeedConstantR) {
  const CavityGeometry cav{wavelength(kOmega), kGold};
  EXPECT_THROW(cavity_trace_realfreq(0.0, kOmega, cav, {}, TraceTerms::position_dependent), DomainError);
  EXPECT_THROW(cavity_trace_propagating(0.0, kOmega, cav, {}, TraceTerms::position_dependent), DomainError);
}

TEST(CavityTraceReal, HighFinesseStackOffNormalResonance) {
  const CavityGeometry cav{4.54721e-4, default_config().mirror("sapphire-bragg", 77.0, kOmega)};
  const double z = 0.2033 * cav.width;
  const GreenTraceParts plus = cavity_trace_realfreq(z, kOmega, cav);
  const GreenTraceParts minus = cavity_trace_realfreq(-z, kOmega, cav);
  EXPECT_TRUE(std::isfinite(std::abs(plus.propagating)));
  EXPECT_NEAR(std::abs(plus.propagating - minus.propagating), 0.0, 1e-8 * std::abs(plus.propagating));
}

TEST(SinglePlate, NoScatteringGivesZero) {
  EXPECT_EQ(std::abs(single_plate_trace(1e-4, cplx{kOmega, 0.0}, ConstantR{0.0})), 0.0);
  EXPECT_EQ(std::abs(single_plate_trace(1e-4, cplx{0.0, kOmega}, ConstantR{0.0})), 0.0);
}

TEST(SinglePlate, AmplitudeFallsAsInverseDistance) {
  const double lambda = wavelength(kOmega);
  auto scaled = [&](double d) { return d * std::abs(single_plate_trace(d, cplx{kOmega, 0.0}, kGold)); };
  const double ref = scaled(10.0 * lambda);
  EXPECT_NEAR(scaled(20.0 * lambda), ref, 0.03 * ref);
  EXPECT_NEAR(scaled(40.0 * lambda), ref, 0.03 * ref);
}

TEST(SinglePlate, WideCavityApproachesSinglePlate) {
  const double lambda = wavelength(kOmega);
  const double d = 0.25 * lambda;
  struct Case {
    MirrorSpec mirror;
    double width;
  };
  for (const Case& k : {Case{ConstantR{0.5}, 20.0 * lambda}, Case{kSapphire, 20.0 * lambda},
                        Case{kGold, 20.25 * lambda}}) {
    const cplx cav = cavity_trace_realfreq(-0.5 * k.width + d, kOmega, CavityGeometry{k.width, k.mirror}).total();
    const cplx plate = single_plate_trace(d, cplx{kOmega, 0.0}, k.mirror);
    EXPECT_LT(rel(cav, plate), 0.05);
  }
}

TEST(SinglePlate, RejectsBadInput) {
  EXPECT_THROW(single_plate_trace(0.0, cplx{kOmega, 0.0}, kGold), DomainError);
  EXPECT_THROW(single_plate_trace(1e-4, cplx{kOmega, kOmega}, kGold), DomainError);
}

TEST(ZeroFrequency, PerfectConductorAtCentre) {
  const double a = 6.75e-4;
  const double expected = -(c * c / pi) * 7.0 * constants::zeta3 / (4.0 * a * a * a);
  EXPECT_NEAR(zero_frequency_trace_limit(0.0, CavityGeometry{a, kGold}), expected, 1e-8 * std::abs(expected));
}

TEST(ZeroFrequency, TransparentMirrorGivesZero) {
  EXPECT_EQ(zero_frequency_trace_limit(1e-4, CavityGeometry{1e-3, ConstantR{0.0}}), 0.0);
}

TEST(ZeroFrequency, EvenInZ) {
  const CavityGeometry cav{1e-3, kSapphire};
  const double plus = zero_frequency_trace_limit(3e-4, cav);
  EXPECT_NEAR(plus, zero_frequency_trace_limit(-3e-4, cav), 1e-10 * std::abs(plus));
}

TEST(ZeroFrequency, ContinuousWithMatsubaraTerms) {
  const CavityGeometry cav{1e-3, kGold};
  const double xi = 1e-4 * c / cav.width;
  const double limit = zero_frequency_trace_limit(1e-4, cav);
  EXPECT_NEAR(xi * xi * cavity_trace_imagfreq(1e-4, xi, cav), limit, 1e-3 * std::abs(limit));
}

TEST(Geometry, WallClearance) {
  EXPECT_DOUBLE_EQ(wall_clearance(CavityGeometry{1.0, kGold}, -0.3), 0.2);
  EXPECT_DOUBLE_EQ(wall_clearance(PlateGeometry{-0.5, kGold}, 0.25), 0.75);
  EXPECT_THROW(wall_clearance(CavityGeometry{1.0, kGold}, 0.5), DomainError);
  EXPECT_THROW(wall_clearance(PlateGeometry{0.0, kGold}, -0.1), DomainError);
}

TEST(Geometry, GenericFormsDispatch) {
  const Geometry plate = PlateGeometry{-1e-4, kGold};
  const cplx direct = single_plate_trace(3e-4, cplx{0.0, 1e12}, kGold);
  EXPECT_NEAR(trace_imagfreq(2e-4, 1e12, plate), direct.real(), 1e-12 * std::abs(direct.real()));
  const Geometry cav = CavityGeometry{1e-3, kGold};
  EXPECT_DOUBLE_EQ(trace_zero_frequency(0.0, cav), zero_frequency_trace_limit(0.0, CavityGeometry{1e-3, kGold}));
}
