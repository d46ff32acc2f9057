#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cpcav/config.hpp"
#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"
#include "cpcav/molecules.hpp"

using namespace cpcav;

namespace {

const ThermalEnvironment kRoom{300.0};

}  // namespace

TEST(Constants, Codata2018) {
  EXPECT_EQ(constants::hbar, 1.054571817e-34);
  EXPECT_EQ(constants::k_B, 1.380649e-23);
  EXPECT_EQ(constants::c, 2.99792458e8);
  EXPECT_EQ(constants::epsilon0, 8.8541878128e-12);
  EXPECT_EQ(constants::mu0, 1.25663706212e-6);
}

TEST(Polarizability, StaticLiH) {
  EXPECT_NEAR(polarizability_imag(builtin_lih(), 0.0), 8.72e-37, 0.005e-37);
}

TEST(Polarizability, DecaysAsInverseSquare) {
  const Molecule lih = builtin_lih();
  const double x1 = 1e16;
  const double x2 = 2e16;
  EXPECT_NEAR(polarizability_imag(lih, x1) / polarizability_imag(lih, x2), 4.0, 1e-6);
}

TEST(Polarizability, PositiveAndDecreasing) {
  const Molecule mol{"two", {{1e12, 1e-58}, {5e13, 3e-59}}};
  double prev = polarizability_imag(mol, 0.0);
  for (double xi = 1e9; xi < 1e17; xi *= 1.3) {
    const double a = polarizability_imag(mol, xi);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, prev);
    prev = a;
  }
}

TEST(PhotonNumber, LiHAtRoomTemperature) {
  const double x = constants::hbar * builtin_lih().transitions[0].omega / (constants::k_B * 300.0);
  EXPECT_NEAR(x, 0.07103, 1e-5);
  EXPECT_NEAR(photon_number(builtin_lih().transitions[0].omega, kRoom), 13.58, 0.01);
}

TEST(PhotonNumber, BoseEinsteinIdentityAcrossTails) {
  for (double omega = 1e10; omega <= 1e16; omega *= 1.7) {
    const double x = constants::hbar * omega / (constants::k_B * 300.0);
    const double n = photon_number(omega, kRoom);
    EXPECT_NEAR(n * std::expm1(x), 1.0, 1e-13) << omega;
  }
}

TEST(PhotonNumber, BoltzmannTail) {
  const double omega = 1e15;
  const double x = constants::hbar * omega / (constants::k_B * 300.0);
  EXPECT_NEAR(photon_number(omega, kRoom) / std::exp(-x), 1.0, 1e-9);
}

TEST(PhotonNumber, Omega3nPeak) { EXPECT_NEAR(omega3n_peak(kRoom), 1.11e14, 0.005e14); }

TEST(Matsubara, Frequencies) {
  EXPECT_EQ(matsubara_frequency(0, kRoom), 0.0);
  EXPECT_NEAR(matsubara_frequency(1, kRoom), 2.466e14, 1e-3 * 2.466e14);
  EXPECT_DOUBLE_EQ(matsubara_frequency(3, kRoom), 3.0 * matsubara_frequency(1, kRoom));
  EXPECT_DOUBLE_EQ(matsubara_frequency(1, ThermalEnvironment{77.0}), 77.0 / 300.0 * matsubara_frequency(1, kRoom));
}

TEST(Environment, RejectsNonPositiveTemperature) {
  EXPECT_THROW(ThermalEnvironment{0.0}.validate(), DomainError);
  EXPECT_THROW(ThermalEnvironment{-1.0}.validate(), DomainError);
}

TEST(Molecule, Validation) {
  EXPECT_THROW((Molecule{"x", {}}.validate()), DomainError);
  EXPECT_THROW((Molecule{"x", {{-1.0, 1e-58}}}.validate()), DomainError);
  EXPECT_THROW((Molecule{"x", {{1e12, 0.0}}}.validate()), DomainError);
  EXPECT_THROW((Molecule{"x", {{2e12, 1e-58}, {1e12, 1e-58}}}.validate()), DomainError);
  EXPECT_NO_THROW(builtin_lih().validate());
}

TEST(Registry, EmptyConfigHoldsLiHOnly) {
  std::istringstream in("");
  const MoleculeRegistry reg = load_molecules(in);
  ASSERT_EQ(reg.names(), std::vector<std::string>{"LiH"});
  EXPECT_EQ(reg.get("LiH").transitions[0].omega, 2.78973e12);
  EXPECT_EQ(reg.get("LiH").transitions[0].d_squared, 3.847e-58);
}

TEST(Registry, AcceptsYbF) {
  std::istringstream in("[molecule:YbF-vib]\ntransition = 9e10, 1e-58\n");
  const MoleculeRegistry reg = load_molecules(in);
  ASSERT_TRUE(reg.contains("YbF-vib"));
  EXPECT_EQ(reg.get("YbF-vib").transitions[0].omega, 9e10);
  EXPECT_TRUE(reg.contains("LiH"));
}

TEST(Registry, RejectsNonPositiveDipole) {
  for (const char* d2 : {"0", "-1e-58"}) {
    std::istringstream in(std::string("[molecule:bad]\ntransition = 1e12, ") + d2 + "\n");
    try {
      load_molecules(in);
      FAIL() << "accepted d_squared = " << d2;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), "d_squared");
      EXPECT_EQ(e.line(), 2);
    }
  }
}

TEST(Registry, OverrideWarns) {
  std::istringstream in("[molecule:LiH]\ntransition = 3e12, 4e-58\n");
  std::vector<std::string> warnings;
  const MoleculeRegistry reg = load_molecules(in, &warnings);
  EXPECT_EQ(reg.get("LiH").transitions[0].omega, 3e12);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("LiH"), std::string::npos);
}

TEST(Registry, RoundTrip) {
  MoleculeRegistry reg;
  reg.add(Molecule{"OH-a", {{1.0e12 / 3.0, 1.2345678901234567e-59}, {7.1e13, 2e-60}}});
  reg.add(Molecule{"YbF", {{9e10, 1e-58}}});
  std::ostringstream out;
  write_molecules(out, reg);
  std::istringstream in(out.str());
  const MoleculeRegistry back = load_molecules(in);
  EXPECT_EQ(back.entries(), reg.entries());
}

TEST(Registry, UnknownNameThrows) {
  const MoleculeRegistry reg;
  EXPECT_THROW(reg.get("CaF"), ConfigError);
}

TEST(Config, MalformedInputCarriesLine) {
  const char* bad[] = {"[molecule:x\n", "transition = 1, 2\n", "[widget:x]\n", "[molecule:x]\ntransition 1e12\n",
                       "[molecule:x]\ntransition = 1e12\n", "[molecule:x]\ntransition = abc, 1e-58\n"};
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(load_config(in), ConfigError) << text;
  }
  std::istringstream in("# c\n\n[material:m]\nmodel = plasma\n");
  try {
    load_config(in);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.field(), "model");
  }
}

TEST(Config, TemperatureTaggedMaterials) {
  const Config cfg = default_config();
  EXPECT_EQ(std::get<ConstantLossy>(cfg.material("sapphire", 300.0)).eps_imag, 1e-4);
  EXPECT_EQ(std::get<ConstantLossy>(cfg.material("sapphire", 77.2)).eps_imag, 1e-6);
  EXPECT_THROW(cfg.material("sapphire", 150.0), ConfigError);
  EXPECT_THROW(cfg.material("sapphire"), ConfigError);
}

TEST(Config, MirrorsFromDefinitions) {
  std::istringstream in(
      "[material:glass]\nmodel = constant\neps_real = 4\neps_imag = 0\n"
      "[mirror:glass-plate]\ntype = stack\nlayer = glass, 1e-4\nlayer = vacuum\n"
      "[mirror:half]\ntype = constant\nr = 0.7\n");
  const Config cfg = load_config(in);
  EXPECT_TRUE(std::holds_alternative<Stack>(cfg.mirror("glass-plate", 300.0, 1e12)));
  EXPECT_EQ(std::get<ConstantR>(cfg.mirror("half", 300.0, 1e12)).r, 0.7);
  EXPECT_EQ(std::get<ConstantR>(cfg.mirror("constant:0.25", 300.0, 1e12)).r, 0.25);
  EXPECT_TRUE(std::holds_alternative<HalfSpace>(cfg.mirror("gold", 300.0, 1e12)));
  EXPECT_TRUE(std::holds_alternative<Stack>(cfg.mirror("gaas-bragg", 300.0, 2.78973e12)));
  EXPECT_THROW(cfg.mirror("constant:1.5", 300.0, 1e12), ConfigError);
  EXPECT_THROW(cfg.mirror("silver", 300.0, 1e12), ConfigError);
}

TEST(Config, ParseQuantity) {
  EXPECT_DOUBLE_EQ(parse_quantity("500um", "width"), 500e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("1.2mm", "width"), 1.2e-3);
  EXPECT_DOUBLE_EQ(parse_quantity("3e-4", "width"), 3e-4);
  EXPECT_DOUBLE_EQ(parse_quantity("77K", "T"), 77.0);
  EXPECT_THROW(parse_quantity("12 parsecs", "width"), ConfigError);
}

TEST(MultiLevel, TwoLevelPolarizabilitiesOppose) {
  const MultiLevelMolecule m{{0.0, 2.78973e12}, {{0, 1, 3.847e-58}}};
  for (double xi : {0.0, 1e12, 1e14}) {
    EXPECT_NEAR(m.polarizability_imag(1, xi), -m.polarizability_imag(0, xi), 1e-12 * m.polarizability_imag(0, xi));
  }
  EXPECT_DOUBLE_EQ(m.polarizability_imag(0, 1e13), polarizability_imag(builtin_lih(), 1e13));
}

TEST(MultiLevel, GroundStateView) {
  const MultiLevelMolecule m{{0.0, 1e12, 3e12}, {{0, 1, 1e-58}, {2, 0, 2e-58}, {1, 2, 5e-59}}};
  const Molecule g = m.ground_state_view();
  ASSERT_EQ(g.transitions.size(), 2u);
  EXPECT_EQ(g.transitions[0], (Transition{1e12, 1e-58}));
  EXPECT_EQ(g.transitions[1], (Transition{3e12, 2e-58}));
}

TEST(MultiLevel, Validation) {
  EXPECT_THROW((MultiLevelMolecule{{}, {}}.validate()), DomainError);
  EXPECT_THROW((MultiLevelMolecule{{0.0, 1e12}, {{0, 2, 1e-58}}}.validate()), DomainError);
  EXPECT_THROW((MultiLevelMolecule{{0.0, 1e12}, {{0, 1, 0.0}}}.validate()), DomainError);
  EXPECT_THROW((MultiLevelMolecule{{0.0, 0.0}, {{0, 1, 1e-58}}}.validate()), DomainError);
}
