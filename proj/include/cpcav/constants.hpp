#pragma once

#include <numbers>

namespace cpcav::constants {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_B = 1.380649e-23;           // J / K
inline constexpr double c = 2.99792458e8;             // m / s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F / m
inline constexpr double mu0 = 1.25663706212e-6;       // N / A^2

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double zeta3 = 1.2020569031595942854;

}  // namespace cpcav::constants
