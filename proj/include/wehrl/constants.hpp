#pragma once

#include <numbers>

namespace wehrl::constants {

inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double pi = std::numbers::pi;
inline constexpr double ln_pi = 1.1447298858494002;
inline constexpr double ln2 = std::numbers::ln2;
// Shared right-hand side of the three rearranged uncertainty relations.
inline constexpr double ln_e_pi = 1.0 + ln_pi;

// Q values below this are treated as exact zeros by every integrand.
inline constexpr double density_floor = 1e-300;

}  // namespace wehrl::constants
