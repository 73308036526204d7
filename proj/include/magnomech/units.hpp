#pragma once

#include <cmath>
#include <numbers>

namespace magnomech {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018 exact values.
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J / K

// Electron gyromagnetic ratio as used for YIG: 2pi x 28 GHz/T, in rad/(s T).
inline constexpr double gyromagnetic_ratio = two_pi * 28.0e9;

// Convert a frequency quoted as f = omega/2pi (Hz) to an angular frequency.
constexpr double from_hz(double f) { return two_pi * f; }
constexpr double to_hz(double omega) { return omega / two_pi; }

// Bose-Einstein occupation of a bosonic mode at angular frequency omega.
// T = 0 is handled as the exact limit.
inline double thermal_occupancy(double omega, double temperature) {
  if (temperature <= 0.0) return 0.0;
  const double x = hbar * omega / (boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

// omega_m = gamma H_0
constexpr double field_to_frequency(double field_tesla) {
  return gyromagnetic_ratio * field_tesla;
}

// Effective field H_B = delta_B / gamma produced by rotating the sphere.
constexpr double barnett_field(double delta_B) {
  return delta_B / gyromagnetic_ratio;
}

}  // namespace magnomech
