#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "magnomech/errors.hpp"
#include "magnomech/units.hpp"

namespace magnomech {

// Magnomechanical coupling supplied directly. The coupling is taken real and
// non-negative. g0 is optional (0 = unknown) and only used to report m_s.
struct EffectiveDrive {
  double coupling_G = 0.0;
  double g0 = 0.0;
};

// Coupling derived from the magnon drive through the steady state.
struct MicroscopicDrive {
  double g0 = 0.0;            // single-magnon magnomechanical coupling, rad/s
  double epsilon_l = 0.0;     // drive amplitude, 1/s
  double delta_m_bare = 0.0;  // bare magnon detuning, rad/s
};

using Drive = std::variant<EffectiveDrive, MicroscopicDrive>;

// Physical parameters of the cavity + OPA + spinning YIG sphere system.
// Every frequency and rate is an angular frequency in rad/s.
struct SystemParams {
  double omega_n = 0.0;      // cavity resonance (conversions only)
  double omega_b = 0.0;      // mechanical frequency
  double kappa_n = 0.0;
  double kappa_m = 0.0;
  double gamma_b = 0.0;
  double coupling_J = 0.0;   // cavity-magnon
  double delta_n = 0.0;      // omega_n - omega_l
  double delta_m_eff = 0.0;  // effective magnon detuning (derived in microscopic mode)
  double delta_B = 0.0;      // Barnett shift, signed
  double chi = 0.0;          // OPA gain
  double beta = 0.0;         // OPA phase, rad
  double temperature = 0.0;  // K
  Drive drive = EffectiveDrive{};

  bool effective() const { return std::holds_alternative<EffectiveDrive>(drive); }
  bool microscopic() const { return std::holds_alternative<MicroscopicDrive>(drive); }

  double mechanical_q() const { return omega_b / gamma_b; }
};

inline constexpr double min_recommended_mechanical_q = 1e3;

// Throws ConfigError when an invariant is violated. Returns advisory warnings.
inline std::vector<std::string> validate(const SystemParams& p) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  auto finite = [](double v) { return std::isfinite(v); };

  require(finite(p.omega_n) && finite(p.omega_b) && finite(p.kappa_n) && finite(p.kappa_m) &&
              finite(p.gamma_b) && finite(p.coupling_J) && finite(p.delta_n) &&
              finite(p.delta_m_eff) && finite(p.delta_B) && finite(p.chi) && finite(p.beta) &&
              finite(p.temperature),
          "parameters must be finite");
  require(p.kappa_n > 0.0, "kappa_n must be positive");
  require(p.kappa_m > 0.0, "kappa_m must be positive");
  require(p.gamma_b > 0.0, "gamma_b must be positive");
  require(p.omega_b > 0.0, "omega_b must be positive");
  require(p.chi >= 0.0, "chi must be non-negative");
  require(p.temperature >= 0.0, "temperature must be non-negative");

  if (const auto* eff = std::get_if<EffectiveDrive>(&p.drive)) {
    require(std::isfinite(eff->coupling_G) && eff->coupling_G >= 0.0,
            "coupling_G must be finite and non-negative");
    require(std::isfinite(eff->g0) && eff->g0 >= 0.0, "g0 must be finite and non-negative");
  } else {
    const auto& mic = std::get<MicroscopicDrive>(p.drive);
    require(std::isfinite(mic.g0) && std::isfinite(mic.epsilon_l) &&
                std::isfinite(mic.delta_m_bare),
            "microscopic drive parameters must be finite");
  }

  std::vector<std::string> warnings;
  if (p.mechanical_q() < min_recommended_mechanical_q) {
    warnings.push_back("mechanical quality factor " + std::to_string(p.mechanical_q()) +
                       " is below 1e3; the delta-correlated Brownian noise limit is questionable");
  }
  return warnings;
}

// The experimentally motivated working point: omega_b/2pi = 10 MHz,
// kappa_n = kappa_m = 2pi x 1 MHz, gamma_b = 2pi x 100 Hz, J/2pi = 3.2 MHz,
// G/2pi = 4.8 MHz, T = 10 mK, chi = 0.6 kappa_n, beta = pi.
// Detunings default to delta_n = -omega_b, delta_m_eff = omega_b, delta_B = 0.
inline SystemParams baseline_params() {
  SystemParams p;
  p.omega_n = from_hz(10e9);
  p.omega_b = from_hz(10e6);
  p.kappa_n = from_hz(1e6);
  p.kappa_m = from_hz(1e6);
  p.gamma_b = from_hz(100.0);
  p.coupling_J = from_hz(3.2e6);
  p.delta_n = -p.omega_b;
  p.delta_m_eff = p.omega_b;
  p.delta_B = 0.0;
  p.chi = 0.6 * p.kappa_n;
  p.beta = std::numbers::pi;
  p.temperature = 0.010;
  p.drive = EffectiveDrive{from_hz(4.8e6), 0.0};
  return p;
}

// Same working point driven microscopically: g/2pi = 0.2 Hz, epsilon_l = 7.1e14 1/s.
inline SystemParams baseline_microscopic_params() {
  SystemParams p = baseline_params();
  p.drive = MicroscopicDrive{from_hz(0.2), 7.1e14, p.omega_b};
  return p;
}

}  // namespace magnomech
