#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include "magnomech/errors.hpp"
#include "magnomech/params.hpp"

namespace magnomech {

using cplx = std::complex<double>;

// Classical amplitudes around which the fluctuations are linearized.
struct SteadyState {
  std::optional<cplx> m_s;  // absent in effective mode when g0 is unknown
  std::optional<cplx> n_s;
  double q_s = 0.0;
  double p_s = 0.0;
  cplx coupling_G_eff{0.0, 0.0};
  double delta_m_eff = 0.0;
  int iterations = 0;

  // Real coupling entering the drift matrix.
  double coupling() const { return std::abs(coupling_G_eff); }
};

struct FixedPointOptions {
  double tolerance = 1e-12;  // on |dq| / max(1, |q|)
  int max_iterations = 10000;
};

namespace detail {

// m_s = eps (i dn + kn) / (J^2 + (i dn + kn)(i (dm~ + dB) + km))
inline cplx magnon_amplitude(const SystemParams& p, double epsilon_l, double delta_m_eff) {
  const cplx i{0.0, 1.0};
  const cplx cav = i * p.delta_n + p.kappa_n;
  const cplx mag = i * (delta_m_eff + p.delta_B) + p.kappa_m;
  return epsilon_l * cav / (p.coupling_J * p.coupling_J + cav * mag);
}

// Cavity amplitude in the printed form, which omits kappa_n.
inline std::optional<cplx> cavity_amplitude(const SystemParams& p, cplx m_s) {
  const double denom = p.delta_n * p.delta_n - 4.0 * p.chi * p.chi;
  if (denom == 0.0) return std::nullopt;
  const cplx i{0.0, 1.0};
  return -p.coupling_J * m_s * (p.delta_n + 2.0 * i * p.chi * std::exp(i * p.beta)) / denom;
}

}  // namespace detail

// High-detuning closed form m_s = i eps dn / (J^2 - dn (dm~ + dB)).
inline cplx magnon_amplitude_simplified(const SystemParams& p, double epsilon_l,
                                        double delta_m_eff) {
  const cplx i{0.0, 1.0};
  return i * epsilon_l * p.delta_n /
         (p.coupling_J * p.coupling_J - p.delta_n * (delta_m_eff + p.delta_B));
}

inline SteadyState solve_steady_state(const SystemParams& p, const FixedPointOptions& opt = {}) {
  SteadyState s;
  const cplx i{0.0, 1.0};

  if (const auto* eff = std::get_if<EffectiveDrive>(&p.drive)) {
    s.coupling_G_eff = cplx{eff->coupling_G, 0.0};
    s.delta_m_eff = p.delta_m_eff;
    if (eff->g0 > 0.0) {
      // G = sqrt2 i g m_s with G real => m_s purely imaginary.
      const cplx m = eff->coupling_G / (std::numbers::sqrt2 * i * eff->g0);
      s.m_s = m;
      s.q_s = -eff->g0 * std::norm(m) / p.omega_b;
      s.n_s = detail::cavity_amplitude(p, m);
    }
    return s;
  }

  const auto& mic = std::get<MicroscopicDrive>(p.drive);
  double q = 0.0;
  double prev_step = std::numeric_limits<double>::infinity();
  bool damped = false;
  cplx m{0.0, 0.0};

  for (int k = 1; k <= opt.max_iterations; ++k) {
    const double dm = mic.delta_m_bare + mic.g0 * q;
    m = detail::magnon_amplitude(p, mic.epsilon_l, dm);
    const double q_target = -mic.g0 * std::norm(m) / p.omega_b;
    const double step = q_target - q;

    // Non-contracting iterate: switch to a half-step relaxation.
    if (!damped && k > 1 && std::abs(step) >= prev_step) damped = true;
    const double q_next = damped ? q + 0.5 * step : q_target;

    if (!std::isfinite(q_next)) break;
    const bool converged = std::abs(step) <= opt.tolerance * std::max(1.0, std::abs(q_target));
    prev_step = std::abs(step);
    q = q_next;

    if (converged) {
      s.iterations = k;
      s.delta_m_eff = mic.delta_m_bare + mic.g0 * q;
      m = detail::magnon_amplitude(p, mic.epsilon_l, s.delta_m_eff);
      s.m_s = m;
      s.q_s = -mic.g0 * std::norm(m) / p.omega_b;
      s.n_s = detail::cavity_amplitude(p, m);
      s.coupling_G_eff = std::numbers::sqrt2 * i * mic.g0 * m;
      return s;
    }
  }
  throw NonConvergence(opt.max_iterations);
}

}  // namespace magnomech
