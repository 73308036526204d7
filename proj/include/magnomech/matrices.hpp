#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "magnomech/params.hpp"
#include "magnomech/steady_state.hpp"
#include "magnomech/units.hpp"

namespace magnomech {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

// Quadrature ordering used by every 6x6 matrix in the library.
enum Quadrature : int { Xn = 0, Yn = 1, Xm = 2, Ym = 3, Q = 4, P = 5 };

// Drift matrix of the linearized fluctuations, du/dt = A u + f.
struct DriftMatrix {
  Mat6 a = Mat6::Zero();
};

// Noise diffusion matrix, diagonal by construction.
struct DiffusionMatrix {
  Mat6 d = Mat6::Zero();
};

// Assembles A from the parameters and the coupling |G_eff| of the steady
// state. Row/column order is (Xn, Yn, Xm, Ym, q, p).
inline DriftMatrix build_drift(const SystemParams& p, const SteadyState& s) {
  const double opa_c = 2.0 * p.chi * std::cos(p.beta);
  const double opa_s = 2.0 * p.chi * std::sin(p.beta);
  const double J = p.coupling_J;
  const double G = s.coupling();
  const double dm = s.delta_m_eff + p.delta_B;

  DriftMatrix out;
  auto& a = out.a;
  a(Xn, Xn) = -p.kappa_n + opa_c;
  a(Xn, Yn) = p.delta_n + opa_s;
  a(Xn, Ym) = J;

  a(Yn, Xn) = -p.delta_n + opa_s;
  a(Yn, Yn) = -p.kappa_n - opa_c;
  a(Yn, Xm) = -J;

  a(Xm, Yn) = J;
  a(Xm, Xm) = -p.kappa_m;
  a(Xm, Ym) = dm;
  a(Xm, Q) = -G;

  a(Ym, Xn) = -J;
  a(Ym, Xm) = -dm;
  a(Ym, Ym) = -p.kappa_m;

  a(Q, P) = p.omega_b;

  a(P, Ym) = G;
  a(P, Q) = -p.omega_b;
  a(P, P) = -p.gamma_b;
  return out;
}

// Vacuum noise on cavity and magnon, thermal Brownian noise on the phonon.
inline DiffusionMatrix build_diffusion(const SystemParams& p) {
  const double n_b = thermal_occupancy(p.omega_b, p.temperature);
  DiffusionMatrix out;
  out.d.diagonal() << p.kappa_n, p.kappa_n, p.kappa_m, p.kappa_m, 0.0,
      p.gamma_b * (2.0 * n_b + 1.0);
  return out;
}

}  // namespace magnomech
