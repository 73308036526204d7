#pragma once

#include <array>
#include <cmath>

#include "magnomech/entanglement.hpp"
#include "magnomech/lyapunov.hpp"
#include "magnomech/matrices.hpp"
#include "magnomech/params.hpp"
#include "magnomech/steady_state.hpp"
#include "magnomech/symplectic.hpp"

namespace magnomech {

// Negativities of the three bipartitions, indexed by Pair.
struct PairResult {
  std::array<Negativity, 3> by_pair{};

  const Negativity& operator[](Pair p) const { return by_pair[static_cast<int>(p)]; }
  Negativity& operator[](Pair p) { return by_pair[static_cast<int>(p)]; }

  double e(Pair p) const { return (*this)[p].e; }
  double nu_min(Pair p) const { return (*this)[p].nu_min; }
  double e_nm() const { return e(Pair::nm); }
  double e_mb() const { return e(Pair::mb); }
  double e_nb() const { return e(Pair::nb); }
};

// Everything computed on the way from parameters to negativities.
struct PointEvaluation {
  SteadyState steady;
  DriftMatrix drift;
  DiffusionMatrix diffusion;
  double margin = 0.0;
  CovarianceMatrix covariance;
  double residual = 0.0;        // relative Lyapunov residual
  double min_symplectic = 0.0;  // of the full 6x6 covariance
  PairResult pairs;
};

inline PairResult negativities(const CovarianceMatrix& v) {
  PairResult out;
  for (Pair p : all_pairs) out[p] = log_negativity(reduce_to_pair(v, p));
  return out;
}

// Steady state -> drift/diffusion -> Lyapunov -> three reductions.
// Throws Unstable or NonConvergence.
inline PointEvaluation evaluate_point(const SystemParams& params,
                                      const FixedPointOptions& fp = {}) {
  PointEvaluation ev;
  ev.steady = solve_steady_state(params, fp);
  ev.drift = build_drift(params, ev.steady);
  ev.diffusion = build_diffusion(params);
  ev.margin = stability_margin(ev.drift);
  if (!(ev.margin < 0.0)) throw Unstable(ev.margin);
  ev.covariance = solve_lyapunov(ev.drift, ev.diffusion);
  ev.residual = lyapunov_residual(ev.drift, ev.diffusion, ev.covariance);
  ev.min_symplectic = symplectic_eigenvalues<6>(ev.covariance.matrix()).front();
  ev.pairs = negativities(ev.covariance);
  return ev;
}

inline PairResult entangle_all(const SystemParams& params) {
  return evaluate_point(params).pairs;
}

struct NonrecipResult {
  std::array<double, 3> contrast{};
  PairResult plus;   // delta_B = +|delta_B|
  PairResult minus;  // delta_B = -|delta_B|

  double n(Pair p) const { return contrast[static_cast<int>(p)]; }
  double n_nm() const { return n(Pair::nm); }
  double n_mb() const { return n(Pair::mb); }
  double n_nb() const { return n(Pair::nb); }
};

inline NonrecipResult contrast_of(const PairResult& plus, const PairResult& minus) {
  NonrecipResult out;
  out.plus = plus;
  out.minus = minus;
  for (Pair p : all_pairs)
    out.contrast[static_cast<int>(p)] = contrast_ratio(plus.e(p), minus.e(p));
  return out;
}

inline SystemParams with_delta_B(SystemParams p, double delta_B) {
  p.delta_B = delta_B;
  return p;
}

// Evaluates both rotation directions and forms the contrast ratio per pair.
// An Unstable thrown by one leg is re-tagged with its sign.
inline NonrecipResult nonrecip_all(const SystemParams& params, double delta_B_magnitude) {
  const double mag = std::abs(delta_B_magnitude);
  auto leg = [&](int sign) {
    try {
      return entangle_all(with_delta_B(params, sign * mag));
    } catch (const Unstable& u) {
      throw Unstable(u.margin(), sign);
    }
  };
  const PairResult plus = leg(+1);
  const PairResult minus = leg(-1);
  return contrast_of(plus, minus);
}

}  // namespace magnomech
