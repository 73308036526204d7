#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "magnomech/errors.hpp"
#include "magnomech/lyapunov.hpp"
#include "magnomech/symplectic.hpp"

namespace magnomech {

// Bipartitions of the three modes.
enum class Pair { nm, mb, nb };

inline constexpr std::array<Pair, 3> all_pairs{Pair::nm, Pair::mb, Pair::nb};

inline std::string_view pair_name(Pair p) {
  switch (p) {
    case Pair::nm: return "nm";
    case Pair::mb: return "mb";
    case Pair::nb: return "nb";
  }
  return "?";
}

// Quadrature indices selected by a pair, in increasing order.
inline std::array<int, 4> pair_indices(Pair p) {
  switch (p) {
    case Pair::nm: return {Xn, Yn, Xm, Ym};
    case Pair::mb: return {Xm, Ym, Q, P};
    case Pair::nb: return {Xn, Yn, Q, P};
  }
  return {};
}

inline Mat4 reduce_to_pair(const Mat6& v, Pair sel) {
  const auto idx = pair_indices(sel);
  Mat4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = v(idx[r], idx[c]);
  return out;
}

inline Mat4 reduce_to_pair(const CovarianceMatrix& v, Pair sel) {
  return reduce_to_pair(v.matrix(), sel);
}

struct Negativity {
  double e = 0.0;          // max(0, -ln 2 nu)
  double nu_min = 0.0;     // minimum symplectic eigenvalue of the partial transpose
  double nu_spectral = 0.0;
  double nu_closed = 0.0;
};

// Minimum partially-transposed symplectic eigenvalue from the 2x2 block
// invariants: Sigma = det A + det B - 2 det C.
inline double pt_symplectic_closed_form(const Mat4& v4) {
  const double det_a = v4.block<2, 2>(0, 0).determinant();
  const double det_b = v4.block<2, 2>(2, 2).determinant();
  const double det_c = v4.block<2, 2>(0, 2).determinant();
  const double det_v = v4.determinant();
  const double sigma = det_a + det_b - 2.0 * det_c;
  const double disc = std::max(0.0, sigma * sigma - 4.0 * det_v);
  const double upper = sigma + std::sqrt(disc);
  if (!(upper > 0.0) || !(det_v > 0.0)) throw Unphysical("partial transpose has no positive symplectic spectrum");
  // (sigma - sqrt(disc)) / 2 without cancellation.
  return std::sqrt(2.0 * det_v / upper);
}

// Same quantity from the spectrum of P V4 P, P = diag(1, -1, 1, 1).
inline double pt_symplectic_spectral(const Mat4& v4) {
  Mat4 flip = Mat4::Identity();
  flip(1, 1) = -1.0;
  const Mat4 transposed = flip * v4 * flip;
  return symplectic_eigenvalues<4>(transposed).front();
}

inline constexpr double route_agreement_tolerance = 1e-8;

// Logarithmic negativity of a two-mode Gaussian state (natural log).
inline Negativity log_negativity(const Mat4& v4) {
  Negativity out;
  out.nu_closed = pt_symplectic_closed_form(v4);
  out.nu_spectral = pt_symplectic_spectral(v4);
  if (!(std::abs(out.nu_closed - out.nu_spectral) <=
        route_agreement_tolerance * std::max(1.0, out.nu_closed))) {
    throw RouteMismatch("symplectic eigenvalue routes disagree: closed form " +
                        std::to_string(out.nu_closed) + " vs spectral " +
                        std::to_string(out.nu_spectral));
  }
  out.nu_min = out.nu_closed;
  out.e = std::max(0.0, -std::log(2.0 * out.nu_min));
  return out;
}

// |E+ - E-| / (E+ + E-), with 0/0 defined as 0.
inline double contrast_ratio(double e_plus, double e_minus) {
  const double sum = e_plus + e_minus;
  if (sum <= 0.0) return 0.0;
  return std::abs(e_plus - e_minus) / sum;
}

}  // namespace magnomech
