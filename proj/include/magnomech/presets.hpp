#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magnomech/errors.hpp"
#include "magnomech/params.hpp"
#include "magnomech/sweep.hpp"

namespace magnomech {

inline constexpr int default_grid_points = 401;

inline constexpr std::array<std::string_view, 19> figure_ids{
    "fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d",
    "fig4a", "fig4b", "fig4c", "fig5a", "fig5b", "fig5c", "fig6a", "fig6b", "fig6c"};

// Detuning used by every panel whose caption refers back to the Barnett-shift
// figure: delta_n = -1.3 omega_b.
inline constexpr double working_delta_n = -1.3;
// Barnett shift magnitude for the nonreciprocity panels, in units of omega_b.
inline constexpr double working_delta_B = 0.3;

namespace detail {

inline Axis make_axis(std::string parameter, double start, double stop, int count,
                      std::string unit) {
  Axis a;
  a.parameter = std::move(parameter);
  a.start = start;
  a.stop = stop;
  a.count = count;
  a.unit = std::move(unit);
  return a;
}

}  // namespace detail

// Sweep reproducing one figure panel. Unstated baselines are reconstructions:
// fig1a fixes delta_m_eff = omega_b, fig1b fixes delta_n = -omega_b, and the
// later figures use delta_n = -1.3 omega_b.
inline SweepSpec figure_preset(std::string_view id, int points = default_grid_points) {
  using detail::make_axis;
  using Q = Quantity;

  SweepSpec s;
  s.base = baseline_params();
  SystemParams& b = s.base;
  const double wb = b.omega_b;
  const std::vector<Q> entanglement{Q::e_nm, Q::e_mb, Q::e_nb};

  const std::string key(id);
  if (key == "fig1a") {
    b.delta_m_eff = wb;
    s.axis1 = make_axis("delta_n", -2.0, 2.0, points, "omega_b");
    s.quantities = entanglement;
  } else if (key == "fig1b") {
    b.delta_n = -wb;
    s.axis1 = make_axis("delta_m_eff", -2.0, 2.0, points, "omega_b");
    s.quantities = entanglement;
  } else if (key == "fig2a") {
    b.delta_n = working_delta_n * wb;
    s.axis1 = make_axis("beta", 0.0, 2.0, points, "pi");
    s.quantities = entanglement;
  } else if (key == "fig2b") {
    b.delta_n = working_delta_n * wb;
    s.axis1 = make_axis("delta_B", -0.5, 0.5, points, "omega_b");
    s.quantities = entanglement;
  } else if (key == "fig2c") {
    b.delta_n = working_delta_n * wb;
    b.delta_B = working_delta_B * wb;
    s.axis1 = make_axis("chi", 0.0, 0.9, points, "kappa_n");
    s.quantities = {Q::n_nm, Q::n_mb, Q::n_nb};
    s.nonrecip_pairing = true;
  } else if (key == "fig2d") {
    b.delta_n = working_delta_n * wb;
    b.delta_B = working_delta_B * wb;
    s.axis1 = make_axis("beta", 0.0, 2.0, points, "pi");
    s.quantities = {Q::n_nm, Q::n_mb, Q::n_nb};
    s.nonrecip_pairing = true;
  } else if (key == "fig3a" || key == "fig3b" || key == "fig3c" || key == "fig3d") {
    b.delta_n = working_delta_n * wb;
    b.delta_B = working_delta_B * wb;
    s.axis1 = make_axis("coupling_G", 0.0, 2.5, points, "coupling_J");
    if (key == "fig3a") {
      s.quantities = entanglement;
    } else {
      s.nonrecip_pairing = true;
      s.quantities = {key == "fig3b" ? Q::n_nm : key == "fig3c" ? Q::n_mb : Q::n_nb};
    }
  } else if (key == "fig4a" || key == "fig4b" || key == "fig4c") {
    b.delta_m_eff = wb;
    s.axis1 = make_axis("delta_n", -2.0, 2.0, points, "omega_b");
    s.axis2 = make_axis("delta_B", 0.1, 0.3, 3, "omega_b");
    s.nonrecip_pairing = true;
    s.quantities = {key == "fig4a" ? Q::n_nm : key == "fig4b" ? Q::n_mb : Q::n_nb};
  } else if (key == "fig5a" || key == "fig5b" || key == "fig5c") {
    b.delta_n = working_delta_n * wb;
    s.axis1 = make_axis("temperature", 0.0, 2.0, points, "kelvin");
    s.axis2 = make_axis("delta_B", 0.1, 0.3, 3, "omega_b");
    s.nonrecip_pairing = true;
    s.quantities = {key == "fig5a" ? Q::n_nm : key == "fig5b" ? Q::n_mb : Q::n_nb};
  } else if (key == "fig6a" || key == "fig6b" || key == "fig6c") {
    b.delta_n = working_delta_n * wb;
    s.axis1 = make_axis("temperature", 0.0, 2.0, points, "kelvin");
    s.axis2 = make_axis("delta_B", -0.2, 0.2, 3, "omega_b");
    s.quantities = {key == "fig6a" ? Q::e_nm : key == "fig6b" ? Q::e_mb : Q::e_nb};
  } else {
    throw UnknownFigure(key);
  }
  s.quantities = canonical_quantities(s.quantities);
  return s;
}

}  // namespace magnomech
