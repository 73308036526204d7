#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magnomech/errors.hpp"
#include "magnomech/params.hpp"
#include "magnomech/pipeline.hpp"
#include "magnomech/worker_pool.hpp"

namespace magnomech {

// Output columns, declared in canonical CSV order.
enum class Quantity { e_nm, e_mb, e_nb, n_nm, n_mb, n_nb, stability_margin };

inline constexpr std::array<Quantity, 7> all_quantities{
    Quantity::e_nm, Quantity::e_mb, Quantity::e_nb, Quantity::n_nm,
    Quantity::n_mb, Quantity::n_nb, Quantity::stability_margin};

inline std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::e_nm: return "e_nm";
    case Quantity::e_mb: return "e_mb";
    case Quantity::e_nb: return "e_nb";
    case Quantity::n_nm: return "n_nm";
    case Quantity::n_mb: return "n_mb";
    case Quantity::n_nb: return "n_nb";
    case Quantity::stability_margin: return "stability_margin";
  }
  return "?";
}

inline Quantity parse_quantity(std::string_view name) {
  for (Quantity q : all_quantities)
    if (quantity_name(q) == name) return q;
  throw InvalidSpec("unknown quantity '" + std::string(name) + "'");
}

inline bool is_negativity(Quantity q) {
  return q == Quantity::e_nm || q == Quantity::e_mb || q == Quantity::e_nb;
}
inline bool is_contrast(Quantity q) {
  return q == Quantity::n_nm || q == Quantity::n_mb || q == Quantity::n_nb;
}
inline Pair quantity_pair(Quantity q) {
  switch (q) {
    case Quantity::e_nm:
    case Quantity::n_nm: return Pair::nm;
    case Quantity::e_mb:
    case Quantity::n_mb: return Pair::mb;
    default: return Pair::nb;
  }
}

// ---------------------------------------------------------------------------
// Axes

// Parameters that can be swept.
inline constexpr std::array<std::string_view, 7> sweepable_parameters{
    "delta_n", "delta_m_eff", "delta_B", "chi", "beta", "coupling_G", "temperature"};

// Units in which axis values are expressed. Reference quantities (omega_b,
// kappa_n, coupling_J) are read from the sweep's base parameters.
inline constexpr std::array<std::string_view, 8> axis_units{
    "omega_b", "kappa_n", "coupling_J", "hz", "rad_s", "pi", "rad", "kelvin"};

struct Axis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 2;
  std::string unit;                 // empty = default unit for the parameter
  std::string scale = "linear";

  // Grid value i, exact at both endpoints.
  double value(int i) const {
    if (i == count - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

inline std::string default_unit(std::string_view parameter) {
  if (parameter == "beta") return "rad";
  if (parameter == "temperature") return "kelvin";
  return "hz";
}

inline std::string resolved_unit(const Axis& axis) {
  return axis.unit.empty() ? default_unit(axis.parameter) : axis.unit;
}

// CSV header for an axis column, e.g. "delta_n[omega_b]".
inline std::string axis_label(const Axis& axis) {
  return axis.parameter + "[" + resolved_unit(axis) + "]";
}

inline double unit_factor(std::string_view unit, const SystemParams& base) {
  if (unit == "omega_b") return base.omega_b;
  if (unit == "kappa_n") return base.kappa_n;
  if (unit == "coupling_J") return base.coupling_J;
  if (unit == "hz") return two_pi;
  if (unit == "pi") return std::numbers::pi;
  if (unit == "rad_s" || unit == "rad" || unit == "kelvin") return 1.0;
  throw InvalidSpec("unknown axis unit '" + std::string(unit) + "'");
}

inline void validate_axis(const Axis& axis, const SystemParams& base) {
  if (std::find(sweepable_parameters.begin(), sweepable_parameters.end(), axis.parameter) ==
      sweepable_parameters.end())
    throw InvalidSpec("parameter '" + axis.parameter + "' cannot be swept");
  if (axis.scale != "linear") throw InvalidSpec("only linear axis scale is supported");
  if (axis.count < 2) throw InvalidSpec("axis '" + axis.parameter + "' needs count >= 2");
  if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
    throw InvalidSpec("axis '" + axis.parameter + "' has non-finite bounds");

  const std::string unit = resolved_unit(axis);
  if (std::find(axis_units.begin(), axis_units.end(), unit) == axis_units.end())
    throw InvalidSpec("unknown axis unit '" + unit + "'");
  const bool angle = axis.parameter == "beta";
  const bool temp = axis.parameter == "temperature";
  const bool angle_unit = unit == "pi" || unit == "rad";
  const bool temp_unit = unit == "kelvin";
  if (angle != angle_unit || temp != temp_unit)
    throw InvalidSpec("unit '" + unit + "' does not apply to '" + axis.parameter + "'");

  if (axis.parameter == "delta_m_eff" || axis.parameter == "coupling_G") {
    if (!base.effective())
      throw InvalidSpec("'" + axis.parameter + "' can only be swept with an effective drive");
  }
  if (axis.parameter == "chi" || axis.parameter == "coupling_G" || axis.parameter == "temperature") {
    if (std::min(axis.start, axis.stop) < 0.0)
      throw InvalidSpec("axis '" + axis.parameter + "' must stay non-negative");
  }
}

// Sets the swept parameter to `value` expressed in the axis unit.
inline void apply_axis(SystemParams& p, const Axis& axis, double value, const SystemParams& base) {
  const double x = value * unit_factor(resolved_unit(axis), base);
  const std::string& name = axis.parameter;
  if (name == "delta_n") p.delta_n = x;
  else if (name == "delta_m_eff") p.delta_m_eff = x;
  else if (name == "delta_B") p.delta_B = x;
  else if (name == "chi") p.chi = x;
  else if (name == "beta") p.beta = x;
  else if (name == "temperature") p.temperature = x;
  else if (name == "coupling_G") std::get<EffectiveDrive>(p.drive).coupling_G = x;
  else throw InvalidSpec("parameter '" + name + "' cannot be swept");
}

// ---------------------------------------------------------------------------
// Spec and result

struct SweepSpec {
  SystemParams base;
  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<Quantity> quantities;
  bool nonrecip_pairing = false;

  std::size_t size() const {
    return static_cast<std::size_t>(axis1.count) *
           static_cast<std::size_t>(axis2 ? axis2->count : 1);
  }
};

// Requested quantities in canonical order, without duplicates.
inline std::vector<Quantity> canonical_quantities(const std::vector<Quantity>& qs) {
  std::vector<Quantity> out;
  for (Quantity q : all_quantities)
    if (std::find(qs.begin(), qs.end(), q) != qs.end()) out.push_back(q);
  return out;
}

inline void validate_spec(const SweepSpec& spec) {
  validate(spec.base);
  validate_axis(spec.axis1, spec.base);
  if (spec.axis2) {
    validate_axis(*spec.axis2, spec.base);
    if (spec.axis2->parameter == spec.axis1.parameter)
      throw InvalidSpec("both axes sweep '" + spec.axis1.parameter + "'");
  }
  if (spec.quantities.empty()) throw InvalidSpec("empty quantity set");
  for (Quantity q : spec.quantities)
    if (is_contrast(q) && !spec.nonrecip_pairing)
      throw InvalidSpec("quantity '" + std::string(quantity_name(q)) +
                        "' requires nonreciprocity pairing");
}

enum class PointStatus { ok, unstable, nonconverged };

inline std::string_view status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::unstable: return "unstable";
    case PointStatus::nonconverged: return "nonconverged";
  }
  return "?";
}

struct SweepRow {
  std::array<double, 2> axis{0.0, 0.0};  // in axis units; [1] only with axis2
  PointStatus status = PointStatus::ok;
  std::optional<double> margin;          // max over branches when paired
  std::optional<PairResult> primary;     // signed delta_B, or +|delta_B| when paired
  std::optional<PairResult> mirror;      // -|delta_B| when paired
  double min_symplectic = std::numeric_limits<double>::quiet_NaN();
  double max_residual = std::numeric_limits<double>::quiet_NaN();

  std::optional<double> contrast(Pair p) const {
    if (status != PointStatus::ok || !primary || !mirror) return std::nullopt;
    return contrast_ratio(primary->e(p), mirror->e(p));
  }
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // row-major: axis1 outer, axis2 inner
};

struct SweepOptions {
  unsigned workers = default_worker_count();
  // Optional evaluation order (a permutation of grid indices). Only affects
  // scheduling; the result table is indexed by grid position.
  std::vector<std::size_t> order;
};

// Parameters at grid index k (row-major).
inline SystemParams point_params(const SweepSpec& spec, std::size_t k, std::array<double, 2>& axis) {
  const std::size_t n2 = spec.axis2 ? static_cast<std::size_t>(spec.axis2->count) : 1;
  const int i1 = static_cast<int>(k / n2);
  const int i2 = static_cast<int>(k % n2);
  SystemParams p = spec.base;
  axis[0] = spec.axis1.value(i1);
  apply_axis(p, spec.axis1, axis[0], spec.base);
  if (spec.axis2) {
    axis[1] = spec.axis2->value(i2);
    apply_axis(p, *spec.axis2, axis[1], spec.base);
  }
  return p;
}

inline SweepRow evaluate_row(const SweepSpec& spec, std::size_t k) {
  SweepRow row;
  const SystemParams p = point_params(spec, k, row.axis);

  auto run = [&](const SystemParams& q, std::optional<PairResult>& slot) -> bool {
    try {
      const PointEvaluation ev = evaluate_point(q);
      row.margin = row.margin ? std::max(*row.margin, ev.margin) : ev.margin;
      slot = ev.pairs;
      row.min_symplectic = std::isnan(row.min_symplectic)
                               ? ev.min_symplectic
                               : std::min(row.min_symplectic, ev.min_symplectic);
      row.max_residual = std::isnan(row.max_residual) ? ev.residual
                                                      : std::max(row.max_residual, ev.residual);
      return true;
    } catch (const Unstable& u) {
      row.status = PointStatus::unstable;
      row.margin = row.margin ? std::max(*row.margin, u.margin()) : u.margin();
    } catch (const SingularSystem&) {
      // Only reachable on the stability boundary itself.
      row.status = PointStatus::unstable;
      row.margin = std::max(row.margin.value_or(0.0), 0.0);
    } catch (const NonConvergence&) {
      row.status = PointStatus::nonconverged;
    }
    return false;
  };

  if (spec.nonrecip_pairing) {
    const double mag = std::abs(p.delta_B);
    const bool plus_ok = run(with_delta_B(p, +mag), row.primary);
    const bool minus_ok = run(with_delta_B(p, -mag), row.mirror);
    if (!plus_ok || !minus_ok) {
      // Keep the margin of an unstable leg even if the other leg was fine.
      if (row.status == PointStatus::nonconverged) row.margin.reset();
      row.primary.reset();
      row.mirror.reset();
    }
  } else {
    if (!run(p, row.primary)) {
      if (row.status == PointStatus::nonconverged) row.margin.reset();
      row.primary.reset();
    }
  }
  if (row.status != PointStatus::ok) {
    row.min_symplectic = std::numeric_limits<double>::quiet_NaN();
    row.max_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

inline SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opt = {}) {
  validate_spec(spec);
  SweepResult result;
  result.spec = spec;
  result.spec.quantities = canonical_quantities(spec.quantities);

  const std::size_t n = spec.size();
  if (!opt.order.empty()) {
    std::vector<std::size_t> sorted = opt.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < n; ++k)
      if (sorted.size() != n || sorted[k] != k)
        throw InvalidSpec("evaluation order is not a permutation of the grid");
  }

  result.rows.resize(n);
  parallel_for(n, opt.workers, [&](std::size_t i) {
    const std::size_t k = opt.order.empty() ? i : opt.order[i];
    result.rows[k] = evaluate_row(spec, k);
  });
  return result;
}

// Value of a quantity in a row; empty for missing values.
inline std::optional<double> row_value(const SweepRow& row, Quantity q, int branch = +1) {
  if (q == Quantity::stability_margin) return row.margin;
  if (row.status != PointStatus::ok) return std::nullopt;
  if (is_contrast(q)) return row.contrast(quantity_pair(q));
  const auto& src = branch < 0 ? row.mirror : row.primary;
  if (!src) return std::nullopt;
  return src->e(quantity_pair(q));
}

}  // namespace magnomech
