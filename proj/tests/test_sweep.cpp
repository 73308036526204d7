#include <algorithm>
#include <atomic>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "magnomech/sweep.hpp"

using namespace magnomech;

namespace {

Axis axis(std::string parameter, double start, double stop, int count, std::string unit) {
  Axis a;
  a.parameter = std::move(parameter);
  a.start = start;
  a.stop = stop;
  a.count = count;
  a.unit = std::move(unit);
  return a;
}

SweepSpec detuning_sweep(int count = 41) {
  SweepSpec s;
  s.base = baseline_params();
  s.axis1 = axis("delta_n", -2.0, 2.0, count, "omega_b");
  s.quantities = {Quantity::e_nm, Quantity::e_mb, Quantity::e_nb};
  return s;
}

void expect_same_rows(const SweepResult& a, const SweepResult& b) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    const SweepRow &x = a.rows[k], &y = b.rows[k];
    EXPECT_EQ(x.axis, y.axis);
    EXPECT_EQ(x.status, y.status);
    EXPECT_EQ(x.margin, y.margin);
    for (Quantity q : all_quantities)
      for (int branch : {+1, -1}) EXPECT_EQ(row_value(x, q, branch), row_value(y, q, branch));
  }
}

}  // namespace

TEST(Axis, GridIsExactAtEndpoints) {
  const Axis a = axis("beta", 0.0, 2.0, 401, "pi");
  EXPECT_EQ(a.value(0), 0.0);
  EXPECT_EQ(a.value(400), 2.0);
  EXPECT_DOUBLE_EQ(a.value(200), 1.0);
}

TEST(Axis, UnitsScaleIntoInternalValues) {
  const SystemParams base = baseline_params();
  SystemParams p = base;
  apply_axis(p, axis("delta_n", 0, 1, 2, "omega_b"), -1.3, base);
  EXPECT_DOUBLE_EQ(p.delta_n, -1.3 * base.omega_b);
  apply_axis(p, axis("chi", 0, 1, 2, "kappa_n"), 0.6, base);
  EXPECT_DOUBLE_EQ(p.chi, 0.6 * base.kappa_n);
  apply_axis(p, axis("coupling_G", 0, 1, 2, "coupling_J"), 2.0, base);
  EXPECT_DOUBLE_EQ(std::get<EffectiveDrive>(p.drive).coupling_G, 2.0 * base.coupling_J);
  apply_axis(p, axis("delta_B", 0, 1, 2, "hz"), 1e6, base);
  EXPECT_DOUBLE_EQ(p.delta_B, two_pi * 1e6);
  apply_axis(p, axis("beta", 0, 1, 2, "pi"), 0.5, base);
  EXPECT_DOUBLE_EQ(p.beta, std::numbers::pi / 2);
  apply_axis(p, axis("temperature", 0, 1, 2, ""), 1.5, base);
  EXPECT_EQ(p.temperature, 1.5);
}

TEST(Axis, Labels) {
  EXPECT_EQ(axis_label(axis("delta_n", 0, 1, 2, "omega_b")), "delta_n[omega_b]");
  EXPECT_EQ(axis_label(axis("beta", 0, 1, 2, "")), "beta[rad]");
  EXPECT_EQ(axis_label(axis("temperature", 0, 1, 2, "")), "temperature[kelvin]");
  EXPECT_EQ(axis_label(axis("chi", 0, 1, 2, "")), "chi[hz]");
}

TEST(Quantities, NamesRoundTrip) {
  for (Quantity q : all_quantities) EXPECT_EQ(parse_quantity(quantity_name(q)), q);
  EXPECT_THROW(parse_quantity("e_xx"), InvalidSpec);
}

TEST(Quantities, CanonicalOrderWithoutDuplicates) {
  const auto c = canonical_quantities({Quantity::n_nb, Quantity::e_mb, Quantity::n_nb, Quantity::e_nm});
  EXPECT_EQ(c, (std::vector<Quantity>{Quantity::e_nm, Quantity::e_mb, Quantity::n_nb}));
}

TEST(SweepSpecValidation, RejectsBadSpecs) {
  auto expect_invalid = [](SweepSpec s) { EXPECT_THROW(run_sweep(s), InvalidSpec); };
  SweepSpec s = detuning_sweep();
  s.axis1.parameter = "omega_b";
  expect_invalid(s);
  s = detuning_sweep();
  s.axis1.count = 1;
  expect_invalid(s);
  s = detuning_sweep();
  s.axis1.unit = "furlong";
  expect_invalid(s);
  s = detuning_sweep();
  s.axis1.unit = "kelvin";
  expect_invalid(s);
  s = detuning_sweep();
  s.axis1.scale = "log";
  expect_invalid(s);
  s = detuning_sweep();
  s.quantities.clear();
  expect_invalid(s);
  s = detuning_sweep();
  s.quantities = {Quantity::n_nm};
  expect_invalid(s);
  s = detuning_sweep();
  s.axis2 = s.axis1;
  expect_invalid(s);
  s = detuning_sweep();
  s.axis1 = axis("chi", -0.1, 0.9, 5, "kappa_n");
  expect_invalid(s);
  s = detuning_sweep();
  s.axis1 = axis("temperature", -1.0, 1.0, 5, "kelvin");
  expect_invalid(s);
  s = detuning_sweep();
  s.base = baseline_microscopic_params();
  s.axis1 = axis("coupling_G", 0.0, 1.0, 5, "coupling_J");
  expect_invalid(s);
  s = detuning_sweep();
  SweepOptions bad;
  bad.order = {0, 1, 1};
  EXPECT_THROW(run_sweep(s, bad), InvalidSpec);
}

TEST(Sweep, DeterministicAcrossRunsAndWorkerCounts) {
  const SweepSpec s = detuning_sweep();
  SweepOptions one;
  one.workers = 1;
  SweepOptions four;
  four.workers = 4;
  const SweepResult a = run_sweep(s, one);
  expect_same_rows(a, run_sweep(s, one));
  expect_same_rows(a, run_sweep(s, four));
}

TEST(Sweep, EvaluationOrderDoesNotMatter) {
  const SweepSpec s = detuning_sweep();
  SweepOptions shuffled;
  shuffled.workers = 3;
  shuffled.order.resize(s.size());
  std::iota(shuffled.order.begin(), shuffled.order.end(), 0);
  std::shuffle(shuffled.order.begin(), shuffled.order.end(), std::mt19937_64(67));
  expect_same_rows(run_sweep(s), run_sweep(s, shuffled));
  std::reverse(shuffled.order.begin(), shuffled.order.end());
  expect_same_rows(run_sweep(s), run_sweep(s, shuffled));
}

TEST(Sweep, RowsMatchSinglePointEvaluation) {
  const SweepSpec s = detuning_sweep(21);
  const SweepResult r = run_sweep(s);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    SystemParams p = s.base;
    p.delta_n = r.rows[k].axis[0] * p.omega_b;
    try {
      const PointEvaluation ev = evaluate_point(p);
      ASSERT_EQ(r.rows[k].status, PointStatus::ok);
      EXPECT_EQ(*r.rows[k].margin, ev.margin);
      for (Pair q : all_pairs) EXPECT_EQ(r.rows[k].primary->e(q), ev.pairs.e(q));
    } catch (const Unstable& u) {
      EXPECT_EQ(r.rows[k].status, PointStatus::unstable);
      EXPECT_EQ(*r.rows[k].margin, u.margin());
    }
  }
}

TEST(Sweep, PairingMatchesExplicitLegs) {
  SweepSpec s = detuning_sweep(17);
  s.base.delta_B = 0.3 * s.base.omega_b;
  s.nonrecip_pairing = true;
  s.quantities = {Quantity::n_nm, Quantity::n_mb, Quantity::n_nb, Quantity::e_nm};
  const SweepResult r = run_sweep(s);
  int ok = 0;
  for (const SweepRow& row : r.rows) {
    SystemParams p = s.base;
    p.delta_n = row.axis[0] * p.omega_b;
    if (row.status != PointStatus::ok) {
      EXPECT_THROW(nonrecip_all(p, p.delta_B), Unstable);
      EXPECT_FALSE(row_value(row, Quantity::n_nm).has_value());
      EXPECT_GE(*row.margin, 0.0);
      continue;
    }
    ++ok;
    const NonrecipResult nr = nonrecip_all(p, p.delta_B);
    for (Pair q : all_pairs) EXPECT_EQ(row.contrast(q), nr.n(q));
    EXPECT_EQ(row_value(row, Quantity::e_nm, +1), nr.plus.e_nm());
    EXPECT_EQ(row_value(row, Quantity::e_nm, -1), nr.minus.e_nm());
  }
  EXPECT_GT(ok, 5);
}

TEST(Sweep, UnstablePointsAreReportedNotHidden) {
  SweepSpec s = detuning_sweep(81);
  std::get<EffectiveDrive>(s.base.drive).coupling_G *= 1.5;
  const SweepResult r = run_sweep(s);
  int unstable = 0;
  for (const SweepRow& row : r.rows) {
    ASSERT_TRUE(row.margin.has_value());
    if (row.status == PointStatus::unstable) {
      ++unstable;
      EXPECT_GE(*row.margin, 0.0);
      EXPECT_FALSE(row.primary.has_value());
      for (Quantity q : {Quantity::e_nm, Quantity::e_mb, Quantity::e_nb})
        EXPECT_FALSE(row_value(row, q).has_value());
    } else {
      EXPECT_LT(*row.margin, 0.0);
    }
  }
  EXPECT_GT(unstable, 0);
  EXPECT_LT(unstable, 81);
}

TEST(Sweep, NonConvergedPointsAreReported) {
  SweepSpec s;
  s.base = baseline_microscopic_params();
  std::get<MicroscopicDrive>(s.base.drive).epsilon_l = 1e16;
  // The magnon steady state does not depend on beta.
  s.axis1 = axis("beta", 0.0, 2.0, 3, "pi");
  s.quantities = {Quantity::e_nm};
  const SweepResult r = run_sweep(s);
  for (const SweepRow& row : r.rows) {
    EXPECT_EQ(row.status, PointStatus::nonconverged);
    EXPECT_FALSE(row.margin.has_value());
    EXPECT_FALSE(row_value(row, Quantity::e_nm).has_value());
  }
}

TEST(Sweep, TwoDimensionalGridIsRowMajor) {
  SweepSpec s = detuning_sweep(5);
  s.axis2 = axis("delta_B", -0.2, 0.2, 3, "omega_b");
  const SweepResult r = run_sweep(s);
  ASSERT_EQ(r.rows.size(), 15u);
  for (std::size_t k = 0; k < 15; ++k) {
    EXPECT_EQ(r.rows[k].axis[0], s.axis1.value(static_cast<int>(k / 3)));
    EXPECT_EQ(r.rows[k].axis[1], s.axis2->value(static_cast<int>(k % 3)));
  }
}

TEST(WorkerPool, PropagatesFirstException) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 37) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(WorkerPool, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 5, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}
