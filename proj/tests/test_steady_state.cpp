#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "magnomech/params.hpp"
#include "magnomech/steady_state.hpp"

using namespace magnomech;

namespace {

// m_s evaluated directly from its defining expression.
cplx magnon_formula(const SystemParams& p, double eps, double dm) {
  const cplx i{0, 1};
  return eps * (i * p.delta_n + p.kappa_n) /
         (p.coupling_J * p.coupling_J + (i * p.delta_n + p.kappa_n) * (i * (dm + p.delta_B) + p.kappa_m));
}

SystemParams microscopic(double g0, double eps) {
  SystemParams p = baseline_params();
  p.delta_n = p.omega_b;
  p.drive = MicroscopicDrive{g0, eps, p.omega_b};
  return p;
}

}  // namespace

TEST(SteadyStateEffective, CouplingPassesThroughWithoutG0) {
  const SystemParams p = baseline_params();
  const SteadyState s = solve_steady_state(p);
  EXPECT_EQ(s.iterations, 0);
  EXPECT_FALSE(s.m_s.has_value());
  EXPECT_FALSE(s.n_s.has_value());
  EXPECT_EQ(s.q_s, 0.0);
  EXPECT_EQ(s.p_s, 0.0);
  EXPECT_EQ(s.coupling_G_eff, cplx(std::get<EffectiveDrive>(p.drive).coupling_G, 0.0));
  EXPECT_EQ(s.delta_m_eff, p.delta_m_eff);
}

TEST(SteadyStateEffective, G0GivesPurelyImaginaryMagnonAmplitude) {
  SystemParams p = baseline_params();
  auto& drive = std::get<EffectiveDrive>(p.drive);
  drive.g0 = from_hz(0.2);
  const SteadyState s = solve_steady_state(p);
  ASSERT_TRUE(s.m_s.has_value());
  EXPECT_EQ(s.m_s->real(), 0.0);
  const cplx g_eff = std::numbers::sqrt2 * cplx(0, 1) * drive.g0 * *s.m_s;
  EXPECT_NEAR(g_eff.real(), drive.coupling_G, 1e-6 * drive.coupling_G);
  EXPECT_NEAR(g_eff.imag(), 0.0, 1e-9 * drive.coupling_G);
  EXPECT_DOUBLE_EQ(s.q_s, -drive.g0 * std::norm(*s.m_s) / p.omega_b);
  ASSERT_TRUE(s.n_s.has_value());
}

TEST(SteadyStateMicroscopic, UndrivenSystemIsAtRest) {
  const SteadyState s = solve_steady_state(microscopic(from_hz(0.2), 0.0));
  ASSERT_TRUE(s.m_s.has_value());
  EXPECT_EQ(*s.m_s, cplx(0, 0));
  EXPECT_EQ(s.q_s, 0.0);
  EXPECT_EQ(s.coupling_G_eff, cplx(0, 0));
  EXPECT_EQ(s.p_s, 0.0);
}

TEST(SteadyStateMicroscopic, NoFeedbackConvergesInOneIteration) {
  const SystemParams p = microscopic(0.0, 7.1e14);
  const SteadyState s = solve_steady_state(p);
  EXPECT_EQ(s.iterations, 1);
  EXPECT_EQ(s.q_s, 0.0);
  EXPECT_EQ(*s.m_s, magnon_formula(p, 7.1e14, p.omega_b));
}

TEST(SteadyStateMicroscopic, SatisfiesItsDefiningEquations) {
  for (double dn : {-1.3, -1.0, 1.0, 1.3}) {
    for (double dm : {0.8, 1.0, 1.2}) {
      SystemParams p = baseline_microscopic_params();
      p.delta_n = dn * p.omega_b;
      std::get<MicroscopicDrive>(p.drive).delta_m_bare = dm * p.omega_b;
      const auto& d = std::get<MicroscopicDrive>(p.drive);
      const SteadyState s = solve_steady_state(p);
      ASSERT_TRUE(s.m_s.has_value());
      const cplx m_expected = magnon_formula(p, d.epsilon_l, s.delta_m_eff);
      EXPECT_LT(std::abs(*s.m_s - m_expected) / std::abs(m_expected), 1e-10);
      const double q_expected = -d.g0 * std::norm(*s.m_s) / p.omega_b;
      EXPECT_LT(std::abs(s.q_s - q_expected) / std::abs(q_expected), 1e-10);
      const double dm_expected = d.delta_m_bare + d.g0 * s.q_s;
      EXPECT_LT(std::abs(s.delta_m_eff - dm_expected) / std::abs(dm_expected), 1e-10);
      EXPECT_EQ(s.p_s, 0.0);
      const cplx g_expected = std::numbers::sqrt2 * cplx(0, 1) * d.g0 * *s.m_s;
      EXPECT_LT(std::abs(s.coupling_G_eff - g_expected), 1e-12 * std::abs(g_expected));
    }
  }
}

TEST(SteadyStateMicroscopic, FeedbackShiftsMagnonDetuningDownward) {
  const SystemParams p = baseline_microscopic_params();
  const SteadyState s = solve_steady_state(p);
  EXPECT_LT(s.q_s, 0.0);
  EXPECT_LT(s.delta_m_eff, std::get<MicroscopicDrive>(p.drive).delta_m_bare);
  EXPECT_GT(s.iterations, 1);
}

TEST(SteadyStateMicroscopic, IterationCapRaisesNonConvergence) {
  FixedPointOptions opt;
  opt.max_iterations = 2;
  EXPECT_THROW(solve_steady_state(baseline_microscopic_params(), opt), NonConvergence);
}

TEST(SteadyStateMicroscopic, RunawayDriveRaisesNonConvergence) {
  SystemParams p = baseline_microscopic_params();
  // Drive inside the bistable window: the relaxed iteration keeps hopping.
  std::get<MicroscopicDrive>(p.drive).epsilon_l = 1e16;
  FixedPointOptions opt;
  opt.max_iterations = 10000;
  EXPECT_THROW(solve_steady_state(p, opt), NonConvergence);
}

// Drive calibration quoted with the baseline: g/2pi = 0.2 Hz and
// epsilon_l = 7.1e14 /s give |G|/2pi = 4.8 MHz (+-15%) with delta_n and the
// effective magnon detuning both at omega_b.
TEST(SteadyStateMicroscopic, QuotedDriveCalibration) {
  SystemParams p = baseline_microscopic_params();
  p.delta_n = p.omega_b;
  auto& d = std::get<MicroscopicDrive>(p.drive);
  // Bare detuning chosen so that the converged effective detuning is omega_b.
  const cplx m = magnon_formula(p, d.epsilon_l, p.omega_b);
  d.delta_m_bare = p.omega_b + d.g0 * d.g0 * std::norm(m) / p.omega_b;
  const SteadyState s = solve_steady_state(p);
  EXPECT_NEAR(s.delta_m_eff, p.omega_b, 1e-9 * p.omega_b);
  const double g_mhz = to_hz(s.coupling()) / 1e6;
  EXPECT_NEAR(g_mhz, 4.8, 0.15 * 4.8) << "|G_eff|/2pi = " << g_mhz << " MHz";
}

TEST(SteadyStateMicroscopic, SimplifiedFormAtLargeDetuning) {
  SystemParams p = baseline_microscopic_params();
  p.kappa_n = p.kappa_m = 1e-4 * p.omega_b;
  p.delta_n = -1.3 * p.omega_b;
  const double eps = 7.1e14;
  const double dm = 0.9 * p.omega_b;
  const cplx full = magnon_formula(p, eps, dm);
  const cplx simple = magnon_amplitude_simplified(p, eps, dm);
  EXPECT_LT(std::abs(full - simple) / std::abs(full), 1e-3);
  // Purely imaginary in that limit.
  EXPECT_LT(std::abs(full.real()) / std::abs(full), 1e-3);
}

TEST(SteadyStateMicroscopic, CavityAmplitudeFollowsPrintedForm) {
  const SystemParams p = baseline_microscopic_params();
  const SteadyState s = solve_steady_state(p);
  const cplx i{0, 1};
  const cplx expected = -p.coupling_J * *s.m_s * (p.delta_n + 2.0 * i * p.chi * std::exp(i * p.beta)) /
                        (p.delta_n * p.delta_n - 4.0 * p.chi * p.chi);
  ASSERT_TRUE(s.n_s.has_value());
  EXPECT_LT(std::abs(*s.n_s - expected), 1e-12 * std::abs(expected));
}

TEST(Validate, RejectsNonPositiveRates) {
  SystemParams p = baseline_params();
  p.kappa_n = 0.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = baseline_params();
  p.gamma_b = -1.0;
  EXPECT_THROW(validate(p), ConfigError);
  p = baseline_params();
  p.chi = -0.1;
  EXPECT_THROW(validate(p), ConfigError);
  p = baseline_params();
  p.temperature = -1e-3;
  EXPECT_THROW(validate(p), ConfigError);
  p = baseline_params();
  std::get<EffectiveDrive>(p.drive).coupling_G = -1.0;
  EXPECT_THROW(validate(p), ConfigError);
}

TEST(Validate, WarnsOnLowMechanicalQuality) {
  SystemParams p = baseline_params();
  EXPECT_TRUE(validate(p).empty());
  p.gamma_b = p.omega_b / 100.0;
  EXPECT_EQ(validate(p).size(), 1u);
}
