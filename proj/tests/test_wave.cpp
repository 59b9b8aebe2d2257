#include <gtest/gtest.h>

#include "mpfock/bargmann.hpp"
#include "mpfock/error.hpp"
#include "mpfock/wave_equation.hpp"
#include "oracles.hpp"

using namespace mpfock;

namespace {

const TruncationConfig kCfg{64, 1e-8, 2};

// Coefficients of p = 0.5, m = 5, eps = 3 with thermal fiducial coefficients,
// from direct 40-digit summation of the closed-form series.
constexpr double kGeneralSeries[] = {
    0.99607065093256386,  0.98825821148167162,  0.044020519488457149, 0.075647761007675107,
    0.0023826805102994908, 0.0052860479987131103, 0.00013594248571030744,
    0.00035684902498955703};

// Thermal solution at p = 2, m = 5, eps = 3.
constexpr double kThermalSeries[] = {0.9306048591020996,  0.80592744886765644, 0.16450925161906156,
                                     0.24676387742859234, 0.035617297764918401,
                                     0.068972600540219809};

}  // namespace

TEST(WaveMatrix, PresetConvention) {
  const WaveMatrix w = build_wave_matrix(PhysicalParams::preset(2.0, 5.0, 3.0));
  EXPECT_EQ(w(0, 0), cplx(8.0, 0.0));
  EXPECT_EQ(w(0, 1), cplx(2.0, 0.0));
  EXPECT_EQ(w(1, 0), cplx(-2.0, 0.0));
  EXPECT_EQ(w(1, 1), cplx(2.0, 0.0));
  EXPECT_EQ(raw_wave_matrix(PhysicalParams::preset(2.0, 5.0, 3.0)), -w);
}

TEST(WaveMatrix, ZeroMomentumGivesMassTimesIdentity) {
  const WaveMatrix w = build_wave_matrix(PhysicalParams::general({}, 1.5));
  EXPECT_EQ(w, WaveMatrix(1.5 * WaveMatrix::Identity()));
}

TEST(LeastSquares, VacuumAtEqualMassAndEnergy) {
  for (double m : {0.5, 1.0, 4.0}) {
    const LeastSquaresVacuum v = solve_vacuum_least_squares(PhysicalParams::preset(0.0, m, m), kCfg);
    EXPECT_LT((v.state.coeffs() - FockState::basis(64, 0).coeffs()).norm(), 1e-12);
    EXPECT_LT(v.residual, 1e-12);
  }
}

TEST(LeastSquares, RegressionResiduals) {
  // Smallest singular value of the stacked system, numpy SVD oracle.
  EXPECT_NEAR(solve_vacuum_least_squares(PhysicalParams::preset(1.0, 5.0, 3.0), kCfg).residual,
              2.1170449449960516, 1e-10);
  EXPECT_NEAR(solve_vacuum_least_squares(PhysicalParams::preset(0.5, 2.0, 1.0), kCfg).residual,
              1.0741890113113595, 1e-10);
}

TEST(LeastSquares, ResidualMatchesWaveAction) {
  const PhysicalParams p = PhysicalParams::preset(1.0, 5.0, 3.0);
  const LeastSquaresVacuum v = solve_vacuum_least_squares(p, kCfg);
  EXPECT_NEAR(apply_wave_operator(p, v.state, kCfg).residual, v.residual, 1e-10);
  EXPECT_NEAR(v.state.norm(), 1.0, 1e-14);
}

TEST(ThermalVacuum, Coefficients) {
  const VacuumCoefficients v = thermal_vacuum_coefficients(PhysicalParams::preset(0.0, 5.0, 3.0));
  EXPECT_EQ(v.a, cplx(2.0, 0.0));
  EXPECT_EQ(v.b, cplx(8.0, 0.0));
  for (const PhysicalParams& p :
       {PhysicalParams::preset(0.5, 5.0, 3.0), PhysicalParams::preset(1.0, 1.0, 2.0),
        PhysicalParams::preset(3.0, 2.0, 1.0)}) {
    const VacuumCoefficients c = thermal_vacuum_coefficients(p);
    EXPECT_EQ(c.b, c.a * c.a * c.a);
  }
}

TEST(ThermalVacuum, ADaggerSquaredAnnihilates) {
  const auto [a, ad] = make_ladder(kCfg);
  const FockState z = thermal_vacuum(PhysicalParams::preset(0.5, 5.0, 3.0), kCfg);
  EXPECT_EQ((a * (a * z)).norm(), 0.0);
  EXPECT_GT((a * z).norm(), 0.0);
  EXPECT_NEAR(thermal_vacuum(PhysicalParams::preset(0.5, 5.0, 3.0), kCfg, true).norm(), 1.0, 1e-15);
}

TEST(ThermalVacuum, DomainErrors) {
  EXPECT_THROW(thermal_vacuum_coefficients(PhysicalParams::preset(0.0, 3.0, 3.0)), DomainError);
  EXPECT_THROW(thermal_vacuum_coefficients(PhysicalParams::preset(4.0, 5.0, 3.0)), DomainError);
}

TEST(GeneralSolution, MatchesSeriesOracle) {
  const PhysicalParams p = PhysicalParams::preset(0.5, 5.0, 3.0);
  const GeneralSolution s = general_solution(p, thermal_vacuum_coefficients(p), kCfg);
  for (int k = 0; k < 8; ++k) {
    EXPECT_NEAR(s.state[k].real(), kGeneralSeries[k], 1e-14 * kGeneralSeries[k]) << k;
    EXPECT_EQ(s.state[k].imag(), 0.0);
  }
  EXPECT_GT(s.closed_vs_operator_deviation, 0.0);
}

TEST(GeneralSolution, ZeroMomentumIsFiducial) {
  const PhysicalParams p = PhysicalParams::preset(0.0, 5.0, 3.0);
  const GeneralSolution s = general_solution(p, {cplx(2.0), cplx(8.0)}, kCfg);
  EXPECT_DOUBLE_EQ(s.state[0].real(), 1.0);  // 16^{-1/4} * 2
  EXPECT_DOUBLE_EQ(s.state[1].real(), 1.0);  // 16^{-1/4} * 8 / 4
  EXPECT_EQ(s.state.coeffs().tail(62).norm(), 0.0);
}

TEST(GeneralSolution, ParityPurity) {
  const PhysicalParams p = PhysicalParams::preset(1.0, 2.0, 1.0);
  const GeneralSolution even = general_solution(p, {cplx(1.0), cplx(0.0)}, kCfg);
  const GeneralSolution odd = general_solution(p, {cplx(0.0), cplx(1.0)}, kCfg);
  for (int k = 0; k < 64; ++k) {
    const FockState& off_parity = k % 2 ? even.state : odd.state;
    EXPECT_EQ(off_parity[k], cplx(0.0)) << k;
  }
}

TEST(GeneralSolution, TruncationErrorNearTheEdge) {
  // alpha = 0.24375: the even series decays like 0.49^n, too slowly for N = 16.
  const PhysicalParams p = PhysicalParams::preset(3.9, 5.0, 3.0);
  EXPECT_THROW(general_solution(p, {cplx(1.0), cplx(0.0)}, {16, 1e-8, 2}), TruncationError);
}

TEST(ThermalSolution, ZeroMomentum) {
  const ThermalSolution s = thermal_solution(PhysicalParams::preset(0.0, 5.0, 3.0), kCfg);
  EXPECT_EQ(s.prefactor, cplx(1.0));
  EXPECT_EQ(s.bracket, cplx(1.0));
  EXPECT_EQ(s.state[0], cplx(1.0));
  EXPECT_EQ(s.state[1], cplx(1.0));
  EXPECT_EQ(s.state.coeffs().tail(62).norm(), 0.0);
}

TEST(ThermalSolution, MatchesSeriesOracle) {
  const ThermalSolution s = thermal_solution(PhysicalParams::preset(2.0, 5.0, 3.0), kCfg);
  EXPECT_NEAR(s.prefactor.real(), 0.9306048591020996, 1e-15);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(s.state[k].real(), kThermalSeries[k], 1e-14) << k;
}

TEST(ThermalSolution, PrefactorMatchesDiskParameter) {
  for (const PhysicalParams& p :
       {PhysicalParams::preset(2.0, 5.0, 3.0), PhysicalParams::preset(0.5, 5.0, 3.0),
        PhysicalParams::preset(1.0, 2.0, 1.0), PhysicalParams::preset(-1.5, 3.0, 0.5),
        PhysicalParams::preset(0.1, 1.0, -0.5)}) {
    const double w2 = omega_from_physics(p).abs2();
    EXPECT_LT(std::abs(thermal_solution(p, kCfg).prefactor - std::pow(1.0 - w2, 0.25)), 1e-12);
  }
}

TEST(SolutionParams, Alpha) {
  EXPECT_EQ(solution_params(PhysicalParams::preset(0.5, 5.0, 3.0)).alpha, cplx(0.03125));
}
