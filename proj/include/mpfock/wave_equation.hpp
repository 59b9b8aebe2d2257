#pragma once

// The positive-energy wave operator acting on (a, a+) and its solution
// states: least-squares vacua, the "thermal" fiducial vacuum, the general
// squeezed solution and its thermal specialization.

#include "mpfock/fock.hpp"
#include "mpfock/params.hpp"

namespace mpfock {

using WaveMatrix = Eigen::Matrix2cd;

/// The momentum-space matrix with the raw substitution sigma^i p_i:
/// [[i p3 - m, i p1 - p2], [i p1 + p2, -i p3 - m]].
WaveMatrix raw_wave_matrix(const PhysicalParams& params);

/// Negative of raw_wave_matrix. With p_vec = (0, p, i eps) this is
/// [[eps + m, p], [-p, m - eps]].
WaveMatrix build_wave_matrix(const PhysicalParams& params);

struct WaveAction {
  FockState upper;  // row 1 of the wave matrix applied to (a, a+) |u>
  FockState lower;  // row 2
  double residual = 0.0;  // sqrt(|upper|^2 + |lower|^2)
};

WaveAction apply_wave_operator(const PhysicalParams& params, const FockState& u,
                               const TruncationConfig& cfg);

struct LeastSquaresVacuum {
  FockState state;  // unit norm, first nonzero coefficient real positive
  double residual = 0.0;
};

/// Unit-norm minimizer of the stacked 2N x N wave system (smallest right
/// singular vector).
LeastSquaresVacuum solve_vacuum_least_squares(const PhysicalParams& params,
                                              const TruncationConfig& cfg);

// Coefficients of the fiducial vector A|0> + B|1>.
struct VacuumCoefficients {
  cplx a;
  cplx b;
};

/// A = (|m^2 - eps^2| + p^2 sign(eps^2 - m^2))^{1/4} and B = A^3 (computed as
/// A*A*A). Throws DomainError on the critical surface or a zero radicand.
VacuumCoefficients thermal_vacuum_coefficients(const PhysicalParams& params);

FockState thermal_vacuum(const PhysicalParams& params, const TruncationConfig& cfg,
                         bool normalize = false);

struct SolutionParams {
  cplx alpha;  // coefficient of a+^2 in the solution exponent
};

// alpha = (p/2) / (m + eps)
SolutionParams solution_params(const PhysicalParams& params);

struct GeneralSolution {
  FockState state;           // closed-form series route
  FockState operator_route;  // squeeze_from_physics applied to the fiducial vector
  // max |closed - operator| over the interior coefficients
  double closed_vs_operator_deviation = 0.0;
};

/// (m^2-eps^2)^{-1/4} exp(alpha a+^2) [A|0> + B (m^2-eps^2)^{-1/2} |1>], with the
/// operator route attached as a diagnostic. Throws TruncationError when the
/// closed-form state's tail mass exceeds kTailLimit.
GeneralSolution general_solution(const PhysicalParams& params, const VacuumCoefficients& v,
                                 const TruncationConfig& cfg, bool normalize = false);

struct ThermalSolution {
  FockState state;
  cplx prefactor;  // q^{1/4}, q = 1 + p^2 sign(eps^2 - m^2) / |m^2 - eps^2|
  cplx bracket;    // q^{1/2}, coefficient of a+ in the bracket
};

ThermalSolution thermal_solution(const PhysicalParams& params, const TruncationConfig& cfg,
                                 bool normalize = false);

}  // namespace mpfock
