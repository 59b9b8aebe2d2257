#include "mpfock/wave_equation.hpp"

#include <cmath>

#include "mpfock/error.hpp"
#include "mpfock/metaplectic.hpp"

namespace mpfock {

PhysicalParams PhysicalParams::preset(double p, double m, double eps) {
  PhysicalParams out;
  out.p = p;
  out.m = m;
  out.eps = eps;
  out.p_vec = {cplx(0.0, 0.0), cplx(p, 0.0), cplx(0.0, eps)};
  return out;
}

PhysicalParams PhysicalParams::general(const std::array<cplx, 3>& p_vec, double m) {
  PhysicalParams out;
  out.m = m;
  out.p_vec = p_vec;
  out.p = p_vec[1].real();
  out.eps = p_vec[2].imag();
  return out;
}

bool PhysicalParams::subcritical() const {
  return m > std::abs(eps) && p * p < std::abs(m * m - eps * eps);
}

WaveMatrix raw_wave_matrix(const PhysicalParams& params) {
  const auto& [p1, p2, p3] = params.p_vec;
  WaveMatrix w;
  w << kI * p3 - params.m, kI * p1 - p2, kI * p1 + p2, -kI * p3 - params.m;
  return w;
}

WaveMatrix build_wave_matrix(const PhysicalParams& params) { return -raw_wave_matrix(params); }

WaveAction apply_wave_operator(const PhysicalParams& params, const FockState& u,
                               const TruncationConfig& cfg) {
  cfg.validate();
  require_same_dim(u.dim(), cfg.dim, "apply_wave_operator");
  const auto [a, ad] = make_ladder(cfg);
  const WaveMatrix w = build_wave_matrix(params);
  const FockState au = a * u;
  const FockState adu = ad * u;
  WaveAction out{w(0, 0) * au + w(0, 1) * adu, w(1, 0) * au + w(1, 1) * adu, 0.0};
  out.residual = std::sqrt(out.upper.norm_squared() + out.lower.norm_squared());
  return out;
}

LeastSquaresVacuum solve_vacuum_least_squares(const PhysicalParams& params,
                                              const TruncationConfig& cfg) {
  cfg.validate();
  const int n = cfg.dim;
  const auto [a, ad] = make_ladder(cfg);
  const WaveMatrix w = build_wave_matrix(params);
  CMatrix stacked(2 * n, n);
  stacked.topRows(n) = w(0, 0) * a.matrix() + w(0, 1) * ad.matrix();
  stacked.bottomRows(n) = w(1, 0) * a.matrix() + w(1, 1) * ad.matrix();

  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  CVector v = svd.matrixV().col(n - 1);
  const double residual = svd.singularValues()[n - 1];

  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > 1e-12 * peak) {
      v *= std::conj(v[k]) / std::abs(v[k]);
      v[k] = std::abs(v[k]);
      break;
    }
  }
  return {FockState(std::move(v)), residual};
}

namespace {

double sign(double x) { return (x > 0.0) - (x < 0.0); }

void require_off_critical(const PhysicalParams& params) {
  if (params.critical()) {
    throw DomainError(
        "sign(eps^2 - m^2) is undefined on the critical surface m^2 = eps^2; use the disk-edge "
        "limit scan");
  }
}

// exp(alpha a+^2) applied to |parity>, parity in {0, 1}, by the coefficient
// recurrence c_{k+2} = c_k * alpha * sqrt((k+1)(k+2)) / ((k - parity)/2 + 1).
CVector squeeze_series(cplx alpha, int parity, int dim) {
  CVector c = CVector::Zero(dim);
  if (parity >= dim) return c;
  c[parity] = 1.0;
  for (int k = parity; k + 2 < dim; k += 2) {
    const double j = (k - parity) / 2 + 1;
    c[k + 2] = c[k] * alpha * std::sqrt(static_cast<double>(k + 1) * (k + 2)) / j;
  }
  return c;
}

void require_tail(const FockState& s, const char* what) {
  const double tail = s.tail_mass();
  if (tail > kTailLimit) {
    throw TruncationError(std::string(what) + ": tail mass " + std::to_string(tail) +
                              " exceeds limit; increase the truncation dimension",
                          tail);
  }
}

}  // namespace

VacuumCoefficients thermal_vacuum_coefficients(const PhysicalParams& params) {
  require_off_critical(params);
  const double gap = params.m * params.m - params.eps * params.eps;
  const double radicand = std::abs(gap) + params.p * params.p * sign(-gap);
  if (radicand == 0.0) throw DomainError("degenerate vacuum: radicand is exactly zero");
  const cplx a = std::pow(cplx(radicand, 0.0), 0.25);
  return {a, a * a * a};
}

FockState thermal_vacuum(const PhysicalParams& params, const TruncationConfig& cfg,
                         bool normalize) {
  cfg.validate();
  const VacuumCoefficients v = thermal_vacuum_coefficients(params);
  CVector c = CVector::Zero(cfg.dim);
  c[0] = v.a;
  c[1] = v.b;
  FockState s(std::move(c));
  return normalize ? s.normalized() : s;
}

SolutionParams solution_params(const PhysicalParams& params) {
  return {cplx(params.p / 2.0, 0.0) / (params.m + params.eps)};
}

GeneralSolution general_solution(const PhysicalParams& params, const VacuumCoefficients& v,
                                 const TruncationConfig& cfg, bool normalize) {
  cfg.validate();
  require_off_critical(params);
  const int n = cfg.dim;
  const cplx gap = params.mass_gap();
  const cplx alpha = solution_params(params).alpha;

  const cplx scale = std::pow(gap, -0.25);
  const cplx odd_weight = v.b / std::sqrt(gap);
  FockState closed(CVector(scale * (v.a * squeeze_series(alpha, 0, n) +
                                    odd_weight * squeeze_series(alpha, 1, n))));
  require_tail(closed, "general_solution");

  CVector fiducial = CVector::Zero(n);
  fiducial[0] = v.a;
  fiducial[1] = v.b;
  FockState op_route = squeeze_from_physics(params, cfg) * FockState(std::move(fiducial));

  const int k = cfg.interior_end();
  const double dev =
      (closed.coeffs().head(k) - op_route.coeffs().head(k)).cwiseAbs().maxCoeff();
  if (normalize) closed = closed.normalized();
  return {std::move(closed), std::move(op_route), dev};
}

ThermalSolution thermal_solution(const PhysicalParams& params, const TruncationConfig& cfg,
                                 bool normalize) {
  cfg.validate();
  require_off_critical(params);
  const double gap = params.m * params.m - params.eps * params.eps;
  const cplx q(1.0 + params.p * params.p * sign(-gap) / std::abs(gap), 0.0);
  const cplx prefactor = std::pow(q, 0.25);
  const cplx bracket = std::sqrt(q);
  const cplx alpha = cplx(params.p / 2.0, 0.0) / (params.m + params.eps);

  FockState s(CVector(prefactor * (squeeze_series(alpha, 0, cfg.dim) +
                                   bracket * squeeze_series(alpha, 1, cfg.dim))));
  require_tail(s, "thermal_solution");
  if (normalize) s = s.normalized();
  return {std::move(s), prefactor, bracket};
}

}  // namespace mpfock
