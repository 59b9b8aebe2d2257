#include "mpfock/metaplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace mpfock {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool finite(const DisentangledFactors& f) {
  return finite(f.prefactor) && finite(f.plus_exponent) && finite(f.h_exponent) &&
         finite(f.minus_exponent);
}

// Factors of exp(k H + B a+^2 + C a^2) for Delta^2 = k^2 - 4BC. Both ratios
// below are even in Delta, so the branch of the square root does not matter.
DisentangledFactors factors_for(cplx k, cplx b, cplx c, cplx prefactor) {
  const cplx delta = std::sqrt(k * k - 4.0 * b * c);
  cplx delta_coth;  // Delta coth Delta
  cplx sech;
  cplx tanh_over_delta;
  if (std::abs(delta) < kDegenerateDelta) {
    const cplx d2 = delta * delta;
    const cplx d4 = d2 * d2;
    delta_coth = 1.0 + d2 / 3.0 - d4 / 45.0;
    sech = 1.0 - d2 / 2.0 + 5.0 * d4 / 24.0;
    tanh_over_delta = 1.0 - d2 / 3.0 + 2.0 * d4 / 15.0;
  } else {
    const cplx t = std::tanh(delta);
    delta_coth = delta / t;
    sech = 1.0 / std::cosh(delta);
    tanh_over_delta = t / delta;
  }
  const cplx denom = delta_coth - k;
  DisentangledFactors f;
  f.prefactor = prefactor;
  f.plus_exponent = b / denom;
  f.minus_exponent = c / denom;
  f.h_exponent = std::log(sech / (1.0 - k * tanh_over_delta));
  return f;
}

double deviation_or_inf(const DisentangledFactors& f, const FockOperator& oracle, int dim,
                        int margin) {
  if (!finite(f)) return std::numeric_limits<double>::infinity();
  try {
    return scaled_interior_deviation(reassemble(f, dim), oracle, margin);
  } catch (const NumericError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::string to_string(BchBranch b) { return b == BchBranch::published ? "published" : "substituted"; }

DisentangledFactors published_factors(const BchCoefficients& c) {
  return factors_for(c.a, c.b, c.c, std::exp(-c.a / 2.0));
}

DisentangledFactors standard_factors(const BchCoefficients& c) {
  return factors_for(2.0 * c.a, c.b, c.c, cplx(1.0, 0.0));
}

FockOperator bch_exponent(const BchCoefficients& c, int dim) {
  const FockOperator a = annihilator(dim);
  const FockOperator ad = a.adjoint();
  return c.a * (a * ad + ad * a) + c.b * (ad * ad) + c.c * (a * a);
}

FockOperator h_operator(int dim) {
  CVector d(dim);
  for (int n = 0; n < dim; ++n) d[n] = n + 0.5;
  return FockOperator::diagonal(d);
}

FockOperator reassemble(const DisentangledFactors& f, int dim) {
  const FockOperator a = annihilator(dim);
  const FockOperator ad = a.adjoint();
  CVector middle(dim);
  for (int n = 0; n < dim; ++n) middle[n] = std::exp(f.h_exponent * (n + 0.5));
  return f.prefactor * (matrix_exp(f.plus_exponent * (ad * ad)) *
                        FockOperator::diagonal(middle) *
                        matrix_exp(f.minus_exponent * (a * a)));
}

FockOperator padded_exp_oracle(const BchCoefficients& c, int dim) {
  return leading_block(matrix_exp(bch_exponent(c, 3 * dim)), dim);
}

double scaled_interior_deviation(const FockOperator& product, const FockOperator& oracle,
                                 int margin) {
  const double scale = std::max(1.0, interior_max_abs(oracle, margin));
  return interior_equal(product, oracle, margin, 0.0).max_deviation / scale;
}

DisentangleError::DisentangleError(DisentangleReport report)
    : ValidationError("disentangling failed oracle validation on both branches"),
      report_(std::move(report)) {}

DisentangleReport bch_disentangle(const BchCoefficients& c, const TruncationConfig& cfg) {
  cfg.validate();
  for (cplx z : {c.a, c.b, c.c})
    if (!finite(z)) throw NumericError("bch_disentangle: non-finite coefficient");

  DisentangleReport r;
  r.input = c;
  r.delta = std::sqrt(c.a * c.a - 4.0 * c.b * c.c);
  r.degenerate = std::abs(r.delta) < kDegenerateDelta;
  r.published = published_factors(c);
  r.substituted = standard_factors(c);

  const FockOperator oracle = padded_exp_oracle(c, cfg.dim);
  r.published_deviation = deviation_or_inf(r.published, oracle, cfg.dim, cfg.interior_margin);
  if (r.published_deviation <= cfg.tol) {
    r.branch_used = BchBranch::published;
    r.substituted_deviation =
        deviation_or_inf(r.substituted, oracle, cfg.dim, cfg.interior_margin);
    return r;
  }
  r.substituted_deviation = deviation_or_inf(r.substituted, oracle, cfg.dim, cfg.interior_margin);
  r.branch_used = BchBranch::substituted;
  if (r.substituted_deviation <= cfg.tol) return r;
  throw DisentangleError(std::move(r));
}

FockOperator squeeze_from_physics(const PhysicalParams& params, const TruncationConfig& cfg) {
  cfg.validate();
  if (params.critical()) {
    throw DomainError(
        "squeeze operator is singular at m^2 = eps^2; use the disk-edge limit scan instead");
  }
  const int n = cfg.dim;
  const FockOperator a = annihilator(n);
  const FockOperator ad = a.adjoint();
  const cplx gap = params.mass_gap();
  const cplx quarter = std::pow(gap, -0.25);
  const cplx log_scale = std::log(1.0 / std::sqrt(gap));
  const cplx plus = params.p / (params.m + params.eps);
  const cplx minus = -params.p / (params.m - params.eps);
  return matrix_exp(plus * (ad * ad)) * (quarter * matrix_exp(log_scale * number_operator(n))) *
         matrix_exp(minus * (a * a));
}

Su11Coefficients fit_conjugation(const FockOperator& s, const FockOperator& x,
                                 const TruncationConfig& cfg) {
  cfg.validate();
  require_same_dim(s.dim(), cfg.dim, "fit_conjugation");
  require_same_dim(x.dim(), cfg.dim, "fit_conjugation");
  const int n = cfg.dim;
  // A truncated exponential is only trustworthy well away from the edge, so
  // the fit uses a leading quarter of the interior.
  const int interior = cfg.interior_end();
  const int probe = std::clamp(interior / 4, std::min(4, interior), n - 1);

  const FockOperator a = annihilator(n);
  const FockOperator ad = a.adjoint();
  const CMatrix lhs = (s * x).matrix().topLeftCorner(probe, probe);
  const CMatrix va = (a * s).matrix().topLeftCorner(probe, probe);
  const CMatrix vad = (ad * s).matrix().topLeftCorner(probe, probe);

  const Eigen::Index rows = static_cast<Eigen::Index>(probe) * probe;
  CMatrix design(rows, 2);
  design.col(0) = va.reshaped();
  design.col(1) = vad.reshaped();
  const CVector rhs = lhs.reshaped();
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    return {cplx(0.0, 0.0), cplx(0.0, 0.0), std::numeric_limits<double>::infinity(), probe};
  }

  Eigen::Vector2d scale;
  for (int j = 0; j < 2; ++j) {
    scale[j] = design.col(j).norm();
    if (scale[j] == 0.0) scale[j] = 1.0;
    design.col(j) /= scale[j];
  }
  const CVector sol = design.colPivHouseholderQr().solve(rhs);
  const double residual = (design * sol - rhs).norm() / rhs_norm;
  return {sol[0] / scale[0], sol[1] / scale[1], residual, probe};
}

Su11Coefficients extract_bogoliubov(const FockOperator& s, const TruncationConfig& cfg) {
  Su11Coefficients out = fit_conjugation(s, annihilator(cfg.dim), cfg);
  if (!(out.residual <= cfg.tol)) {
    throw ValidationError("not a Bogoliubov transformation: projection residual " +
                          std::to_string(out.residual));
  }
  return out;
}

double covering_half_width(CoveringLevel level) {
  constexpr double pi = std::numbers::pi;
  switch (level) {
    case CoveringLevel::Mp2:
      return 8.0 * pi;
    case CoveringLevel::Sp2R_or_SU11:
      return 4.0 * pi;
    case CoveringLevel::SO12:
      return 2.0 * pi;
  }
  return 8.0 * pi;
}

double reduce_angle(double x, double half_width) {
  const double period = 2.0 * half_width;
  const double k = std::floor((half_width - x) / period);
  double y = x + k * period;
  // guard the open end against rounding in the floor argument
  if (y <= -half_width) y += period;
  if (y > half_width) y -= period;
  return y;
}

CoveringParameter normalize_covering(const CoveringParameter& p) {
  CoveringParameter out = p;
  out.alpha3 = reduce_angle(p.alpha3, covering_half_width(p.level));
  return out;
}

const FockOperator& GeneratorTriple::operator[](int i) const {
  switch (i) {
    case 1:
      return g1;
    case 2:
      return g2;
    case 3:
      return g3;
  }
  throw ConfigError("generator index must be 1, 2 or 3");
}

GeneratorTriple metaplectic_generators(const TruncationConfig& cfg) {
  const auto [a, ad] = make_ladder(cfg);
  const FockOperator a2 = a * a;
  const FockOperator ad2 = ad * ad;
  return {cplx(0.0, 0.25) * (ad2 - a2), cplx(-0.25, 0.0) * (ad2 + a2),
          cplx(-0.25, 0.0) * (a * ad + ad * a)};
}

std::array<Matrix2c, 3> sigma_matrices() {
  Matrix2c s1, s2, s3;
  s1 << 0.0, kI, kI, 0.0;
  s2 << 0.0, 1.0, -1.0, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  return {s1, s2, s3};
}

GeneratorTriple sannikov_generators(const TruncationConfig& cfg) {
  const auto [a, ad] = make_ladder(cfg);
  const auto [s1, s2, s3] = sigma_matrices();
  const std::array<Matrix2c, 3> metrics = {Matrix2c(0.25 * s3 * s1), Matrix2c(-0.25 * s3 * s2),
                                           Matrix2c(-0.25 * s3 * s3)};
  // u = (a+, a), v = (a, a+)^T
  const std::array<const FockOperator*, 2> u = {&ad, &a};
  const std::array<const FockOperator*, 2> v = {&a, &ad};
  std::array<FockOperator, 3> out;
  for (int i = 0; i < 3; ++i) {
    FockOperator sum(cfg.dim);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) sum = sum + metrics[i](r, c) * (*u[r] * *v[c]);
    out[i] = sum;
  }
  return {out[0], out[1], out[2]};
}

Matrix2c half_commutator(const Matrix2c& x, const Matrix2c& y) { return 0.5 * (x * y - y * x); }

double defining_relation_deviation(const FockOperator& gen, int i, int alpha,
                                   const TruncationConfig& cfg) {
  cfg.validate();
  if (i < 1 || i > 3 || alpha < 1 || alpha > 2) throw ConfigError("index out of range");
  const SpinorOperator comps = make_spinor(cfg);
  const Matrix2c sigma = sigma_matrices()[i - 1];
  FockOperator rhs(cfg.dim);
  for (int beta = 1; beta <= 2; ++beta)
    rhs = rhs + (0.5 * sigma(alpha - 1, beta - 1)) * comps.component(beta);
  const FockOperator lhs = commutator(gen, comps.component(alpha));
  return interior_equal(lhs, rhs, cfg.interior_margin, 0.0).max_deviation;
}

DefiningRelationReport check_defining_relation(const TruncationConfig& cfg) {
  const GeneratorTriple l = sannikov_generators(cfg);
  DefiningRelationReport rep;
  for (int i = 1; i <= 3; ++i)
    for (int alpha = 1; alpha <= 2; ++alpha)
      rep.generator_deviation[i - 1][alpha - 1] = defining_relation_deviation(l[i], i, alpha, cfg);

  const auto [s1, s2, s3] = sigma_matrices();
  rep.sigma_algebra_deviation[0] = (half_commutator(s1, s2) + kI * s3).cwiseAbs().maxCoeff();
  rep.sigma_algebra_deviation[1] = (half_commutator(s3, s1) - kI * s2).cwiseAbs().maxCoeff();
  rep.sigma_algebra_deviation[2] = (half_commutator(s2, s3) - kI * s1).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace mpfock
