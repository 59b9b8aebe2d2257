#include "mpfock/bargmann.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include "mpfock/error.hpp"
#include "mpfock/quadrature.hpp"

namespace mpfock {

namespace {

double sqrt_factorial(int n) { return std::exp(0.5 * std::lgamma(n + 1.0)); }

void require_tail(const FockState& s, const char* what) {
  const double tail = s.tail_mass();
  if (tail > kTailLimit) {
    throw TruncationError(std::string(what) + ": tail mass " + std::to_string(tail) +
                              " exceeds limit; increase the truncation dimension",
                          tail);
  }
}

double relative_gap(cplx x, cplx y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

// Coefficients c_{2m+parity} of the Mp(2) family, without the (1-|w|^2) power.
CVector family_series(cplx omega, int parity, int dim) {
  CVector c = CVector::Zero(dim);
  if (parity >= dim) return c;
  c[parity] = 1.0;
  const cplx half = omega / 2.0;
  for (int k = parity + 2; k < dim; k += 2) {
    const int m = (k - parity) / 2;
    c[k] = c[k - 2] * half * std::sqrt(static_cast<double>(k) * (k - 1)) / static_cast<double>(m);
  }
  return c;
}

}  // namespace

int BargmannFunction::degree() const {
  for (Eigen::Index n = f_.size() - 1; n >= 0; --n)
    if (f_[n] != cplx(0.0, 0.0)) return static_cast<int>(n);
  return -1;
}

cplx BargmannFunction::operator()(cplx z) const {
  cplx acc(0.0, 0.0);
  for (Eigen::Index n = f_.size() - 1; n >= 0; --n) acc = acc * z + f_[n];
  return acc;
}

BargmannFunction to_bargmann(const FockState& phi) {
  CVector f(phi.dim());
  for (int n = 0; n < phi.dim(); ++n) f[n] = phi[n] / sqrt_factorial(n);
  return BargmannFunction(std::move(f));
}

FockState from_bargmann(const BargmannFunction& f) {
  CVector c(f.dim());
  for (int n = 0; n < f.dim(); ++n) c[n] = f.coeffs()[n] * sqrt_factorial(n);
  return FockState(std::move(c));
}

double quadrature_norm(const BargmannFunction& f, int radial_nodes, int angular_nodes) {
  if (radial_nodes < 1 || angular_nodes < 1) throw ConfigError("quadrature needs positive node counts");
  const int degree = f.degree();
  if (degree < 0) return 0.0;
  if (degree >= radial_nodes) {
    throw ConfigError("quadrature_norm: degree " + std::to_string(degree) +
                      " needs more than " + std::to_string(radial_nodes) + " radial nodes");
  }
  if (angular_nodes <= 2 * degree) {
    throw ConfigError("quadrature_norm: degree " + std::to_string(degree) + " needs more than " +
                      std::to_string(2 * degree) + " angular nodes");
  }

  const QuadratureRule rule = gauss_laguerre(radial_nodes);
  const double step = 2.0 * std::numbers::pi / angular_nodes;
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = std::sqrt(rule.nodes[i]);
    double ring = 0.0;
    for (int j = 0; j < angular_nodes; ++j) ring += std::norm(f(std::polar(r, j * step)));
    total += rule.weights[i] * ring / angular_nodes;
  }
  return total;
}

DiskParam::DiskParam(cplx omega) : w_(omega) {
  if (!(std::abs(omega) < 1.0)) {
    throw DomainError("disk parameter must satisfy |omega| < 1, got |omega| = " +
                      std::to_string(std::abs(omega)));
  }
}

FockState bg_coherent(cplx z, const TruncationConfig& cfg) {
  cfg.validate();
  CVector c(cfg.dim);
  c[0] = std::exp(-std::norm(z) / 2.0);
  for (int n = 1; n < cfg.dim; ++n) c[n] = c[n - 1] * z / std::sqrt(static_cast<double>(n));
  FockState s(std::move(c));
  require_tail(s, "bg_coherent");
  return s;
}

cplx bg_overlap(cplx z, cplx z_prime) {
  return std::exp(-std::norm(z) / 2.0 - std::norm(z_prime) / 2.0 + std::conj(z_prime) * z);
}

LadderCheck bargmann_ladder_check(const BargmannFunction& f) {
  const int n = f.dim();
  const FockState phi = from_bargmann(f);
  const FockOperator a = annihilator(n);
  const BargmannFunction raised = to_bargmann(a.adjoint() * phi);
  const BargmannFunction lowered = to_bargmann(a * phi);

  LadderCheck out;
  for (int k = 0; k + 1 < n; ++k) {
    const cplx times_z = k == 0 ? cplx(0.0, 0.0) : f.coeffs()[k - 1];
    const cplx derivative = static_cast<double>(k + 1) * f.coeffs()[k + 1];
    out.raise_deviation = std::max(out.raise_deviation, relative_gap(raised.coeffs()[k], times_z));
    out.lower_deviation =
        std::max(out.lower_deviation, relative_gap(lowered.coeffs()[k], derivative));
  }
  return out;
}

FockState mp2_even_state(const DiskParam& omega, const TruncationConfig& cfg) {
  cfg.validate();
  const double w = std::pow(1.0 - omega.abs2(), 0.25);
  FockState s(CVector(w * family_series(omega.value(), 0, cfg.dim)));
  require_tail(s, "mp2_even_state");
  return s;
}

FockState mp2_odd_state(const DiskParam& omega, const TruncationConfig& cfg) {
  cfg.validate();
  const double w = std::pow(1.0 - omega.abs2(), 0.75);
  FockState s(CVector(w * family_series(omega.value(), 1, cfg.dim)));
  require_tail(s, "mp2_odd_state");
  return s;
}

FockState mp2_full_state(const DiskParam& omega, const TruncationConfig& cfg) {
  return mp2_even_state(omega, cfg) + mp2_odd_state(omega, cfg);
}

int required_dim(const DiskParam& omega, double tail_target) {
  if (!(tail_target > 0.0)) throw ConfigError("tail target must be positive");
  const double x = omega.abs2();
  if (x == 0.0) return 2;
  const double log_quarter_x = std::log(x / 4.0);
  const double log_gap = std::log1p(-x);
  for (int m = 0;; ++m) {
    // log C(2m, m)
    const double log_binom = std::lgamma(2.0 * m + 1) - 2.0 * std::lgamma(m + 1.0);
    const double log_even = 0.5 * log_gap + m * log_quarter_x + log_binom;
    const double log_odd = 1.5 * log_gap + m * log_quarter_x + log_binom + std::log(2.0 * m + 1);
    // successive-level ratios in both sectors are bounded by r and decrease in m
    const double r = x * (2.0 * m + 3) / (2.0 * m + 2);
    if (r >= 1.0) continue;
    const double bound = (std::exp(log_even) + std::exp(log_odd)) / (1.0 - r);
    if (bound < tail_target) {
      const int level = 2 * m;
      int dim = static_cast<int>(std::ceil(level / kTailFraction));
      while (static_cast<int>(std::ceil(kTailFraction * dim)) < level) ++dim;
      return std::max(dim, 2);
    }
  }
}

DiskParam omega_from_physics(const PhysicalParams& params) {
  const double gap = params.m * params.m - params.eps * params.eps;
  if (!(gap > 0.0) || !(params.p * params.p < gap)) {
    throw DomainError("parameters are not subcritical (need m^2 > eps^2 and p^2 < m^2 - eps^2)");
  }
  const double modulus = std::sqrt(params.p * params.p / gap);
  const cplx alpha = cplx(params.p / 2.0, 0.0) / (params.m + params.eps);
  if (alpha == cplx(0.0, 0.0)) return DiskParam(cplx(0.0, 0.0));
  return DiskParam(modulus * alpha / std::abs(alpha));
}

NumberDistribution number_distribution(const FockState& psi) {
  const double total = psi.norm_squared();
  if (!(total > 0.0)) throw DomainError("number distribution of the zero state is undefined");
  NumberDistribution d;
  d.probability.resize(psi.dim());
  double even = 0.0;
  double odd = 0.0;
  for (int n = 0; n < psi.dim(); ++n) {
    const double p = std::norm(psi[n]) / total;
    d.probability[n] = p;
    d.mean += n * p;
    (n % 2 == 0 ? even : odd) += p;
  }
  for (int n = 0; n < psi.dim(); ++n) {
    const double dev = n - d.mean;
    d.variance += dev * dev * d.probability[n];
  }
  d.mandel_q = d.mean > 0.0 ? (d.variance - d.mean) / d.mean
                            : std::numeric_limits<double>::quiet_NaN();
  d.odd_even_ratio = even > 0.0 ? odd / even : std::numeric_limits<double>::infinity();
  return d;
}

namespace {

ScanPoint scan_point(const DiskParam& omega, const TruncationConfig& cfg, const ScanOptions& opt) {
  TruncationConfig local = cfg;
  if (opt.scale_dim) local.dim = std::max(cfg.dim, required_dim(omega, opt.tail_target));
  if (local.interior_margin >= local.dim) local.interior_margin = 0;

  const FockState psi = mp2_full_state(omega, local);
  ScanPoint pt;
  pt.omega = omega.value();
  pt.dim = local.dim;
  pt.summary = number_distribution(psi);
  const auto& prob = pt.summary.probability;
  for (int m = 0; m <= opt.max_level && 2 * m + 1 < local.dim; ++m) {
    const double even = prob[2 * m];
    const double odd = prob[2 * m + 1];
    if (even <= kProbabilityFloor || odd <= kProbabilityFloor) continue;
    pt.rows.push_back({m, odd / even});
  }
  return pt;
}

}  // namespace

std::vector<ScanPoint> edge_limit_scan(std::span<const DiskParam> path,
                                       const TruncationConfig& cfg, const ScanOptions& opt) {
  cfg.validate();
  std::vector<std::future<ScanPoint>> jobs;
  jobs.reserve(path.size());
  for (const DiskParam& w : path)
    jobs.push_back(std::async(std::launch::async, scan_point, w, cfg, opt));
  std::vector<ScanPoint> out;
  out.reserve(path.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace mpfock
