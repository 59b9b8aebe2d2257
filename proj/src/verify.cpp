#include "mpfock/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mpfock/bargmann.hpp"
#include "mpfock/error.hpp"
#include "mpfock/metaplectic.hpp"
#include "mpfock/serialize.hpp"
#include "mpfock/wave_equation.hpp"

namespace mpfock {

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "fock") return Suite::fock;
  if (name == "bch") return Suite::bch;
  if (name == "generators") return Suite::generators;
  if (name == "bargmann") return Suite::bargmann;
  if (name == "wave") return Suite::wave;
  if (name == "all") return Suite::all;
  return std::nullopt;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::fock:
      return "fock";
    case Suite::bch:
      return "bch";
    case Suite::generators:
      return "generators";
    case Suite::bargmann:
      return "bargmann";
    case Suite::wave:
      return "wave";
    case Suite::all:
      return "all";
  }
  return "all";
}

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (c.gating && !c.pass) return false;
  return true;
}

namespace {

class Recorder {
 public:
  Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  void check(std::string name, double measured, double tol) {
    out_.push_back({suite_, std::move(name), measured, tol, measured <= tol, true});
  }
  void report(std::string name, double measured, double tol = 0.0) {
    out_.push_back({suite_, std::move(name), measured, tol, measured <= tol, false});
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

std::string fmt(double x) { return format_double(x); }

constexpr double kCommutatorRounding = 1e-12;

FockState random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector c(dim);
  for (int n = 0; n < dim; ++n) c[n] = cplx(g(rng), g(rng));
  return FockState(std::move(c));
}

void fock_suite(const TruncationConfig& cfg, std::vector<CheckResult>& out) {
  Recorder r("fock", out);
  const auto [a, ad] = make_ladder(cfg);
  const int n = cfg.dim;

  // sqrt(n) * sqrt(n) carries one rounding, so "exact" means to within a few ulp of n.
  r.check("commutator [a,a+] = 1 on interior (margin 1)",
          interior_equal(commutator(a, ad), FockOperator::identity(n), 1, 0.0).max_deviation,
          kCommutatorRounding);
  r.check("a+ is the conjugate transpose of a",
          (ad.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff(), 0.0);

  const FockOperator x = 0.3 * (ad * ad - a * a);
  r.check("matrix_exp(X) matrix_exp(-X) = 1, X = 0.3(a+^2 - a^2)",
          interior_equal(matrix_exp(x) * matrix_exp(-x), FockOperator::identity(n),
                         cfg.interior_margin, 0.0)
              .max_deviation,
          1e-10);

  CVector d1(n), d2(n);
  for (int k = 0; k < n; ++k) {
    d1[k] = cplx(0.5 * std::sin(k), 0.25 * std::cos(k));
    d2[k] = cplx(-0.3 * std::cos(0.5 * k), 0.1 * k / n);
  }
  const FockOperator x1 = FockOperator::diagonal(d1);
  const FockOperator x2 = FockOperator::diagonal(d2);
  r.check("matrix_exp(X+Y) = matrix_exp(X) matrix_exp(Y) for commuting diagonals",
          interior_equal(matrix_exp(x1 + x2), matrix_exp(x1) * matrix_exp(x2),
                         cfg.interior_margin, 0.0)
              .max_deviation,
          1e-10);

  std::mt19937_64 rng(20240611);
  double sym = 0.0;
  double not_positive = 0.0;
  double self_imag = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const FockState phi = random_state(n, rng);
    const FockState psi = random_state(n, rng);
    sym = std::max(sym, std::abs(inner(phi, psi) - std::conj(inner(psi, phi))));
    const cplx self = inner(psi, psi);
    if (!(self.real() > 0.0)) not_positive = 1.0;
    self_imag = std::max(self_imag, std::abs(self.imag()) / self.real());
  }
  r.check("inner product is conjugate symmetric", sym, 1e-14);
  r.check("inner product is positive on nonzero states", not_positive, 0.0);
  r.check("<psi|psi> is real to rounding", self_imag, 1e-14);
}

void bch_suite(const TruncationConfig& cfg, std::vector<CheckResult>& out) {
  Recorder r("bch", out);
  TruncationConfig bcfg = cfg;
  bcfg.interior_margin = std::max(cfg.interior_margin, 4);
  if (bcfg.interior_margin >= bcfg.dim) bcfg.interior_margin = bcfg.dim - 1;

  const double grid[] = {0.0, 0.1, -0.1, 0.2, -0.2};
  for (double av : grid)
    for (double bv : grid)
      for (double cv : grid) {
        const BchCoefficients c{av, bv, cv};
        const std::string tag = "A=" + fmt(av) + " B=" + fmt(bv) + " C=" + fmt(cv);
        try {
          const DisentangleReport rep = bch_disentangle(c, bcfg);
          r.check("disentangle " + tag + " [" + to_string(rep.branch_used) + "]",
                  rep.oracle_deviation(), bcfg.tol);
        } catch (const DisentangleError& e) {
          r.check("disentangle " + tag + " [no branch validated]",
                  e.report().substituted_deviation, bcfg.tol);
        }
      }

  const double ps[] = {0.0, 0.5, 1.0};
  const std::pair<double, double> masses[] = {{5.0, 3.0}, {2.0, 1.0}};
  for (double p : ps)
    for (const auto& [m, eps] : masses) {
      const std::string tag = "p=" + fmt(p) + " m=" + fmt(m) + " eps=" + fmt(eps);
      const PhysicalParams params = PhysicalParams::preset(p, m, eps);
      const FockOperator s = squeeze_from_physics(params, cfg);
      const Su11Coefficients lm = fit_conjugation(s, annihilator(cfg.dim), cfg);
      const Su11Coefficients rs = fit_conjugation(s, creator(cfg.dim), cfg);
      r.check("Bogoliubov |lambda|^2 - |mu|^2 = 1, " + tag,
              std::abs(lm.hyperbolic_norm() - 1.0), 1e-8);
      r.report("commutator preservation lambda*sigma - mu*rho = 1, " + tag,
               std::abs(lm.lambda * rs.mu - lm.mu * rs.lambda - 1.0), 1e-8);
      r.report("Bogoliubov projection residual, " + tag, std::max(lm.residual, rs.residual),
               cfg.tol);
    }

  double idem = 0.0;
  double multiple = 0.0;
  constexpr double pi = std::numbers::pi;
  for (CoveringLevel level :
       {CoveringLevel::Mp2, CoveringLevel::Sp2R_or_SU11, CoveringLevel::SO12}) {
    const double period = 2.0 * covering_half_width(level);
    for (double x : {0.0, 5.0 * pi, -7.0 * pi, 17.25 * pi, -33.5 * pi, 2.0 * pi, -2.0 * pi}) {
      const CoveringParameter once = normalize_covering({{0.1, -0.2}, x, level});
      const CoveringParameter twice = normalize_covering(once);
      idem = std::max(idem, std::abs(twice.alpha3 - once.alpha3));
      const double k = (once.alpha3 - x) / period;
      multiple = std::max(multiple, std::abs(k - std::round(k)));
    }
  }
  r.check("normalize_covering is idempotent", idem, 0.0);
  r.check("normalize_covering shifts by integer periods", multiple, 1e-12);
}

void generators_suite(const TruncationConfig& cfg, std::vector<CheckResult>& out) {
  Recorder r("generators", out);
  const GeneratorTriple t = metaplectic_generators(cfg);
  const GeneratorTriple l = sannikov_generators(cfg);
  const int margin = std::max(cfg.interior_margin, 2);
  for (int i = 1; i <= 3; ++i) {
    r.check("L" + std::to_string(i) + " = T" + std::to_string(i) + " on interior",
            interior_equal(l[i], t[i], margin, 0.0).max_deviation, 1e-12);
  }

  r.check("[T1,T2] = -i T3", interior_equal(commutator(t.g1, t.g2), -kI * t.g3, margin, 0.0).max_deviation,
          1e-12);
  r.check("[T2,T3] = i T1", interior_equal(commutator(t.g2, t.g3), kI * t.g1, margin, 0.0).max_deviation,
          1e-12);
  r.check("[T3,T1] = i T2", interior_equal(commutator(t.g3, t.g1), kI * t.g2, margin, 0.0).max_deviation,
          1e-12);

  TruncationConfig dcfg = cfg;
  dcfg.interior_margin = margin;
  const DefiningRelationReport rep = check_defining_relation(dcfg);
  r.check("sigma_1 ^ sigma_2 = -i sigma_3", rep.sigma_algebra_deviation[0], 1e-15);
  r.check("sigma_3 ^ sigma_1 = i sigma_2", rep.sigma_algebra_deviation[1], 1e-15);
  r.check("sigma_2 ^ sigma_3 = i sigma_1", rep.sigma_algebra_deviation[2], 1e-15);
  for (int i = 1; i <= 3; ++i)
    for (int alpha = 1; alpha <= 2; ++alpha)
      r.report("defining relation [L" + std::to_string(i) + ", a^" + std::to_string(alpha) + "]",
               rep.generator_deviation[i - 1][alpha - 1], 1e-10);
}

// Squeezed vacuum exp((r/2)(a+^2 - a^2))|0>, exponentiated on a doubled space.
FockState squeezed_vacuum(double r, int dim) {
  const int big = 2 * dim;
  const FockOperator a = annihilator(big);
  const FockOperator ad = a.adjoint();
  const FockOperator s = matrix_exp((r / 2.0) * (ad * ad - a * a));
  return leading_block(s * FockState::basis(big, 0), dim).normalized();
}

void bargmann_suite(const TruncationConfig& cfg, std::vector<CheckResult>& out) {
  Recorder r("bargmann", out);

  for (double w : {0.1, 0.5, 0.9}) {
    const DiskParam omega(w);
    TruncationConfig big = cfg;
    big.dim = std::max(cfg.dim, required_dim(omega, 1e-12));
    const FockState even = mp2_even_state(omega, big);
    const FockState odd = mp2_odd_state(omega, big);
    r.check("|Psi+(" + fmt(w) + ")| = 1", std::abs(even.norm() - 1.0), 1e-9);
    r.check("|Psi-(" + fmt(w) + ")| = 1", std::abs(odd.norm() - 1.0), 1e-9);
    double stray = 0.0;
    for (int k = 0; k < big.dim; ++k) stray += std::abs(k % 2 == 0 ? odd[k] : even[k]);
    r.check("parity purity at omega=" + fmt(w), stray, 0.0);

    const double x = w * w;
    r.check("mean of Psi+(" + fmt(w) + ") = x/(1-x)",
            std::abs(number_distribution(even).mean - x / (1.0 - x)), 1e-8);
    r.check("mean of Psi-(" + fmt(w) + ") = (1+2x)/(1-x)",
            std::abs(number_distribution(odd).mean - (1.0 + 2.0 * x) / (1.0 - x)), 1e-8);
  }

  const int radial = std::min(cfg.dim, 40);
  double quad = 0.0;
  for (int n = 0; n < radial; ++n) {
    const BargmannFunction f = to_bargmann(FockState::basis(radial, n));
    quad = std::max(quad, std::abs(quadrature_norm(f, radial, 2 * radial + 1) - 1.0));
  }
  r.check("quadrature norm = vector norm for |n>, n < " + std::to_string(radial), quad, 1e-10);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CVector c(cfg.dim);
  for (int k = 0; k < cfg.dim; ++k) c[k] = cplx(g(rng), g(rng));
  const LadderCheck lc = bargmann_ladder_check(to_bargmann(FockState(c)));
  r.check("a+ acts as multiplication by z", lc.raise_deviation, 1e-13);
  r.check("a acts as d/dz", lc.lower_deviation, 1e-13);

  const FockOperator a = annihilator(cfg.dim);
  for (cplx z : {cplx(0.8, 0.0), cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(0.6, -0.8)}) {
    const FockState s = bg_coherent(z, cfg);
    r.check("|(a - z)|z>| at z=" + fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i",
            (a * s - z * s).norm(), 1e-8);
  }

  const std::pair<cplx, cplx> pairs[] = {{cplx(1.0, 0.0), cplx(0.0, 1.0)},
                                         {cplx(0.5, 0.0), cplx(0.5, 0.0)},
                                         {cplx(0.0, 0.0), cplx(0.0, 0.0)}};
  for (const auto& [z, zp] : pairs) {
    const cplx numeric = inner(bg_coherent(zp, cfg), bg_coherent(z, cfg));
    r.check("overlap <z'|z> closed form, z=" + fmt(z.real()) + "+" + fmt(z.imag()) + "i z'=" +
                fmt(zp.real()) + "+" + fmt(zp.imag()) + "i",
            std::abs(numeric - bg_overlap(z, zp)), 1e-10);
  }

  std::vector<DiskParam> path;
  for (double w : {0.9, 0.99, 0.999}) path.emplace_back(w);
  const auto scan = edge_limit_scan(path, cfg, ScanOptions{10, true, 1e-12});
  for (const ScanPoint& pt : scan) {
    const double x = std::norm(pt.omega);
    double law = 0.0;
    for (const ScanRow& row : pt.rows)
      law = std::max(law, std::abs(row.ratio - (1.0 - x) * (2 * row.level + 1)));
    r.check("per-level ratio (1-|w|^2)(2m+1), |w|=" + fmt(std::abs(pt.omega)), law, 1e-10);
    r.check("total sector ratio = 1, |w|=" + fmt(std::abs(pt.omega)),
            std::abs(pt.summary.odd_even_ratio - 1.0), 1e-9);
  }

  for (double w : {0.3, 0.6, -0.5}) {
    const FockState ref = squeezed_vacuum(std::atanh(w), cfg.dim);
    const FockState psi = mp2_even_state(DiskParam(w), cfg);
    const int k = cfg.interior_end();
    r.check("Psi+(" + fmt(w) + ") = squeezed vacuum, tanh r = omega",
            (psi.coeffs().head(k) - ref.coeffs().head(k)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

const PhysicalParams kSubcritical[] = {
    PhysicalParams::preset(2.0, 5.0, 3.0), PhysicalParams::preset(0.5, 5.0, 3.0),
    PhysicalParams::preset(1.0, 2.0, 1.0), PhysicalParams::preset(-1.5, 3.0, 0.5),
    PhysicalParams::preset(0.1, 1.0, -0.5), PhysicalParams::preset(3.9, 5.0, 3.0)};

void prefactor_consistency(Recorder& r, const TruncationConfig& cfg) {
  for (const PhysicalParams& p : kSubcritical) {
    const cplx pref = thermal_solution(p, cfg).prefactor;
    const double w2 = omega_from_physics(p).abs2();
    r.check("thermal prefactor = (1-|w|^2)^(1/4), p=" + fmt(p.p) + " m=" + fmt(p.m) +
                " eps=" + fmt(p.eps),
            std::abs(pref - std::pow(1.0 - w2, 0.25)), 1e-12);
  }
}

void wave_suite(const TruncationConfig& cfg, std::vector<CheckResult>& out) {
  Recorder r("wave", out);

  for (double m : {0.5, 1.0, 3.0}) {
    const LeastSquaresVacuum v = solve_vacuum_least_squares(PhysicalParams::preset(0.0, m, m), cfg);
    const double off = (v.state.coeffs() - FockState::basis(cfg.dim, 0).coeffs()).norm();
    r.check("least-squares vacuum at p=0, m=eps=" + fmt(m) + " is |0>", off, 1e-12);
    r.check("least-squares residual at p=0, m=eps=" + fmt(m), v.residual, 1e-12);
  }

  const auto [a, ad] = make_ladder(cfg);
  for (const PhysicalParams& p :
       {PhysicalParams::preset(2.0, 5.0, 3.0), PhysicalParams::preset(0.0, 5.0, 3.0),
        PhysicalParams::preset(1.0, 1.0, 2.0), PhysicalParams::preset(0.5, 2.0, 1.0)}) {
    const std::string tag = "p=" + fmt(p.p) + " m=" + fmt(p.m) + " eps=" + fmt(p.eps);
    const VacuumCoefficients v = thermal_vacuum_coefficients(p);
    const FockState z0 = thermal_vacuum(p, cfg);
    r.check("a^2 annihilates thermal vacuum, " + tag, (a * (a * z0)).norm(), 0.0);
    r.check("a does not annihilate thermal vacuum, " + tag, (a * z0).norm() > 0.0 ? 0.0 : 1.0, 0.0);
    r.check("B = A^3 exactly, " + tag, std::abs(v.b - v.a * v.a * v.a), 0.0);
  }

  for (const PhysicalParams& p : {PhysicalParams::preset(0.5, 5.0, 3.0), PhysicalParams::preset(1.0, 2.0, 1.0)}) {
    const std::string tag = "p=" + fmt(p.p) + " m=" + fmt(p.m) + " eps=" + fmt(p.eps);
    const GeneralSolution even = general_solution(p, {1.0, 0.0}, cfg);
    const GeneralSolution odd = general_solution(p, {0.0, 1.0}, cfg);
    double stray = 0.0;
    for (int k = 0; k < cfg.dim; ++k) stray += std::abs(k % 2 == 0 ? odd.state[k] : even.state[k]);
    r.check("general solution parity purity, " + tag, stray, 0.0);
  }

  prefactor_consistency(r, cfg);

  for (double p : {0.5, 1.6, 3.2}) {
    const PhysicalParams params = PhysicalParams::preset(p, 5.0, 3.0);
    const GeneralSolution s = general_solution(params, thermal_vacuum_coefficients(params), cfg);
    r.check("tail mass with |alpha|=" + fmt(std::abs(solution_params(params).alpha)),
            s.state.tail_mass(), 1e-8);
    r.report("closed form vs operator route, p=" + fmt(p) + " m=5 eps=3",
             s.closed_vs_operator_deviation, cfg.tol);
  }

  for (const PhysicalParams& p : kSubcritical) {
    const ThermalSolution ts = thermal_solution(p, cfg);
    r.report("thermal solution wave residual, p=" + fmt(p.p) + " m=" + fmt(p.m) + " eps=" + fmt(p.eps),
             apply_wave_operator(p, ts.state, cfg).residual, cfg.tol);
  }
}

}  // namespace

SuiteReport run_suite(Suite suite, const TruncationConfig& cfg) {
  cfg.validate();
  if (cfg.dim < 8) throw ConfigError("verify suites need a dimension of at least 8");
  SuiteReport rep;
  auto want = [&](Suite s) { return suite == Suite::all || suite == s; };
  if (want(Suite::fock)) fock_suite(cfg, rep.checks);
  if (want(Suite::bch)) bch_suite(cfg, rep.checks);
  if (want(Suite::generators)) generators_suite(cfg, rep.checks);
  if (want(Suite::bargmann)) {
    bargmann_suite(cfg, rep.checks);
    Recorder r("bargmann", rep.checks);
    prefactor_consistency(r, cfg);
  }
  if (want(Suite::wave)) wave_suite(cfg, rep.checks);
  return rep;
}

}  // namespace mpfock
