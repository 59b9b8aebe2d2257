#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "mpfock/bargmann.hpp"
#include "mpfock/error.hpp"
#include "mpfock/quadrature.hpp"
#include "oracles.hpp"

using namespace mpfock;

namespace {

FockState random_state(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVector c(n);
  for (int k = 0; k < n; ++k) c[k] = cplx(g(rng), g(rng));
  return FockState(c);
}

TruncationConfig dim_for(double w) {
  return {std::max(128, required_dim(DiskParam(w), 1e-12)), 1e-8, 2};
}

}  // namespace

TEST(Quadrature, GaussLaguerreIntegratesMonomials) {
  const QuadratureRule q = gauss_laguerre(20);
  for (int k = 0; k < 40; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * std::pow(q.nodes[i], k);
    const double exact = std::tgamma(k + 1.0);
    EXPECT_NEAR(sum / exact, 1.0, 1e-12) << k;
  }
}

TEST(Bargmann, MonomialsAndRoundtrip) {
  const BargmannFunction f = to_bargmann(FockState::basis(8, 2));
  EXPECT_NEAR(std::abs(f(cplx(1.5, -0.5)) - std::pow(cplx(1.5, -0.5), 2) / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(to_bargmann(FockState(5)).degree(), -1);

  const FockState phi = random_state(40, 11);
  const FockState back = from_bargmann(to_bargmann(phi));
  EXPECT_LT((back.coeffs() - phi.coeffs()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Bargmann, QuadratureNormOfNumberStates) {
  for (int n = 0; n < 40; ++n) {
    const BargmannFunction f = to_bargmann(FockState::basis(40, n));
    EXPECT_NEAR(quadrature_norm(f, 40, 81), 1.0, 1e-10) << n;
  }
}

TEST(Bargmann, QuadratureNormOfRandomPolynomial) {
  FockState phi = random_state(13, 5);
  const BargmannFunction f = to_bargmann(phi);
  EXPECT_NEAR(quadrature_norm(f, 13, 27), phi.norm_squared(), 1e-12 * phi.norm_squared());
}

TEST(Bargmann, QuadratureRejectsTooFewNodes) {
  const BargmannFunction f = to_bargmann(FockState::basis(10, 9));
  EXPECT_THROW(quadrature_norm(f, 9, 40), ConfigError);
  EXPECT_THROW(quadrature_norm(f, 10, 18), ConfigError);
  EXPECT_NO_THROW(quadrature_norm(f, 10, 19));
}

TEST(Bargmann, LadderCorrespondence) {
  const LadderCheck c = bargmann_ladder_check(to_bargmann(random_state(64, 2)));
  EXPECT_LT(c.raise_deviation, 1e-13);
  EXPECT_LT(c.lower_deviation, 1e-13);
}

TEST(Coherent, OverlapAndEigenvalue) {
  const TruncationConfig cfg{64, 1e-8, 2};
  const std::pair<cplx, cplx> pairs[] = {
      {cplx(1.0), cplx(0.0, 1.0)}, {cplx(0.5), cplx(0.5)}, {cplx(0.0), cplx(0.0)}};
  for (const auto& [z, zp] : pairs) {
    const cplx numeric = inner(bg_coherent(zp, cfg), bg_coherent(z, cfg));
    const cplx closed = std::exp(-std::norm(z) / 2 - std::norm(zp) / 2 + std::conj(zp) * z);
    EXPECT_LT(std::abs(numeric - closed), 1e-10);
    EXPECT_LT(std::abs(bg_overlap(z, zp) - closed), 1e-15);
  }
  const FockOperator a = annihilator(64);
  for (double r : {0.3, 0.8, 1.0})
    for (double t : {0.0, 1.0, 2.5}) {
      const cplx z = std::polar(r, t);
      const FockState s = bg_coherent(z, cfg);
      EXPECT_LT((a * s - z * s).norm(), 1e-8);
    }
  EXPECT_EQ(bg_coherent(0.0, cfg).coeffs(), FockState::basis(64, 0).coeffs());
}

TEST(Coherent, TailTooLargeThrows) {
  EXPECT_THROW(bg_coherent(cplx(4.0), {16, 1e-8, 2}), TruncationError);
}

TEST(DiskParam, RejectsBoundary) {
  EXPECT_THROW(DiskParam(1.0), DomainError);
  EXPECT_THROW(DiskParam(cplx(0.8, 0.6)), DomainError);
  EXPECT_NO_THROW(DiskParam(0.999));
}

TEST(Mp2, CoefficientsMatchClosedForm) {
  const cplx w(0.3, -0.4);
  const TruncationConfig cfg{64, 1e-8, 2};
  const FockState even = mp2_even_state(DiskParam(w), cfg);
  const FockState odd = mp2_odd_state(DiskParam(w), cfg);
  for (int m = 0; m < 20; ++m) {
    EXPECT_LT(std::abs(even[2 * m] - oracle::even_coefficient(w, m)), 1e-15);
    EXPECT_LT(std::abs(odd[2 * m + 1] - oracle::odd_coefficient(w, m)), 1e-15);
    EXPECT_EQ(even[2 * m + 1], cplx(0.0));
    EXPECT_EQ(odd[2 * m], cplx(0.0));
  }
  EXPECT_EQ(mp2_even_state(DiskParam(0.0), cfg).coeffs(), FockState::basis(64, 0).coeffs());
}

TEST(Mp2, UnitNormsAndMeans) {
  for (double w : {0.1, 0.5, 0.6, 0.9}) {
    const TruncationConfig cfg = dim_for(w);
    const double x = w * w;
    const FockState even = mp2_even_state(DiskParam(w), cfg);
    const FockState odd = mp2_odd_state(DiskParam(w), cfg);
    EXPECT_NEAR(even.norm(), 1.0, 1e-10);
    EXPECT_NEAR(odd.norm(), 1.0, 1e-10);
    EXPECT_NEAR(number_distribution(even).mean, x / (1 - x), 1e-8);
    EXPECT_NEAR(number_distribution(odd).mean, (1 + 2 * x) / (1 - x), 1e-8);
    EXPECT_LT(even.tail_mass(), 1e-12);
  }
}

TEST(Mp2, FullStateIsSum) {
  const TruncationConfig cfg{64, 1e-8, 2};
  const DiskParam w(cplx(0.2, 0.1));
  EXPECT_EQ(mp2_full_state(w, cfg).coeffs(),
            (mp2_even_state(w, cfg) + mp2_odd_state(w, cfg)).coeffs());
}

TEST(Mp2, EvenStateIsSqueezedVacuum) {
  const int n = 64;
  const double r = std::atanh(0.6);
  const CMatrix s = oracle::quadratic_exp(0.0, r / 2, -r / 2, n, 3 * n);
  const Eigen::VectorXcd ref = s.col(0).normalized();
  const FockState psi = mp2_even_state(DiskParam(0.6), {n, 1e-8, 2});
  EXPECT_LT((psi.coeffs().head(48) - ref.head(48)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Mp2, RequiredDimControlsTail) {
  for (double w : {0.5, 0.9, 0.99}) {
    const DiskParam d(w);
    const int n = required_dim(d, 1e-12);
    EXPECT_LT(mp2_full_state(d, {n, 1e-8, 2}).tail_mass(), 1e-12);
  }
}

TEST(Physics, OmegaFromPhysics) {
  const DiskParam w = omega_from_physics(PhysicalParams::preset(2.0, 5.0, 3.0));
  EXPECT_NEAR(w.abs(), 0.5, 1e-15);
  EXPECT_NEAR(std::arg(w.value()), 0.0, 1e-15);
  EXPECT_NEAR(std::arg(omega_from_physics(PhysicalParams::preset(-2.0, 5.0, 3.0)).value()),
              std::numbers::pi, 1e-15);
  EXPECT_THROW(omega_from_physics(PhysicalParams::preset(4.0, 5.0, 3.0)), DomainError);
}

TEST(Statistics, NumberDistribution) {
  const NumberDistribution d = number_distribution(FockState::basis(8, 3));
  EXPECT_EQ(d.mean, 3.0);
  EXPECT_EQ(d.variance, 0.0);
  EXPECT_EQ(d.mandel_q, -1.0);
  EXPECT_TRUE(std::isnan(number_distribution(FockState::basis(8, 0)).mandel_q));
  EXPECT_TRUE(std::isinf(number_distribution(FockState::basis(8, 1)).odd_even_ratio));
  EXPECT_THROW(number_distribution(FockState(8)), DomainError);
}

TEST(EdgeScan, PerLevelLawAndOrder) {
  std::vector<DiskParam> path;
  for (double w : {0.999, 0.9, 0.99}) path.emplace_back(w);
  const auto scan = edge_limit_scan(path, {64, 1e-8, 2});
  ASSERT_EQ(scan.size(), 3u);
  EXPECT_DOUBLE_EQ(scan[0].omega.real(), 0.999);
  EXPECT_DOUBLE_EQ(scan[1].omega.real(), 0.9);
  for (const ScanPoint& pt : scan) {
    const double x = std::norm(pt.omega);
    ASSERT_EQ(pt.rows.size(), 11u);
    for (const ScanRow& row : pt.rows)
      EXPECT_NEAR(row.ratio, (1 - x) * (2 * row.level + 1), 1e-10);
    EXPECT_NEAR(pt.summary.odd_even_ratio, 1.0, 1e-9);
  }
}
