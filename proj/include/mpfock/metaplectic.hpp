#pragma once

// The Mp(2) layer: disentangling of exp(A(aa+ + a+a) + B a+^2 + C a^2),
// the physical squeeze operator, Bogoliubov coefficient extraction, the
// covering-parameter range reduction and the generator equivalence checks.

#include <array>
#include <string>

#include "mpfock/error.hpp"
#include "mpfock/fock.hpp"
#include "mpfock/params.hpp"

namespace mpfock {

struct BchCoefficients {
  cplx a;  // coefficient of (aa+ + a+a)
  cplx b;  // coefficient of a+^2
  cplx c;  // coefficient of a^2
};

// prefactor * exp(plus * a+^2) * exp(h * H) * exp(minus * a^2), H = (aa+ + a+a)/2.
struct DisentangledFactors {
  cplx prefactor{1.0, 0.0};
  cplx plus_exponent{};
  cplx h_exponent{};
  cplx minus_exponent{};
};

enum class BchBranch { published, substituted };

std::string to_string(BchBranch b);

// Below this |Delta| the hyperbolic ratios are replaced by their series.
inline constexpr double kDegenerateDelta = 1e-8;

/// Closed form as published: Delta = sqrt(A^2 - 4BC), prefactor e^{-A/2},
/// plus/minus = (B, C) / (Delta coth Delta - A),
/// h = ln(Delta sech Delta / (Delta - A tanh Delta)).
DisentangledFactors published_factors(const BchCoefficients& c);

/// Standard su(1,1) disentangling of the same exponent. Written with H the
/// exponent is 2A*H + B a+^2 + C a^2, so the published formula applies with
/// A -> 2A and no scalar prefactor.
DisentangledFactors standard_factors(const BchCoefficients& c);

/// A(aa+ + a+a) + B a+^2 + C a^2 built from truncated ladder matrices.
FockOperator bch_exponent(const BchCoefficients& c, int dim);

/// H = (aa+ + a+a)/2 as the truncation of the infinite operator, diag(n + 1/2).
FockOperator h_operator(int dim);

/// Product of the three factor exponentials. Every factor is lower triangular,
/// diagonal or upper triangular, so the product is the exact leading block of
/// the infinite-dimensional operator.
FockOperator reassemble(const DisentangledFactors& f, int dim);

/// exp of the exponent computed on a space padded to `3 * dim` levels and cut
/// back to the leading block.
FockOperator padded_exp_oracle(const BchCoefficients& c, int dim);

/// Interior deviation between a reassembled product and the oracle, scaled by
/// max(1, largest interior |oracle entry|).
double scaled_interior_deviation(const FockOperator& product, const FockOperator& oracle,
                                 int margin);

struct DisentangleReport {
  BchCoefficients input;
  cplx delta;  // sqrt(A^2 - 4BC), principal branch
  bool degenerate = false;
  DisentangledFactors published;
  DisentangledFactors substituted;
  double published_deviation = 0.0;        // +inf if the published factors are not finite
  double substituted_deviation = 0.0;  // +inf if not finite
  BchBranch branch_used = BchBranch::published;

  const DisentangledFactors& factors() const {
    return branch_used == BchBranch::published ? published : substituted;
  }
  double oracle_deviation() const {
    return branch_used == BchBranch::published ? published_deviation : substituted_deviation;
  }
};

class DisentangleError : public ValidationError {
 public:
  explicit DisentangleError(DisentangleReport report);
  const DisentangleReport& report() const { return report_; }

 private:
  DisentangleReport report_;
};

/// Evaluates the published closed form, validates it against the padded
/// matrix-exponential oracle (tolerance cfg.tol, margin cfg.interior_margin),
/// and falls back to the standard disentangling if it fails. Throws
/// DisentangleError when neither branch validates.
DisentangleReport bch_disentangle(const BchCoefficients& c, const TruncationConfig& cfg);

/// S = exp(p/(m+eps) a+^2) (m^2-eps^2)^{-1/4} exp(N ln(1/sqrt(m^2-eps^2)))
///     exp(-p/(m-eps) a^2), principal branches throughout.
/// Throws DomainError when m^2 = eps^2.
FockOperator squeeze_from_physics(const PhysicalParams& params, const TruncationConfig& cfg);

struct Su11Coefficients {
  cplx lambda;
  cplx mu;
  double residual = 0.0;  // relative residual of the intertwining fit
  int probe_dim = 0;      // size of the leading block the fit used

  double hyperbolic_norm() const { return std::norm(lambda) - std::norm(mu); }
};

/// Fits S x S^{-1} = lambda a + mu a+ through the intertwining relation
/// S x = (lambda a + mu a+) S on a leading probe block, without inverting S.
/// Never throws on a poor fit; the residual is reported instead.
Su11Coefficients fit_conjugation(const FockOperator& s, const FockOperator& x,
                                 const TruncationConfig& cfg);

/// fit_conjugation with x = a. Throws ValidationError (not a Bogoliubov
/// transformation) when the relative residual exceeds cfg.tol.
Su11Coefficients extract_bogoliubov(const FockOperator& s, const TruncationConfig& cfg);

enum class CoveringLevel { Mp2, Sp2R_or_SU11, SO12 };

struct CoveringParameter {
  std::array<double, 2> alpha_perp{};
  double alpha3 = 0.0;
  CoveringLevel level = CoveringLevel::Mp2;
};

// Half-width of the canonical interval (-w, w]: 8pi, 4pi, 2pi.
double covering_half_width(CoveringLevel level);

/// Shifts x into (-half_width, half_width] by an integer multiple of the
/// period 2 * half_width.
double reduce_angle(double x, double half_width);

CoveringParameter normalize_covering(const CoveringParameter& p);

struct GeneratorTriple {
  FockOperator g1, g2, g3;
  const FockOperator& operator[](int i) const;
};

/// T1 = (i/4)(a+^2 - a^2), T2 = -(1/4)(a+^2 + a^2), T3 = -(1/4)(aa+ + a+a).
GeneratorTriple metaplectic_generators(const TruncationConfig& cfg);

using Matrix2c = Eigen::Matrix2cd;

/// The three non-compact 2x2 matrices, slots 1, 2, 3.
std::array<Matrix2c, 3> sigma_matrices();

/// L_i = u M_i v with u = (a+, a), v = (a, a+)^T and
/// M_1 = sigma_3 sigma_1 / 4, M_2 = -sigma_3 sigma_2 / 4, M_3 = -sigma_3^2 / 4.
GeneratorTriple sannikov_generators(const TruncationConfig& cfg);

// X ^ Y = (X Y - Y X) / 2
Matrix2c half_commutator(const Matrix2c& x, const Matrix2c& y);

/// Interior max deviation of [gen, a^alpha] - (1/2) sum_beta a^beta (sigma_i)_beta^alpha
/// with a^1 = a, a^2 = a+ and (sigma)_beta^alpha = sigma(alpha - 1, beta - 1).
double defining_relation_deviation(const FockOperator& gen, int i, int alpha,
                                   const TruncationConfig& cfg);

struct DefiningRelationReport {
  // [i-1][alpha-1]
  std::array<std::array<double, 2>, 3> generator_deviation{};
  // sigma_1^sigma_2 + i sigma_3, sigma_3^sigma_1 - i sigma_2, sigma_2^sigma_3 - i sigma_1
  std::array<double, 3> sigma_algebra_deviation{};
};

DefiningRelationReport check_defining_relation(const TruncationConfig& cfg);

}  // namespace mpfock
