#include "mpfock/fock.hpp"

#include <array>
#include <cmath>
#include <string>

#include "mpfock/error.hpp"

namespace mpfock {

void TruncationConfig::validate() const {
  if (dim < 2) throw ConfigError("truncation dimension must be >= 2, got " + std::to_string(dim));
  if (!(tol >= 0.0)) throw ConfigError("tolerance must be non-negative");
  if (interior_margin < 0 || interior_margin >= dim) {
    throw ConfigError("interior margin must lie in [0, dim), got " +
                      std::to_string(interior_margin));
  }
}

void require_same_dim(int lhs, int rhs, const char* what) {
  if (lhs != rhs) {
    throw ShapeError(std::string(what) + ": dimension mismatch " + std::to_string(lhs) + " vs " +
                     std::to_string(rhs));
  }
}

FockState::FockState(int dim) : c_(CVector::Zero(dim)) {}

FockState::FockState(CVector coeffs) : c_(std::move(coeffs)) {}

FockState FockState::basis(int dim, int n) {
  if (n < 0 || n >= dim) throw ShapeError("basis index out of range");
  FockState s(dim);
  s.c_[n] = 1.0;
  return s;
}

bool FockState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

double FockState::tail_mass(double fraction) const {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("tail fraction must lie in (0, 1]");
  const double total = norm_squared();
  if (total == 0.0) return 0.0;
  const auto start = static_cast<Eigen::Index>(std::ceil(fraction * dim()));
  double tail = 0.0;
  for (Eigen::Index n = start; n < c_.size(); ++n) tail += std::norm(c_[n]);
  return tail / total;
}

FockState FockState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericError("cannot normalize the zero state");
  return FockState(CVector(c_ / n));
}

FockState FockState::operator+(const FockState& o) const {
  require_same_dim(dim(), o.dim(), "state sum");
  return FockState(CVector(c_ + o.c_));
}

FockState FockState::operator-(const FockState& o) const {
  require_same_dim(dim(), o.dim(), "state difference");
  return FockState(CVector(c_ - o.c_));
}

FockOperator::FockOperator(int dim) : m_(CMatrix::Zero(dim, dim)) {}

FockOperator::FockOperator(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ShapeError("operator matrix must be square");
}

FockOperator FockOperator::identity(int dim) {
  return FockOperator(CMatrix(CMatrix::Identity(dim, dim)));
}

FockOperator FockOperator::diagonal(const CVector& d) {
  return FockOperator(CMatrix(d.asDiagonal()));
}

FockOperator FockOperator::operator*(const FockOperator& o) const {
  require_same_dim(dim(), o.dim(), "operator product");
  return FockOperator(CMatrix(m_ * o.m_));
}

FockOperator FockOperator::operator+(const FockOperator& o) const {
  require_same_dim(dim(), o.dim(), "operator sum");
  return FockOperator(CMatrix(m_ + o.m_));
}

FockOperator FockOperator::operator-(const FockOperator& o) const {
  require_same_dim(dim(), o.dim(), "operator difference");
  return FockOperator(CMatrix(m_ - o.m_));
}

FockState FockOperator::operator*(const FockState& s) const {
  require_same_dim(dim(), s.dim(), "operator action");
  return FockState(CVector(m_ * s.coeffs()));
}

FockOperator annihilator(int dim) {
  if (dim < 2) throw ConfigError("truncation dimension must be >= 2");
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockOperator(std::move(m));
}

FockOperator creator(int dim) { return annihilator(dim).adjoint(); }

FockOperator number_operator(int dim) {
  if (dim < 2) throw ConfigError("truncation dimension must be >= 2");
  CVector d(dim);
  for (int n = 0; n < dim; ++n) d[n] = static_cast<double>(n);
  return FockOperator::diagonal(d);
}

Ladder make_ladder(const TruncationConfig& cfg) {
  cfg.validate();
  FockOperator a = annihilator(cfg.dim);
  FockOperator adag = a.adjoint();
  return {std::move(a), std::move(adag)};
}

SpinorOperator make_spinor(const TruncationConfig& cfg) {
  auto [a, adag] = make_ladder(cfg);
  return {std::move(a), std::move(adag)};
}

FockOperator commutator(const FockOperator& x, const FockOperator& y) {
  require_same_dim(x.dim(), y.dim(), "commutator");
  return FockOperator(CMatrix(x.matrix() * y.matrix() - y.matrix() * x.matrix()));
}

namespace {

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

// Degree-16 Taylor polynomial evaluated by Paterson-Stockmeyer in powers of
// X^4 (six products). For a 1-norm of at most 1/2 the first omitted term is
// below 2^-17/17! ~ 2e-20.
constexpr int kSeriesDegree = 16;
constexpr double kScaledNorm = 0.5;

CMatrix taylor_block(const std::array<CMatrix, 4>& pow, int first, const double* coef) {
  CMatrix b = coef[first] * pow[0];
  for (int i = 1; i < 4; ++i) b += coef[first + i] * pow[i];
  return b;
}

}  // namespace

FockOperator matrix_exp(const FockOperator& x) {
  const CMatrix& m = x.matrix();
  if (!all_finite(m)) throw NumericError("matrix_exp: non-finite entries");
  const Eigen::Index n = m.rows();

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kScaledNorm) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kScaledNorm)));
  const CMatrix scaled = m / std::ldexp(1.0, squarings);

  double coef[kSeriesDegree + 1];
  coef[0] = 1.0;
  for (int k = 1; k <= kSeriesDegree; ++k) coef[k] = coef[k - 1] / k;

  // pow[i] = X^i for i < 4; x4 = X^4.
  std::array<CMatrix, 4> pow;
  pow[0] = CMatrix::Identity(n, n);
  pow[1] = scaled;
  pow[2] = scaled * scaled;
  pow[3] = pow[2] * scaled;
  const CMatrix x4 = pow[2] * pow[2];

  CMatrix result = coef[16] * x4 + taylor_block(pow, 12, coef);
  for (int first = 8; first >= 0; first -= 4) result = result * x4 + taylor_block(pow, first, coef);
  for (int s = 0; s < squarings; ++s) result = result * result;

  if (!all_finite(result)) throw NumericError("matrix_exp: result overflowed");
  return FockOperator(std::move(result));
}

cplx inner(const FockState& phi, const FockState& psi) {
  require_same_dim(phi.dim(), psi.dim(), "inner product");
  return phi.coeffs().dot(psi.coeffs());  // Eigen's dot conjugates the left operand
}

InteriorComparison interior_equal(const FockOperator& x, const FockOperator& y, int margin,
                                  double tol) {
  require_same_dim(x.dim(), y.dim(), "interior_equal");
  if (margin < 0 || margin >= x.dim()) throw ConfigError("interior margin must lie in [0, dim)");
  const Eigen::Index k = x.dim() - margin;
  const double dev = (x.matrix().topLeftCorner(k, k) - y.matrix().topLeftCorner(k, k))
                         .cwiseAbs()
                         .maxCoeff();
  return {dev <= tol, dev};
}

double interior_max_abs(const FockOperator& x, int margin) {
  if (margin < 0 || margin >= x.dim()) throw ConfigError("interior margin must lie in [0, dim)");
  const Eigen::Index k = x.dim() - margin;
  return x.matrix().topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

FockOperator leading_block(const FockOperator& x, int dim) {
  if (dim > x.dim()) throw ShapeError("leading block larger than operator");
  return FockOperator(CMatrix(x.matrix().topLeftCorner(dim, dim)));
}

FockState leading_block(const FockState& s, int dim) {
  if (dim > s.dim()) throw ShapeError("leading block larger than state");
  return FockState(CVector(s.coeffs().head(dim)));
}

}  // namespace mpfock
