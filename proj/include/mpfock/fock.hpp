#pragma once

// Truncated single-mode Fock space: states are coefficient vectors over
// |0>..|N-1>, operators are dense N x N complex matrices.

#include <complex>
#include <Eigen/Dense>

namespace mpfock {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

// States are checked for truncation adequacy by the probability mass at and
// above level ceil(kTailFraction * N).
inline constexpr double kTailFraction = 0.75;
inline constexpr double kTailLimit = 1e-10;

struct TruncationConfig {
  int dim = 64;
  double tol = 1e-8;
  int interior_margin = 2;

  // Throws ConfigError unless dim >= 2, tol >= 0 and 0 <= margin < dim.
  void validate() const;
  // First index excluded from edge-sensitive comparisons.
  int interior_end() const { return dim - interior_margin; }
};

class FockState {
 public:
  FockState() = default;
  explicit FockState(int dim);
  explicit FockState(CVector coeffs);

  static FockState basis(int dim, int n);

  int dim() const { return static_cast<int>(c_.size()); }
  const CVector& coeffs() const { return c_; }
  cplx operator[](int n) const { return c_[n]; }

  double norm_squared() const { return c_.squaredNorm(); }
  double norm() const { return c_.norm(); }
  bool is_normalized(double tol) const;

  /// Fraction of the squared norm carried by levels n >= ceil(fraction * N).
  /// Zero for the zero state. `fraction` must lie in (0, 1].
  double tail_mass(double fraction = kTailFraction) const;

  FockState normalized() const;

  FockState operator+(const FockState& o) const;
  FockState operator-(const FockState& o) const;
  FockState operator*(cplx s) const { return FockState(CVector(c_ * s)); }

 private:
  CVector c_;
};

class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(int dim);
  explicit FockOperator(CMatrix m);

  static FockOperator identity(int dim);
  static FockOperator diagonal(const CVector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  FockOperator adjoint() const { return FockOperator(CMatrix(m_.adjoint())); }

  FockOperator operator*(const FockOperator& o) const;
  FockOperator operator+(const FockOperator& o) const;
  FockOperator operator-(const FockOperator& o) const;
  FockOperator operator*(cplx s) const { return FockOperator(CMatrix(m_ * s)); }
  FockOperator operator-() const { return FockOperator(CMatrix(-m_)); }
  FockState operator*(const FockState& s) const;

 private:
  CMatrix m_;
};

inline FockOperator operator*(cplx s, const FockOperator& x) { return x * s; }
inline FockState operator*(cplx s, const FockState& x) { return x * s; }

struct Ladder {
  FockOperator a;     // a[n-1][n] = sqrt(n)
  FockOperator adag;  // exact conjugate transpose of a
};

Ladder make_ladder(const TruncationConfig& cfg);
FockOperator annihilator(int dim);
FockOperator creator(int dim);
FockOperator number_operator(int dim);

// The two-component object (a, a+). Brackets between components follow
// [A_1, A_2] = +1 on the interior block.
struct SpinorOperator {
  FockOperator upper;
  FockOperator lower;

  const FockOperator& component(int alpha) const { return alpha == 1 ? upper : lower; }
};

SpinorOperator make_spinor(const TruncationConfig& cfg);

FockOperator commutator(const FockOperator& x, const FockOperator& y);

/// e^X by scaling and squaring of a Taylor series. Throws NumericError on
/// non-finite input or output.
FockOperator matrix_exp(const FockOperator& x);

cplx inner(const FockState& phi, const FockState& psi);

struct InteriorComparison {
  bool pass = false;
  double max_deviation = 0.0;
  explicit operator bool() const { return pass; }
};

/// Compares entries with both indices < dim - margin.
InteriorComparison interior_equal(const FockOperator& x, const FockOperator& y, int margin,
                                  double tol);

/// Largest |entry| with both indices < dim - margin.
double interior_max_abs(const FockOperator& x, int margin);

/// Copies the leading `dim` x `dim` block.
FockOperator leading_block(const FockOperator& x, int dim);
FockState leading_block(const FockState& s, int dim);

void require_same_dim(int lhs, int rhs, const char* what);

}  // namespace mpfock
