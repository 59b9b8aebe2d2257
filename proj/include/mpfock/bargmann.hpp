#pragma once

// Bargmann (holomorphic) representation, Barut-Girardello coherent states,
// the even/odd Mp(2) state families and their number statistics.

#include <span>
#include <vector>

#include "mpfock/fock.hpp"
#include "mpfock/params.hpp"

namespace mpfock {

// f(z) = sum_n f_n z^n with f_n = <n|phi> / sqrt(n!)
class BargmannFunction {
 public:
  BargmannFunction() = default;
  explicit BargmannFunction(CVector coeffs) : f_(std::move(coeffs)) {}

  int dim() const { return static_cast<int>(f_.size()); }
  const CVector& coeffs() const { return f_; }

  // Highest index with a nonzero coefficient, -1 for the zero function.
  int degree() const;

  cplx operator()(cplx z) const;

 private:
  CVector f_;
};

BargmannFunction to_bargmann(const FockState& phi);
FockState from_bargmann(const BargmannFunction& f);

/// integral d^2z/pi e^{-|z|^2} |f(z)|^2 by Gauss-Laguerre in t = |z|^2 and
/// the trapezoid rule in arg z. Requires degree < radial_nodes and
/// angular_nodes > 2 * degree (exactness); throws ConfigError otherwise.
double quadrature_norm(const BargmannFunction& f, int radial_nodes, int angular_nodes);

// A point of the open unit disk.
class DiskParam {
 public:
  explicit DiskParam(cplx omega);
  cplx value() const { return w_; }
  double abs() const { return std::abs(w_); }
  double abs2() const { return std::norm(w_); }

 private:
  cplx w_;
};

/// e^{-|z|^2/2} sum z^n/sqrt(n!) |n>. Throws TruncationError when the tail
/// mass exceeds kTailLimit.
FockState bg_coherent(cplx z, const TruncationConfig& cfg);

// Closed-form overlap <z'|z> = exp(-|z|^2/2 - |z'|^2/2 + conj(z') z).
cplx bg_overlap(cplx z, cplx z_prime);

struct LadderCheck {
  // Largest relative coefficient mismatch on the interior range 0..N-2.
  double raise_deviation = 0.0;  // to_bargmann(a+ phi) vs z f(z)
  double lower_deviation = 0.0;  // to_bargmann(a phi) vs f'(z)
};

LadderCheck bargmann_ladder_check(const BargmannFunction& f);

/// <2m|Psi+> = (1-|w|^2)^{1/4} (w/2)^m sqrt((2m)!)/m!, odd levels exactly 0.
FockState mp2_even_state(const DiskParam& omega, const TruncationConfig& cfg);
/// <2m+1|Psi-> = (1-|w|^2)^{3/4} (w/2)^m sqrt((2m+1)!)/m!, even levels exactly 0.
FockState mp2_odd_state(const DiskParam& omega, const TruncationConfig& cfg);
/// Psi+ + Psi-.
FockState mp2_full_state(const DiskParam& omega, const TruncationConfig& cfg);

/// Smallest dimension for which the Mp(2) family states at `omega` have
/// tail_mass() below `tail_target`, from a geometric bound on the tail.
int required_dim(const DiskParam& omega, double tail_target);

/// |w|^2 = p^2/(m^2 - eps^2), arg w = arg((p/2)/(m + eps)). Throws DomainError
/// outside the subcritical regime.
DiskParam omega_from_physics(const PhysicalParams& params);

struct NumberDistribution {
  std::vector<double> probability;
  double mean = 0.0;
  double variance = 0.0;
  double mandel_q = 0.0;        // NaN when the mean is zero
  double odd_even_ratio = 0.0;  // +inf when the even sector is empty
};

NumberDistribution number_distribution(const FockState& psi);

inline constexpr double kProbabilityFloor = 1e-300;

struct ScanOptions {
  int max_level = 10;         // report m = 0..max_level
  bool scale_dim = true;      // grow the dimension per point to meet tail_target
  double tail_target = 1e-12;
};

struct ScanRow {
  int level = 0;       // m
  double ratio = 0.0;  // P(2m+1) / P(2m) of the full state
};

struct ScanPoint {
  cplx omega;
  int dim = 0;
  std::vector<ScanRow> rows;
  NumberDistribution summary;
};

/// Per-level odd/even ratios and summary statistics of the full Mp(2) state
/// along a path of disk points. Points are evaluated concurrently; the output
/// keeps input order.
std::vector<ScanPoint> edge_limit_scan(std::span<const DiskParam> path,
                                       const TruncationConfig& cfg, const ScanOptions& opt = {});

}  // namespace mpfock
