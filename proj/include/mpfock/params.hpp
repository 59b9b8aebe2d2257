#pragma once

#include <array>

#include "mpfock/fock.hpp"

namespace mpfock {

// Parameters of the positive-energy wave equation. `p_vec` is the complex
// 3-momentum entering the 2x2 wave matrix; the preset constructor uses
// p_vec = (0, p, i*eps).
struct PhysicalParams {
  double p = 0.0;
  double m = 1.0;
  double eps = 0.0;
  std::array<cplx, 3> p_vec{};

  static PhysicalParams preset(double p, double m, double eps);
  static PhysicalParams general(const std::array<cplx, 3>& p_vec, double m);

  // m^2 - eps^2 as a complex number (negative when eps > m).
  cplx mass_gap() const { return cplx(m * m - eps * eps, 0.0); }

  // p^2 < |m^2 - eps^2| with m > |eps|.
  bool subcritical() const;
  bool critical() const { return m * m == eps * eps; }
};

}  // namespace mpfock
