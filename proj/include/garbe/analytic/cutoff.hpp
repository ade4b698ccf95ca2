#pragma once

#include "garbe/analytic/grid.hpp"

namespace garbe {

// s(t) = 6t⁵ − 15t⁴ + 10t³ on [0, 1], clamped outside. C² with s'(0) = s'(1) = 0.
double smoothstep(double t);
double smoothstep_derivative(double t);

// χ with χ = 0 on the closure of R1∖R2 and χ = 1 on the closure of R2∖R1,
// varying along one axis across the overlap strip.
class Cutoff {
 public:
  enum class Kind { constant, horizontal, vertical };

  Cutoff() = default;
  static Cutoff make(const Rectangle& r1, const Rectangle& r2);

  double chi(Complex z) const;
  // ∂χ/∂z̄ = ½(χ_x + iχ_y)
  Complex dchi_dzbar(Complex z) const;

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  Kind kind_ = Kind::constant;
  double value_ = 0.0;     // for Kind::constant
  double lo_ = 0.0, hi_ = 1.0;
  bool rising_ = true;     // χ = s(t) if rising, else 1 − s(t)
};

}  // namespace garbe
