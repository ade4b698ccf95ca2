#include "garbe/analytic/cutoff.hpp"

#include "garbe/error.hpp"

namespace garbe {

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double smoothstep_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double u = t * (1.0 - t);
  return 30.0 * u * u;
}

Cutoff Cutoff::make(const Rectangle& r1, const Rectangle& r2) {
  auto overlap = open_overlap(r1, r2);
  if (!overlap) throw StructureError("cutoff: rectangles have empty open overlap");
  auto uni = rectangle_union(r1, r2);
  if (!uni) throw StructureError("cutoff: R1 ∪ R2 is not a rectangle");
  Cutoff out;
  if (r2.contains(r1)) {
    out.value_ = 1.0;  // R1∖R2 is empty
    return out;
  }
  if (r1.contains(r2)) {
    out.value_ = 0.0;
    return out;
  }
  if (r1.c == r2.c && r1.d == r2.d) {
    out.kind_ = Kind::horizontal;
    out.lo_ = overlap->a;
    out.hi_ = overlap->b;
    out.rising_ = r1.a < r2.a;
  } else {
    out.kind_ = Kind::vertical;
    out.lo_ = overlap->c;
    out.hi_ = overlap->d;
    out.rising_ = r1.c < r2.c;
  }
  return out;
}

double Cutoff::chi(Complex z) const {
  if (kind_ == Kind::constant) return value_;
  double s = kind_ == Kind::horizontal ? z.real() : z.imag();
  double v = smoothstep((s - lo_) / (hi_ - lo_));
  return rising_ ? v : 1.0 - v;
}

Complex Cutoff::dchi_dzbar(Complex z) const {
  if (kind_ == Kind::constant) return 0.0;
  double s = kind_ == Kind::horizontal ? z.real() : z.imag();
  double w = hi_ - lo_;
  double dv = smoothstep_derivative((s - lo_) / w) / w;
  if (!rising_) dv = -dv;
  return kind_ == Kind::horizontal ? Complex(0.5 * dv, 0.0) : Complex(0.0, 0.5 * dv);
}

}  // namespace garbe
