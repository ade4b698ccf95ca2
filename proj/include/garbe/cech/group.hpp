#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <string>

#include "garbe/algebra/matrix.hpp"

namespace garbe {

// Group operations as used by the cochain algebra. Exact groups report
// distance 0 or 1; metric groups report a genuine distance.
template <class G>
concept Group = requires(const G& g, const typename G::Element& a,
                         const typename G::Element& b) {
  { g.identity() } -> std::convertible_to<typename G::Element>;
  { g.multiply(a, b) } -> std::convertible_to<typename G::Element>;
  { g.invert(a) } -> std::convertible_to<typename G::Element>;
  { g.distance(a, b) } -> std::convertible_to<double>;
  { G::exact } -> std::convertible_to<bool>;
};

// Symmetric group on N letters; an element stores its one-line form p[x] = p(x)
// (0-based). multiply(a, b) = a∘b, i.e. b acts first.
template <int N>
class PermutationGroup {
 public:
  using Element = std::array<std::uint8_t, N>;
  static constexpr bool exact = true;

  Element identity() const {
    Element e{};
    for (int i = 0; i < N; ++i) e[i] = static_cast<std::uint8_t>(i);
    return e;
  }
  Element multiply(const Element& a, const Element& b) const {
    Element c{};
    for (int i = 0; i < N; ++i) c[i] = a[b[i]];
    return c;
  }
  Element invert(const Element& a) const {
    Element c{};
    for (int i = 0; i < N; ++i) c[a[i]] = static_cast<std::uint8_t>(i);
    return c;
  }
  double distance(const Element& a, const Element& b) const { return a == b ? 0.0 : 1.0; }
};

using S3 = PermutationGroup<3>;

// GL(2, F_P) with entries stored row-major as {a, b, c, d}.
template <int P>
class GL2Fp {
 public:
  using Element = std::array<std::uint8_t, 4>;
  static constexpr bool exact = true;

  static int mod(int x) { return ((x % P) + P) % P; }
  static int det(const Element& m) { return mod(m[0] * m[3] - m[1] * m[2]); }
  static int inverse_mod(int x) {
    for (int y = 1; y < P; ++y)
      if (mod(x * y) == 1) return y;
    return 0;
  }

  Element identity() const { return {1, 0, 0, 1}; }
  Element multiply(const Element& x, const Element& y) const {
    return {static_cast<std::uint8_t>(mod(x[0] * y[0] + x[1] * y[2])),
            static_cast<std::uint8_t>(mod(x[0] * y[1] + x[1] * y[3])),
            static_cast<std::uint8_t>(mod(x[2] * y[0] + x[3] * y[2])),
            static_cast<std::uint8_t>(mod(x[2] * y[1] + x[3] * y[3]))};
  }
  Element invert(const Element& x) const {
    int di = inverse_mod(det(x));
    return {static_cast<std::uint8_t>(mod(di * x[3])), static_cast<std::uint8_t>(mod(-di * x[1])),
            static_cast<std::uint8_t>(mod(-di * x[2])), static_cast<std::uint8_t>(mod(di * x[0]))};
  }
  double distance(const Element& a, const Element& b) const { return a == b ? 0.0 : 1.0; }
};

using GL2F5 = GL2Fp<5>;

// Invertible n×n complex matrices with the Frobenius distance.
class MatrixGroup {
 public:
  using Element = Matrix;
  static constexpr bool exact = false;

  explicit MatrixGroup(int dim) : dim_(dim) {}
  int dim() const { return dim_; }

  Element identity() const { return garbe::identity(dim_); }
  Element multiply(const Element& a, const Element& b) const { return a * b; }
  Element invert(const Element& a) const { return checked_inverse(a, "matrix group"); }
  double distance(const Element& a, const Element& b) const { return (a - b).norm(); }

 private:
  int dim_;
};

}  // namespace garbe
