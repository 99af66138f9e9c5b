#pragma once

// Dense 2x2 complex matrices and two-component spinors. The diabatic basis
// |1>, |2> maps to component indices 0 and 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace jt {

using cplx = std::complex<double>;

using Spinor = std::array<cplx, 2>;

struct Mat2 {
  // row-major: a[0]=m00, a[1]=m01, a[2]=m10, a[3]=m11
  std::array<cplx, 4> a{};

  constexpr cplx& operator()(int r, int c) { return a[2 * r + c]; }
  constexpr const cplx& operator()(int r, int c) const { return a[2 * r + c]; }

  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
};

namespace pauli {
inline constexpr Mat2 x{{0.0, 1.0, 1.0, 0.0}};
inline constexpr Mat2 y{{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}};
inline constexpr Mat2 z{{1.0, 0.0, 0.0, -1.0}};
}  // namespace pauli

inline Mat2 operator+(const Mat2& l, const Mat2& r) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.a[i] = l.a[i] + r.a[i];
  return m;
}

inline Mat2 operator-(const Mat2& l, const Mat2& r) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.a[i] = l.a[i] - r.a[i];
  return m;
}

inline Mat2 operator*(cplx s, const Mat2& r) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.a[i] = s * r.a[i];
  return m;
}

inline Mat2 operator*(const Mat2& l, const Mat2& r) {
  Mat2 m;
  m(0, 0) = l(0, 0) * r(0, 0) + l(0, 1) * r(1, 0);
  m(0, 1) = l(0, 0) * r(0, 1) + l(0, 1) * r(1, 1);
  m(1, 0) = l(1, 0) * r(0, 0) + l(1, 1) * r(1, 0);
  m(1, 1) = l(1, 0) * r(0, 1) + l(1, 1) * r(1, 1);
  return m;
}

inline Spinor operator*(const Mat2& m, const Spinor& v) {
  return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

inline Mat2 adjoint(const Mat2& m) {
  return {{std::conj(m(0, 0)), std::conj(m(1, 0)), std::conj(m(0, 1)),
           std::conj(m(1, 1))}};
}

inline Mat2 commutator(const Mat2& l, const Mat2& r) { return l * r - r * l; }

/// Largest elementwise modulus.
inline double max_abs(const Mat2& m) {
  double v = 0.0;
  for (const auto& e : m.a) v = std::max(v, std::abs(e));
  return v;
}

inline bool is_hermitian(const Mat2& m, double tol = 1e-14) {
  return max_abs(m - adjoint(m)) <= tol;
}

/// <l|r>, antilinear in the first argument.
inline cplx inner(const Spinor& l, const Spinor& r) {
  return std::conj(l[0]) * r[0] + std::conj(l[1]) * r[1];
}

inline double norm(const Spinor& v) { return std::sqrt(std::real(inner(v, v))); }

}  // namespace jt
