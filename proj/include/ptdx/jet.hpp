#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace ptdx {

using Complex = std::complex<double>;

// Principal argument remapped so the branch cut lies on the positive
// imaginary axis: arg in (-3*pi/2, pi/2]. Every base raised to a fractional
// power in this library (z, sinh u, cosh u) stays off that half-line along
// the contour Im z = -eps.
inline double arg_lower(Complex w) {
  double a = std::arg(w);
  if (a > std::numbers::pi / 2.0) a -= 2.0 * std::numbers::pi;
  return a;
}

inline Complex log_lower(Complex w) {
  return {std::log(std::abs(w)), arg_lower(w)};
}

inline Complex pow_lower(Complex base, Complex p) {
  if (base == Complex{0.0, 0.0}) return {0.0, 0.0};
  return std::exp(p * log_lower(base));
}

// PT-gauge power: same cut, but angles measured from the contour anchor -i,
// so the factor is real positive at z = -i and x -> -x acts on it as plain
// conjugation. Differs from pow_lower by the constant phase exp(i p pi/2),
// a unit-modulus normalization choice for the sampled wave functions.
inline Complex log_pt(Complex w) {
  return {std::log(std::abs(w)), arg_lower(w) + std::numbers::pi / 2.0};
}

inline Complex pow_pt(Complex base, Complex p) {
  if (base == Complex{0.0, 0.0}) return {0.0, 0.0};
  return std::exp(p * log_pt(base));
}

// Value and first three derivatives with respect to the contour parameter x
// (d/dx = d/dz along z = x - i*eps). Third order is as deep as any residual
// or superpotential computation here needs. Combinators built from
// lower-order inputs (e.g. derivative shifts) stop tracking the top slot.
struct Jet {
  std::array<Complex, 4> d{};

  Jet() = default;
  explicit Jet(Complex value) : d{value, Complex{}, Complex{}, Complex{}} {}

  Complex value() const { return d[0]; }
  Complex d1() const { return d[1]; }
  Complex d2() const { return d[2]; }
  Complex d3() const { return d[3]; }
};

inline Jet jet_variable(Complex z) {
  Jet j;
  j.d = {z, Complex{1.0, 0.0}, Complex{}, Complex{}};
  return j;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r;
  for (int i = 0; i < 4; ++i) r.d[i] = -a.d[i];
  return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.d[0] = a.d[0] * b.d[0];
  r.d[1] = a.d[1] * b.d[0] + a.d[0] * b.d[1];
  r.d[2] = a.d[2] * b.d[0] + 2.0 * a.d[1] * b.d[1] + a.d[0] * b.d[2];
  r.d[3] = a.d[3] * b.d[0] + 3.0 * a.d[2] * b.d[1] + 3.0 * a.d[1] * b.d[2] +
           a.d[0] * b.d[3];
  return r;
}

inline Jet operator/(const Jet& f, const Jet& g) {
  Jet q;
  q.d[0] = f.d[0] / g.d[0];
  q.d[1] = (f.d[1] - q.d[0] * g.d[1]) / g.d[0];
  q.d[2] = (f.d[2] - 2.0 * q.d[1] * g.d[1] - q.d[0] * g.d[2]) / g.d[0];
  q.d[3] = (f.d[3] - 3.0 * q.d[2] * g.d[1] - 3.0 * q.d[1] * g.d[2] -
            q.d[0] * g.d[3]) /
           g.d[0];
  return q;
}

inline Jet operator+(const Jet& a, Complex c) {
  Jet r = a;
  r.d[0] += c;
  return r;
}
inline Jet operator+(Complex c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, Complex c) { return a + (-c); }
inline Jet operator-(Complex c, const Jet& a) { return (-a) + c; }

inline Jet operator*(const Jet& a, Complex c) {
  Jet r;
  for (int i = 0; i < 4; ++i) r.d[i] = a.d[i] * c;
  return r;
}
inline Jet operator*(Complex c, const Jet& a) { return a * c; }
inline Jet operator/(const Jet& a, Complex c) { return a * (1.0 / c); }
inline Jet operator/(Complex c, const Jet& a) { return Jet(c) / a; }

// Faa di Bruno up to third order: g0..g3 are derivatives of the outer
// function at f.value().
inline Jet compose(Complex g0, Complex g1, Complex g2, Complex g3,
                   const Jet& f) {
  const Complex f1 = f.d[1], f2 = f.d[2], f3 = f.d[3];
  Jet r;
  r.d[0] = g0;
  r.d[1] = g1 * f1;
  r.d[2] = g2 * f1 * f1 + g1 * f2;
  r.d[3] = g3 * f1 * f1 * f1 + 3.0 * g2 * f1 * f2 + g1 * f3;
  return r;
}

inline Jet exp(const Jet& f) {
  const Complex e = std::exp(f.d[0]);
  return compose(e, e, e, e, f);
}

inline Jet sinh(const Jet& f) {
  const Complex s = std::sinh(f.d[0]);
  const Complex c = std::cosh(f.d[0]);
  return compose(s, c, s, c, f);
}

inline Jet cosh(const Jet& f) {
  const Complex s = std::sinh(f.d[0]);
  const Complex c = std::cosh(f.d[0]);
  return compose(c, s, c, s, f);
}

inline Jet pow_lower(const Jet& f, Complex p) {
  const Complex v = pow_lower(f.d[0], p);
  const Complex g1 = p * v / f.d[0];
  const Complex g2 = (p - 1.0) * g1 / f.d[0];
  const Complex g3 = (p - 2.0) * g2 / f.d[0];
  return compose(v, g1, g2, g3, f);
}

inline Jet pow_pt(const Jet& f, Complex p) {
  const Complex v = pow_pt(f.d[0], p);
  const Complex g1 = p * v / f.d[0];
  const Complex g2 = (p - 1.0) * g1 / f.d[0];
  const Complex g3 = (p - 2.0) * g2 / f.d[0];
  return compose(v, g1, g2, g3, f);
}

// Logarithm with an externally supplied, continuation-corrected value.
// Derivatives of log are rational in f, hence branch independent.
inline Jet log_with_value(const Jet& f, Complex log_value) {
  const Complex i1 = 1.0 / f.d[0];
  return compose(log_value, i1, -i1 * i1, 2.0 * i1 * i1 * i1, f);
}

inline Jet log_lower(const Jet& f) {
  return log_with_value(f, log_lower(f.d[0]));
}

// Jet of f' from the jet of f; the top slot is no longer tracked.
inline Jet shift_derivative(const Jet& f) {
  Jet r;
  r.d = {f.d[1], f.d[2], f.d[3], Complex{}};
  return r;
}

}  // namespace ptdx
