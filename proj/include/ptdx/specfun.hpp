#pragma once

#include <complex>

#include "ptdx/errors.hpp"
#include "ptdx/jet.hpp"

namespace ptdx::specfun {

using ptdx::Complex;

struct PolyEvalResult {
  Complex value;
  Complex derivative;  // with respect to the argument
};

// (x)_k = x (x+1) ... (x+k-1)
Complex pochhammer(Complex x, int k);

// Associated Laguerre L_n^{(sigma)}(y) by the three-term degree recurrence.
// Works for any ring-like T (Complex or Jet); pole-free in sigma.
template <typename T>
T laguerre_value(int n, Complex sigma, const T& y) {
  T prev(Complex{1.0, 0.0});
  if (n == 0) return prev;
  T cur = (sigma + Complex{1.0, 0.0}) - y;
  for (int k = 1; k < n; ++k) {
    T next = ((Complex(2.0 * k + 1.0, 0.0) + sigma - y) * cur -
              (Complex(static_cast<double>(k), 0.0) + sigma) * prev) /
             Complex(k + 1.0, 0.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// True when no recurrence denominator 2k(k+a+b)(2k+a+b-2), k <= n, vanishes.
bool jacobi_recurrence_wellposed(int n, Complex a, Complex b);

// Jacobi P_n^{(a,b)}(z) by the degree recurrence; caller must check
// jacobi_recurrence_wellposed for scalar parameter edge cases.
template <typename T>
T jacobi_value(int n, Complex a, Complex b, const T& z) {
  T prev(Complex{1.0, 0.0});
  if (n == 0) return prev;
  T cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
  for (int k = 2; k <= n; ++k) {
    const Complex kk(static_cast<double>(k), 0.0);
    const Complex apb = a + b;
    const Complex c0 = 2.0 * kk * (kk + apb) * (2.0 * kk + apb - 2.0);
    const Complex c1 = (2.0 * kk + apb - 1.0) * (a * a - b * b);
    const Complex c2 =
        (2.0 * kk + apb - 1.0) * (2.0 * kk + apb) * (2.0 * kk + apb - 2.0);
    const Complex c3 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * (2.0 * kk + apb);
    T next = ((c2 * z + c1) * cur - c3 * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Recurrence evaluation with value and argument derivative
// d/dy L_n^{(sigma)} = -L_{n-1}^{(sigma+1)}.
PolyEvalResult laguerre(int n, Complex sigma, Complex y);

// Terminating Kummer series M(a, b, y), a = -n a non-positive integer.
Complex kummer_m(Complex a, Complex b, Complex y);

// Value and argument derivative; falls back to the hypergeometric sum when
// a recurrence denominator degenerates.
PolyEvalResult jacobi(int n, Complex a, Complex b, Complex z);

// Terminating Gauss series F(-n, B; C; w).
Complex gauss_2f1_poly(int n, Complex B, Complex C, Complex w);

// Hypergeometric-form oracles with Gamma-style prefactors; they report
// "prefactor pole" when sigma + k (resp. a + k) hits zero.
Complex laguerre_hyp(int n, Complex sigma, Complex y);
Complex jacobi_hyp(int n, Complex a, Complex b, Complex z);

}  // namespace ptdx::specfun
