#include "ptdx/specfun.hpp"

#include <cmath>
#include <string>

namespace ptdx::specfun {

namespace {

constexpr double kPoleTol = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// a must be -n for a terminating series; returns n.
int terminating_order(Complex a, const char* who) {
  const double re = a.real();
  const int n = static_cast<int>(std::lround(-re));
  if (n < 0 || std::abs(a - Complex(-static_cast<double>(n), 0.0)) > 1e-9)
    throw PreconditionError(std::string(who) +
                            ": first parameter must be a non-positive integer "
                            "(terminating series)");
  return n;
}

}  // namespace

Complex pochhammer(Complex x, int k) {
  Complex p{1.0, 0.0};
  for (int j = 0; j < k; ++j) p *= x + static_cast<double>(j);
  return p;
}

bool jacobi_recurrence_wellposed(int n, Complex a, Complex b) {
  for (int k = 2; k <= n; ++k) {
    const Complex apb = a + b;
    const Complex den = 2.0 * static_cast<double>(k) *
                        (static_cast<double>(k) + apb) *
                        (2.0 * static_cast<double>(k) + apb - 2.0);
    if (std::abs(den) < 1e-10 * (1.0 + std::norm(apb))) return false;
  }
  return true;
}

PolyEvalResult laguerre(int n, Complex sigma, Complex y) {
  if (n < 0) throw PreconditionError("laguerre: n must be non-negative");
  PolyEvalResult r;
  r.value = laguerre_value<Complex>(n, sigma, y);
  r.derivative =
      n == 0 ? Complex{0.0, 0.0} : -laguerre_value<Complex>(n - 1, sigma + 1.0, y);
  return r;
}

Complex kummer_m(Complex a, Complex b, Complex y) {
  const int n = terminating_order(a, "kummer_m");
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const Complex bk = b + static_cast<double>(k);
    if (std::abs(bk) < kPoleTol * (1.0 + std::abs(b)))
      throw NumericalError("kummer_m: parameter pole, (b)_k vanishes at k = " +
                           std::to_string(k + 1));
    term *= (a + static_cast<double>(k)) / bk * y / (k + 1.0);
    sum += term;
  }
  return sum;
}

Complex gauss_2f1_poly(int n, Complex B, Complex C, Complex w) {
  if (n < 0) throw PreconditionError("gauss_2f1_poly: n must be non-negative");
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const Complex ck = C + static_cast<double>(k);
    if (std::abs(ck) < kPoleTol * (1.0 + std::abs(C)))
      throw NumericalError(
          "gauss_2f1_poly: parameter pole, (C)_k vanishes at k = " +
          std::to_string(k + 1));
    term *= (Complex(-static_cast<double>(n), 0.0) + static_cast<double>(k)) *
            (B + static_cast<double>(k)) / ck * w / (k + 1.0);
    sum += term;
  }
  return sum;
}

Complex laguerre_hyp(int n, Complex sigma, Complex y) {
  if (n < 0) throw PreconditionError("laguerre_hyp: n must be non-negative");
  for (int k = 1; k <= n; ++k) {
    if (std::abs(sigma + static_cast<double>(k)) < 1e-10)
      throw NumericalError(
          "laguerre_hyp: prefactor pole, sigma + k vanishes at k = " +
          std::to_string(k));
  }
  const Complex prefactor = pochhammer(sigma + 1.0, n) / factorial(n);
  return prefactor * kummer_m(Complex(-static_cast<double>(n), 0.0),
                              sigma + 1.0, y);
}

Complex jacobi_hyp(int n, Complex a, Complex b, Complex z) {
  if (n < 0) throw PreconditionError("jacobi_hyp: n must be non-negative");
  for (int k = 1; k <= n; ++k) {
    if (std::abs(a + static_cast<double>(k)) < 1e-10)
      throw NumericalError(
          "jacobi_hyp: prefactor pole, a + k vanishes at k = " +
          std::to_string(k));
  }
  const Complex prefactor = pochhammer(a + 1.0, n) / factorial(n);
  return prefactor *
         gauss_2f1_poly(n, static_cast<double>(n) + a + b + 1.0, a + 1.0,
                        0.5 * (1.0 - z));
}

PolyEvalResult jacobi(int n, Complex a, Complex b, Complex z) {
  if (n < 0) throw PreconditionError("jacobi: n must be non-negative");
  PolyEvalResult r;
  if (jacobi_recurrence_wellposed(n, a, b)) {
    r.value = jacobi_value<Complex>(n, a, b, z);
  } else {
    r.value = jacobi_hyp(n, a, b, z);
  }
  if (n == 0) {
    r.derivative = Complex{0.0, 0.0};
  } else {
    const Complex factor = 0.5 * (static_cast<double>(n) + a + b + 1.0);
    if (jacobi_recurrence_wellposed(n - 1, a + 1.0, b + 1.0)) {
      r.derivative = factor * jacobi_value<Complex>(n - 1, a + 1.0, b + 1.0, z);
    } else {
      r.derivative = factor * jacobi_hyp(n - 1, a + 1.0, b + 1.0, z);
    }
  }
  return r;
}

}  // namespace ptdx::specfun
