#include "ptdx/oscillator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ptdx/specfun.hpp"

namespace ptdx::oscillator {

namespace {

Complex sigma_of(const OscillatorParams& p) {
  return -static_cast<double>(p.q) * p.alpha;
}

void check_contour(const OscillatorParams& p, const Contour& c) {
  if (std::abs(c.epsilon - p.epsilon) > 1e-15)
    throw PreconditionError(
        "oscillator: contour epsilon does not match the parameter record");
}

// smallest |L_m^{(sigma)}(z^2)| over the grid, relative to the largest
void check_laguerre_nonzero(const OscillatorParams& p, int m, const Contour& c,
                            const char* who) {
  const Complex sigma = sigma_of(p);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int k = 0; k < c.n_points; ++k) {
    const Complex z = c.z(k);
    const double a = std::abs(specfun::laguerre_value<Complex>(m, sigma, z * z));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (lo < 1e-10 * hi)
    throw NumericalError(std::string(who) + ": seed node on contour, L_" +
                         std::to_string(m) + " vanishes near a grid point");
}

}  // namespace

void validate(const OscillatorParams& p) {
  if (p.q != 1 && p.q != -1)
    throw PreconditionError("oscillator: q must be +1 or -1");
  if (!(p.epsilon > 0.0))
    throw PreconditionError("oscillator: epsilon must be positive");
  if (p.allow_exceptional) return;
  if (std::abs(p.alpha) < 1e-14)
    throw PreconditionError("oscillator: alpha = 0 needs allow_exceptional");
  const Complex qa = static_cast<double>(p.q) * p.alpha;
  if (std::abs(qa.imag()) < 1e-12) {
    const double r = qa.real();
    if (r >= 0.5 && std::abs(r - std::lround(r)) < 1e-12)
      throw PreconditionError(
          "oscillator: q*alpha is a positive integer (Laguerre parameter on a "
          "negative integer); needs allow_exceptional");
  }
}

Complex energy(const OscillatorParams& p, int n) {
  if (n < 0) throw PreconditionError("oscillator::energy: n must be >= 0");
  return Complex(4.0 * n + 2.0, 0.0) -
         2.0 * static_cast<double>(p.q) * p.alpha;
}

Complex beta(const OscillatorParams& p, int m) {
  if (m < 0) throw PreconditionError("oscillator::beta: m must be >= 0");
  return 2.0 * static_cast<double>(p.q) * p.alpha -
         Complex(2.0 * (2.0 * m + 1.0), 0.0);
}

SampledField potential(const OscillatorParams& p, const Contour& c) {
  validate(p);
  check_contour(p, c);
  const Complex cf = p.alpha * p.alpha - 0.25;
  AnalyticFn fn = [cf](Complex zz) {
    const Jet z = jet_variable(zz);
    const Jet z2 = z * z;
    return z2 + cf / z2;
  };
  return sample(c, "V", fn);
}

SampledField eigenfunction(const OscillatorParams& p, int n, const Contour& c) {
  validate(p);
  check_contour(p, c);
  if (n < 0)
    throw PreconditionError("oscillator::eigenfunction: n must be >= 0");
  const Complex sigma = sigma_of(p);
  AnalyticFn fn = [sigma, n](Complex zz) {
    const Jet z = jet_variable(zz);
    const Jet y = z * z;
    return exp(-0.5 * y) * pow_pt(z, sigma + 0.5) *
           specfun::laguerre_value<Jet>(n, sigma, y);
  };
  return sample(c, "psi_" + std::to_string(n) + (p.q > 0 ? "[q=+1]" : "[q=-1]"),
                fn);
}

SampledField superpotential(const OscillatorParams& p, int m, const Contour& c) {
  validate(p);
  check_contour(p, c);
  if (m < 0)
    throw PreconditionError("oscillator::superpotential: m must be >= 0");
  check_laguerre_nonzero(p, m, c, "oscillator::superpotential");
  const Complex sigma = sigma_of(p);
  AnalyticFn fn = [sigma, m](Complex zz) {
    const Jet z = jet_variable(zz);
    const Jet y = z * z;
    const Jet lm = specfun::laguerre_value<Jet>(m, sigma, y);
    const Jet lm1 = specfun::laguerre_value<Jet>(m + 1, sigma, y);
    return -z + (sigma + 2.0 * m + 1.5) / z -
           (2.0 * (m + 1.0)) / z * (lm1 / lm);
  };
  return sample(c, "W_" + std::to_string(m), fn);
}

darboux::DarbouxPair engine_pair(const OscillatorParams& p, int m,
                                 const Contour& c) {
  check_laguerre_nonzero(p, m, c, "oscillator::engine_pair");
  return darboux::make_pair(eigenfunction(p, m, c), energy(p, m), beta(p, m),
                            m);
}

namespace {

// shared leading part of Eqs. 33, 34, 38: z^2 + (alpha^2 - 2 q alpha + 3/4)/z^2 + 2
Jet satellite_part(const OscillatorParams& p, const Jet& z) {
  const Complex num =
      p.alpha * p.alpha - 2.0 * static_cast<double>(p.q) * p.alpha + 0.75;
  const Jet z2 = z * z;
  return z2 + num / z2 + Complex{2.0, 0.0};
}

AnalyticFn m2_closed_form(const OscillatorParams& p, bool squared_denominator) {
  const Complex sigma = -static_cast<double>(p.q) * p.alpha;
  OscillatorParams pc = p;
  return [pc, sigma, squared_denominator](Complex zz) {
    const Jet z = jet_variable(zz);
    const Jet y = z * z;
    const Jet l2 = specfun::laguerre_value<Jet>(2, sigma, y);
    const Jet den = squared_denominator ? l2 * l2 : l2;
    const Jet shifted = y - (sigma + 2.0);
    return satellite_part(pc, z) - 4.0 * (3.0 * y - (sigma + 2.0)) / l2 +
           8.0 * y * (shifted * shifted) / den;
  };
}

}  // namespace

SampledField partner_closed(const OscillatorParams& p, int m, const Contour& c) {
  validate(p);
  check_contour(p, c);
  const Complex sigma = sigma_of(p);
  switch (m) {
    case 0: {
      AnalyticFn fn = [p](Complex zz) {
        return satellite_part(p, jet_variable(zz));
      };
      return sample(c, "v_plus_closed[m=0]", fn);
    }
    case 1: {
      // denominator (-q alpha + 1) - z^2 = L_1^{(sigma)}(z^2)
      check_laguerre_nonzero(p, 1, c, "oscillator::partner_closed");
      AnalyticFn fn = [p, sigma](Complex zz) {
        const Jet z = jet_variable(zz);
        const Jet d = (sigma + 1.0) - z * z;
        return satellite_part(p, z) + 4.0 / d + 8.0 * (z * z) / (d * d);
      };
      return sample(c, "v_plus_closed[m=1]", fn);
    }
    case 2: {
      check_laguerre_nonzero(p, 2, c, "oscillator::partner_closed");
      return sample(c, "v_plus_closed[m=2,printed]",
                    m2_closed_form(p, /*squared_denominator=*/false));
    }
    default:
      throw PreconditionError(
          "oscillator::partner_closed: printed forms exist for m in {0,1,2}");
  }
}

double closed_form_deviation(const OscillatorParams& p, int m,
                             const Contour& c) {
  const SampledField closed = partner_closed(p, m, c);
  const darboux::DarbouxPair pair = engine_pair(p, m, c);
  return (closed.values - pair.v_plus.values).cwiseAbs().maxCoeff();
}

GroundState partner_ground_state(const OscillatorParams& p, const Contour& c) {
  validate(p);
  check_contour(p, c);
  check_laguerre_nonzero(p, 1, c, "oscillator::partner_ground_state");
  const Complex sigma = sigma_of(p);
  AnalyticFn fn = [sigma](Complex zz) {
    const Jet z = jet_variable(zz);
    const Jet d = (sigma + 1.0) - z * z;
    return 2.0 / d * exp(-0.5 * (z * z)) * pow_pt(z, sigma + 1.5);
  };
  GroundState gs{sample(c, "phi_0", fn),
                 Complex(2.0, 0.0) - 2.0 * static_cast<double>(p.q) * p.alpha};
  return gs;
}

SampledField map_excited(const OscillatorParams& p, int m, int n,
                         const Contour& c) {
  validate(p);
  if (n == m)
    throw PreconditionError(
        "oscillator::map_excited: state annihilated by intertwiner (n = m)");
  // the mapped state solves the v_plus problem at the original energy E_nq
  return darboux::map_state(eigenfunction(p, n, c), eigenfunction(p, m, c));
}

M2Discrepancy partner_m2_discrepancy(const OscillatorParams& p,
                                     const Contour& c) {
  const darboux::DarbouxPair pair = engine_pair(p, 2, c);
  const SampledField printed =
      sample(c, "m2_printed", m2_closed_form(p, false));
  const SampledField squared =
      sample(c, "m2_squared", m2_closed_form(p, true));
  M2Discrepancy d;
  d.printed = (printed.values - pair.v_plus.values).cwiseAbs().maxCoeff();
  d.squared_denominator =
      (squared.values - pair.v_plus.values).cwiseAbs().maxCoeff();
  return d;
}

}  // namespace ptdx::oscillator
