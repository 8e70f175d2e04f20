#include "ptdx/ginocchio.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "ptdx/specfun.hpp"

namespace ptdx::ginocchio {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unwind(Complex raw, Complex ref) {
  const double turns = std::round((ref.imag() - raw.imag()) / kTwoPi);
  return raw + Complex(0.0, kTwoPi * turns);
}

// Branch data carried along the march: the continued square root of
// gamma^2 + sinh^2 u and the continued values of the two inverse-function
// terms of the implicit relation.
struct BranchContext {
  Complex R;
  Complex t1;
  Complex t2;
};

struct REval {
  Complex r;
  BranchContext ctx;
};

// r(u) locked to the branch context. The atanh term is evaluated in the
// cancellation-free form log((R + S)/gamma), using (R+S)(R-S) = gamma^2 on
// the side where R + S would cancel.
REval r_of_u(const GinocchioParams& p, Complex u, const BranchContext& ctx) {
  const double g2 = p.gamma * p.gamma;
  const Complex S = std::sinh(u);
  Complex R = std::sqrt(g2 + S * S);
  if (std::abs(R - ctx.R) > std::abs(R + ctx.R)) R = -R;

  // (R+S)(R-S) = gamma^2: evaluate whichever side does not cancel
  const Complex rps = R + S;
  const Complex rms = R - S;
  const Complex w =
      std::abs(rps) < std::abs(rms) ? p.gamma / rms : rps / p.gamma;
  const Complex t1 = unwind(std::log(w), ctx.t1);

  const double gm1 = g2 - 1.0;
  if (gm1 > 0.0) {
    const double sq = std::sqrt(gm1);
    const Complex raw = std::atan(sq * S / R);
    const double shift = std::round((ctx.t2 - raw).real() / kPi);
    const Complex t2 = raw + shift * kPi;
    return {(t1 + sq * t2) / g2, {R, t1, t2}};
  }
  return {t1 / g2, {R, t1, Complex{}}};
}

struct PointSolve {
  Complex u;
  double residual;
  BranchContext ctx;
};

PointSolve solve_point(const GinocchioParams& p, Complex r_target,
                       Complex u_start, BranchContext ctx) {
  const double g2 = p.gamma * p.gamma;
  Complex u = u_start;
  for (int it = 0; it < 50; ++it) {
    const REval ev = r_of_u(p, u, ctx);
    ctx = ev.ctx;
    const Complex f = ev.r - r_target;
    const double resid = std::abs(f);
    if (resid < 1e-13 * (1.0 + std::abs(r_target))) return {u, resid, ctx};
    const Complex dudr = g2 * std::cosh(u) / ctx.R;
    u -= f * dudr;
  }
  throw NumericalError("ginocchio::u_of_r: Newton did not converge near x = " +
                       std::to_string(r_target.real()));
}

// RK4 integration of du/dr = gamma^2 cosh u / R from the leftmost point,
// with the same sign-tracked square root.
double ode_cross_check(const GinocchioParams& p, const Contour& c,
                       const Eigen::VectorXcd& u_newton, Complex R0) {
  const double g2 = p.gamma * p.gamma;
  const int nsub = std::max(2, static_cast<int>(std::ceil(c.h() / 0.002)));
  const double hsub = c.h() / nsub;

  Complex u = u_newton[0];
  Complex Rref = R0;
  auto branch_R = [&](Complex uu) {
    const Complex S = std::sinh(uu);
    Complex R = std::sqrt(g2 + S * S);
    if (std::abs(R - Rref) > std::abs(R + Rref)) R = -R;
    return R;
  };
  auto slope = [&](Complex uu) { return g2 * std::cosh(uu) / branch_R(uu); };

  double worst = 0.0;
  for (int k = 1; k < c.n_points; ++k) {
    for (int j = 0; j < nsub; ++j) {
      const Complex k1 = slope(u);
      const Complex k2 = slope(u + 0.5 * hsub * k1);
      const Complex k3 = slope(u + 0.5 * hsub * k2);
      const Complex k4 = slope(u + hsub * k3);
      u += hsub / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      Rref = branch_R(u);
    }
    worst = std::max(worst, std::abs(u - u_newton[k]));
  }
  return worst;
}

void check_map(const GinocchioParams& p, const CoordinateMap& map) {
  if (std::abs(map.params.gamma - p.gamma) > 1e-15 ||
      std::abs(map.params.epsilon - p.epsilon) > 1e-15)
    throw PreconditionError(
        "ginocchio: coordinate map was built for different gamma/epsilon");
}

void check_contour(const GinocchioParams& p, const Contour& c) {
  if (std::abs(c.epsilon - p.epsilon) > 1e-15)
    throw PreconditionError(
        "ginocchio: contour epsilon does not match the parameter record");
}

// Jet of u(r) at a solved point: derivatives follow from
// du/dr = g(u) = gamma^2 cosh u (gamma^2 + sinh^2 u)^{-1/2}, with the stored
// continued log fixing the square-root branch.
Jet u_jet(const GinocchioParams& p, Complex u0, Complex log_g) {
  const double g2 = p.gamma * p.gamma;
  const Jet uu = jet_variable(u0);
  const Jet S = sinh(uu);
  const Jet C = cosh(uu);
  const Jet G = Complex(g2, 0.0) + S * S;
  const Jet g = g2 * C * exp(-0.5 * log_with_value(G, log_g));
  // g holds derivatives with respect to u; chain into r-derivatives
  const Complex up = g.d[0];
  const Complex upp = g.d[1] * up;
  const Complex uppp = g.d[2] * up * up + g.d[1] * upp;
  Jet r;
  r.d = {u0, up, upp, uppp};
  return r;
}

Complex level_mu(const GinocchioParams& p, int n, const char* who) {
  for (const GinLevel& lev : levels(p))
    if (lev.n == n) return lev.mu;
  throw PreconditionError(std::string(who) + ": n = " + std::to_string(n) +
                          " is not a bound level for these parameters");
}

}  // namespace

void validate(const GinocchioParams& p) {
  if (p.q != 1 && p.q != -1)
    throw PreconditionError("ginocchio: q must be +1 or -1");
  if (!(p.epsilon > 0.0))
    throw PreconditionError("ginocchio: epsilon must be positive");
  if (!(p.gamma >= 1.0))
    throw PreconditionError(
        "ginocchio: gamma < 1 is outside the supported regime");
  if (!(p.s > 0.0)) throw PreconditionError("ginocchio: s must be positive");
}

CoordinateMap u_of_r(const GinocchioParams& p, const Contour& c) {
  validate(p);
  check_contour(p, c);
  const double g2 = p.gamma * p.gamma;
  const double gm1 = g2 - 1.0;
  const int n = c.n_points;

  CoordinateMap map;
  map.params = p;
  map.contour = c;
  map.u.resize(n);
  map.residuals.resize(n);
  map.log_sinh_u.resize(n);
  map.log_cosh_u.resize(n);
  map.log_g2s2.resize(n);

  // asymptotic seed for the leftmost point: u ~ g2 r - ln(gamma) + sqrt(g2-1) atan(sqrt(g2-1))
  const double atan_term = gm1 > 0.0 ? std::sqrt(gm1) * std::atan(std::sqrt(gm1)) : 0.0;
  Complex u_start = g2 * c.z(0) - std::log(p.gamma) + atan_term;

  BranchContext ctx;
  ctx.R = -std::sinh(u_start);
  ctx.t1 = u_start + std::log(p.gamma);
  ctx.t2 = gm1 > 0.0 ? Complex(-std::atan(std::sqrt(gm1)), 0.0) : Complex{};

  Complex R0{};
  for (int k = 0; k < n; ++k) {
    const PointSolve ps = solve_point(p, c.z(k), u_start, ctx);
    map.u[k] = ps.u;
    map.residuals[k] = ps.residual;
    ctx = ps.ctx;
    if (k == 0) R0 = ctx.R;

    const Complex S = std::sinh(ps.u);
    const Complex C = std::cosh(ps.u);
    const Complex ls = std::log(S);
    const Complex lc = std::log(C);
    const Complex lg = std::log(g2 + S * S);
    map.log_sinh_u[k] = k == 0 ? ls : unwind(ls, map.log_sinh_u[k - 1]);
    map.log_cosh_u[k] = k == 0 ? lc : unwind(lc, map.log_cosh_u[k - 1]);
    map.log_g2s2[k] = k == 0 ? lg : unwind(lg, map.log_g2s2[k - 1]);

    if (k > 0 && !(map.u[k].real() > map.u[k - 1].real()))
      throw NumericalError(
          "ginocchio::u_of_r: Re u is not strictly increasing at x = " +
          std::to_string(c.x(k)));

    // Euler predictor as warm start for the next point
    const Complex dudr = g2 * C / ctx.R;
    u_start = ps.u + c.h() * dudr;
  }

  map.ode_deviation = ode_cross_check(p, c, map.u, R0);
  if (map.ode_deviation > 1e-8)
    throw NumericalError(
        "ginocchio::u_of_r: Newton and ODE integrations disagree by " +
        std::to_string(map.ode_deviation));
  return map;
}

Complex mu(const GinocchioParams& p, int n) {
  if (n < 0) throw PreconditionError("ginocchio::mu: n must be >= 0");
  const double g2 = p.gamma * p.gamma;
  const Complex w = 2.0 * n - static_cast<double>(p.q) * p.alpha + 1.0;
  const Complex under = w * w * (1.0 - g2) + g2 * (p.s + 0.5) * (p.s + 0.5);
  return (-w + std::sqrt(under)) / g2;
}

std::vector<GinLevel> levels(const GinocchioParams& p) {
  validate(p);
  const double cutoff =
      0.5 * (p.s + (static_cast<double>(p.q) * p.alpha).real() - 0.5);
  const double g4 = std::pow(p.gamma, 4);
  std::vector<GinLevel> out;
  for (int n = 0; static_cast<double>(n) < cutoff; ++n) {
    const Complex m = mu(p, n);
    if (m.real() > 0.0) out.push_back({n, m, -g4 * m * m});
  }
  return out;
}

SampledField potential(const GinocchioParams& p, const CoordinateMap& map) {
  validate(p);
  check_map(p, map);
  const double g2 = p.gamma * p.gamma;
  const double g4 = g2 * g2;
  const Complex a2 = p.alpha * p.alpha - 0.25;
  const int n = map.contour.n_points;

  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) {
    const Complex S = std::sinh(map.u[k]);
    const Complex C = std::cosh(map.u[k]);
    const Complex t = 1.0 / (g2 + S * S);
    const Complex coth2 = (C * C) / (S * S);
    const Complex bracket = Complex(p.s * (p.s + 1.0) + 1.0 - g2, 0.0) -
                            1.25 * g2 * (1.0 - g2) * (1.0 - g2) * t * t -
                            0.75 * (1.0 - g2) * (3.0 * g2 - 1.0) * t -
                            a2 * coth2;
    // overall sign fixed by the eigen-system: v_minus = W^2 - W' - beta built
    // from the printed wave functions reproduces -g^4/(g^2+sinh^2 u)[...],
    // the attractive well whose levels are -g^4 mu_n^2
    v[k] = -g4 * t * bracket;
  }
  return make_field(map.contour, "V_gin", std::move(v));
}

SampledField eigenfunction(const GinocchioParams& p, const CoordinateMap& map,
                           int n) {
  validate(p);
  check_map(p, map);
  const Complex mu_n = level_mu(p, n, "ginocchio::eigenfunction");
  const Complex qa = static_cast<double>(p.q) * p.alpha;
  const double g2 = p.gamma * p.gamma;
  auto mp = std::make_shared<const CoordinateMap>(map);

  AnalyticFn fn = [p, mp, mu_n, qa, g2, n](Complex z) {
    const int k = grid_index(mp->contour, z);
    const Jet u = u_jet(p, mp->u[k], mp->log_g2s2[k]);
    const Jet S = sinh(u);
    const Jet C = cosh(u);
    const Jet G = Complex(g2, 0.0) + S * S;
    const Jet Lg = log_with_value(G, mp->log_g2s2[k]);
    const Jet Ls = log_with_value(S, mp->log_sinh_u[k]);
    const Jet Lc = log_with_value(C, mp->log_cosh_u[k]);
    const Jet t = S / C;
    const Jet tau = 2.0 * t * t - Complex{1.0, 0.0};
    const Jet f = specfun::jacobi_value<Jet>(n, mu_n, -qa, tau);
    return exp(0.25 * Lg + (0.5 - qa) * Ls + (qa - 1.0 - mu_n) * Lc) * f;
  };
  return sample(map.contour, "gin_psi_" + std::to_string(n), fn);
}

SampledField superpotential(const GinocchioParams& p, const CoordinateMap& map,
                            int m) {
  validate(p);
  check_map(p, map);
  const Complex mu_m = level_mu(p, m, "ginocchio::superpotential");
  const Complex qa = static_cast<double>(p.q) * p.alpha;
  const double g2 = p.gamma * p.gamma;

  // f_m must stay away from zero on the contour
  {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int k = 0; k < map.contour.n_points; ++k) {
      const Complex S = std::sinh(map.u[k]);
      const Complex C = std::cosh(map.u[k]);
      const Complex tau = 2.0 * (S * S) / (C * C) - 1.0;
      const double a =
          std::abs(specfun::jacobi_value<Complex>(m, mu_m, -qa, tau));
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    if (lo < 1e-10 * hi)
      throw NumericalError(
          "ginocchio::superpotential: seed node on contour, f_m vanishes near "
          "a grid point");
  }

  auto mp = std::make_shared<const CoordinateMap>(map);
  AnalyticFn fn = [p, mp, mu_m, qa, g2, m](Complex z) {
    const int k = grid_index(mp->contour, z);
    const Jet u = u_jet(p, mp->u[k], mp->log_g2s2[k]);
    const Jet S = sinh(u);
    const Jet C = cosh(u);
    const Jet G = Complex(g2, 0.0) + S * S;
    const Jet Lg = log_with_value(G, mp->log_g2s2[k]);
    const Jet Rh = exp(0.5 * Lg);
    const Jet R3h = exp(1.5 * Lg);
    const Jet t = S / C;
    const Jet tau = 2.0 * t * t - Complex{1.0, 0.0};
    const Jet f = specfun::jacobi_value<Jet>(m, mu_m, -qa, tau);
    return -(g2 * S * C * C) / (2.0 * R3h) +
           g2 / Rh * ((mu_m + 0.5) * S + (qa - 0.5) / S) -
           shift_derivative(f) / f;
  };
  return sample(map.contour, "W_gin_" + std::to_string(m), fn);
}

SampledField partner_m1_printed(const GinocchioParams& p,
                                const CoordinateMap& map) {
  validate(p);
  check_map(p, map);
  const Complex mu1 = level_mu(p, 1, "ginocchio::partner_m1_printed");
  const Complex qa = static_cast<double>(p.q) * p.alpha;
  const double g2 = p.gamma * p.gamma;
  const double g4 = g2 * g2;
  const int n = map.contour.n_points;

  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) {
    const Complex S = std::sinh(map.u[k]);
    const Complex C = std::cosh(map.u[k]);
    const Complex t = 1.0 / (g2 + S * S);
    const Complex th2 = (S * S) / (C * C);
    const Complex sech2 = 1.0 / (C * C);
    const Complex coth2 = (C * C) / (S * S);
    const Complex f1 = qa - 1.0 + (mu1 - qa + 2.0) * th2;

    const Complex brace =
        Complex(p.s * (p.s + 1.0), 0.0) + g2 * (1.0 - 2.0 * mu1) + 2.0 * qa -
        2.0 - (p.alpha * p.alpha - 2.0 * qa + 0.75) * coth2 +
        1.75 * g2 * (1.0 - g2) * (1.0 - g2) * t * t -
        (1.0 - g2) * t * (g2 * (2.0 * mu1 - 2.75) + 2.25 - 2.0 * qa);

    v[k] = -g4 * t * brace - 4.0 * g4 * (mu1 - qa + 2.0) * t +
           4.0 * g4 * (mu1 - qa + 2.0) * (mu1 - qa + 2.0) * t * th2 * sech2 /
               (f1 * f1) -
           4.0 * g4 * (mu1 - qa + 2.0) * t / f1 * (-2.0 * th2 + g2 * t);
  }
  return make_field(map.contour, "v_plus_printed[m=1]", std::move(v));
}

PartnerM1 partner_m1(const GinocchioParams& p, const CoordinateMap& map) {
  validate(p);
  check_map(p, map);
  const Complex mu1 = level_mu(p, 1, "ginocchio::partner_m1");
  const double g4 = std::pow(p.gamma, 4);
  const Complex beta = g4 * mu1 * mu1;  // = -E_1

  PartnerM1 out{darboux::make_pair(eigenfunction(p, map, 1), -beta, beta, 1),
                0.0};
  const SampledField printed = partner_m1_printed(p, map);
  out.printed_deviation =
      (printed.values - out.pair.v_plus.values).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace ptdx::ginocchio
