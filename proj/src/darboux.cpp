#include "ptdx/darboux.hpp"

#include <string>

namespace ptdx::darboux {

namespace {

constexpr double kSeedFloor = 1e-300;

void check_seed_nonzero(const SampledField& psi) {
  for (int k = 0; k < psi.contour.n_points; ++k) {
    if (std::abs(psi.values[k]) < kSeedFloor)
      throw NumericalError("darboux: seed vanishes on contour at x = " +
                           std::to_string(psi.contour.x(k)));
  }
}

}  // namespace

SampledField superpotential_from_state(const SampledField& psi_m) {
  check_seed_nonzero(psi_m);
  const Contour& c = psi_m.contour;

  if (psi_m.has_analytic()) {
    AnalyticFn w_fn = [g = psi_m.analytic](Complex z) {
      const Jet psi = g(z);
      return -(shift_derivative(psi) / psi);
    };
    return sample(c, "W[" + psi_m.label + "]", w_fn);
  }

  const SampledField dpsi = differentiate(psi_m, DiffScheme::central_4th_order);
  Eigen::VectorXcd w = (-(dpsi.values.array() / psi_m.values.array())).matrix();
  return make_field(c, "W[" + psi_m.label + "]", std::move(w));
}

DarbouxPair make_pair(const SampledField& psi_m, Complex seed_energy,
                      Complex beta, int seed_level) {
  SampledField W = superpotential_from_state(psi_m);
  const Contour& c = psi_m.contour;

  Eigen::VectorXcd dW;
  if (W.has_analytic()) {
    dW.resize(c.n_points);
    for (int k = 0; k < c.n_points; ++k) dW[k] = W.analytic(c.z(k)).d1();
  } else {
    dW = differentiate(W, DiffScheme::central_4th_order).values;
  }

  const Eigen::ArrayXcd w2 = W.values.array().square();
  Eigen::VectorXcd vminus = (w2 - dW.array() - beta).matrix();
  Eigen::VectorXcd vplus = (w2 + dW.array() - beta).matrix();

  DarbouxPair pair;
  pair.m = seed_level;
  pair.v_minus = make_field(c, "v_minus[m=" + std::to_string(seed_level) + "]",
                            std::move(vminus));
  pair.v_plus = make_field(c, "v_plus[m=" + std::to_string(seed_level) + "]",
                           std::move(vplus));
  pair.W = std::move(W);
  pair.beta = beta;
  pair.seed_energy = seed_energy;
  return pair;
}

SampledField map_state(const SampledField& psi_n, const SampledField& psi_m) {
  if (!(psi_n.contour == psi_m.contour))
    throw PreconditionError("map_state: contour mismatch");
  check_seed_nonzero(psi_m);
  const Contour& c = psi_n.contour;
  const std::string label = "A[" + psi_m.label + "](" + psi_n.label + ")";

  if (psi_n.has_analytic() && psi_m.has_analytic()) {
    AnalyticFn phi_fn = [fn = psi_n.analytic, fm = psi_m.analytic](Complex z) {
      const Jet jn = fn(z);
      const Jet jm = fm(z);
      // valid through second order; residual checks use no more
      return shift_derivative(jn) - (shift_derivative(jm) / jm) * jn;
    };
    return sample(c, label, phi_fn);
  }

  const SampledField dn = differentiate(psi_n, DiffScheme::central_4th_order);
  const SampledField dm = differentiate(psi_m, DiffScheme::central_4th_order);
  Eigen::VectorXcd phi =
      (dn.values.array() -
       (dm.values.array() / psi_m.values.array()) * psi_n.values.array())
          .matrix();
  return make_field(c, label, std::move(phi));
}

ShapeInvarianceReport shape_invariance_residual(const SampledField& vA,
                                                const SampledField& vB) {
  if (!(vA.contour == vB.contour))
    throw PreconditionError("shape_invariance_residual: contour mismatch");

  Eigen::VectorXcd diff = vA.values - vB.values;
  const Complex offset = diff.mean();
  const double flatness = (diff.array() - offset).abs().maxCoeff();

  ShapeInvarianceReport report;
  report.residual_field = make_field(vA.contour, vA.label + " - " + vB.label,
                                     std::move(diff));
  report.offset = offset;
  report.flatness = flatness;
  report.shape_invariant = flatness < 1e-8;
  return report;
}

}  // namespace ptdx::darboux
