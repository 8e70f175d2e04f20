#include "ptdx/core.hpp"

#include <cmath>
#include <iostream>

namespace ptdx {

Eigen::VectorXd Contour::xs() const {
  Eigen::VectorXd out(n_points);
  for (int k = 0; k < n_points; ++k) out[k] = x(k);
  return out;
}

Eigen::VectorXcd Contour::zs() const {
  Eigen::VectorXcd out(n_points);
  for (int k = 0; k < n_points; ++k) out[k] = z(k);
  return out;
}

Contour build_contour(double epsilon, double half_width, int n_points) {
  if (!(epsilon > 0.0))
    throw PreconditionError("build_contour: epsilon must be positive");
  if (!(half_width > 0.0))
    throw PreconditionError("build_contour: half_width must be positive");
  if (n_points < 3)
    throw PreconditionError("build_contour: need at least 3 points");
  if (n_points % 2 == 0)
    throw PreconditionError(
        "build_contour: n_points must be odd so x = 0 is a sample");
  return Contour{epsilon, half_width, n_points};
}

SampledField make_field(const Contour& c, const std::string& label,
                        Eigen::VectorXcd values, AnalyticFn analytic) {
  if (values.size() != c.n_points)
    throw PreconditionError("make_field: value count does not match the grid");
  if (!values.allFinite())
    throw PreconditionError("make_field: field '" + label +
                            "' contains non-finite values");
  return SampledField{c, std::move(values), label, std::move(analytic)};
}

SampledField sample(const Contour& c, const std::string& label,
                    const AnalyticFn& f) {
  Eigen::VectorXcd values(c.n_points);
  for (int k = 0; k < c.n_points; ++k) values[k] = f(c.z(k)).value();
  return make_field(c, label, std::move(values), f);
}

SampledField differentiate(const SampledField& f, DiffScheme scheme) {
  const Contour& c = f.contour;
  const int n = c.n_points;
  const double h = c.h();
  Eigen::VectorXcd out(n);

  switch (scheme) {
    case DiffScheme::analytic: {
      if (!f.has_analytic())
        throw PreconditionError(
            "differentiate: analytic scheme requires an analytic evaluator");
      for (int k = 0; k < n; ++k) out[k] = f.analytic(c.z(k)).d1();
      AnalyticFn deriv = [g = f.analytic](Complex z) {
        return shift_derivative(g(z));
      };
      return make_field(c, f.label + "'", std::move(out), std::move(deriv));
    }
    case DiffScheme::central_2nd_order: {
      const Eigen::VectorXcd& v = f.values;
      out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
      out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
      for (int k = 1; k < n - 1; ++k) out[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
      return make_field(c, f.label + "'", std::move(out));
    }
    case DiffScheme::central_4th_order: {
      if (n < 5)
        throw PreconditionError(
            "differentiate: 4th-order scheme needs at least 5 points");
      const Eigen::VectorXcd& v = f.values;
      out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
      out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
      out[1] = (v[2] - v[0]) / (2.0 * h);
      out[n - 2] = (v[n - 1] - v[n - 3]) / (2.0 * h);
      for (int k = 2; k < n - 2; ++k)
        out[k] = (v[k - 2] - 8.0 * v[k - 1] + 8.0 * v[k + 1] - v[k + 2]) /
                 (12.0 * h);
      return make_field(c, f.label + "'", std::move(out));
    }
  }
  throw PreconditionError("differentiate: unknown scheme");
}

Eigen::VectorXd simpson_weights(const Contour& c) {
  const int n = c.n_points;
  Eigen::VectorXd w(n);
  const double third = c.h() / 3.0;
  w[0] = w[n - 1] = third;
  for (int k = 1; k < n - 1; ++k) w[k] = (k % 2 == 1 ? 4.0 : 2.0) * third;
  return w;
}

Complex integrate_contour(const SampledField& f) {
  const int n = f.contour.n_points;
  const double maxabs = f.values.cwiseAbs().maxCoeff();
  const double ends = std::max(std::abs(f.values[0]), std::abs(f.values[n - 1]));
  if (maxabs > 0.0 && ends > 1e-8 * maxabs) {
    std::cerr << "[ptdx] warning: integrate_contour('" << f.label
              << "'): field has not decayed at the grid ends (|f|_end/|f|_max = "
              << ends / maxabs << ")\n";
  }
  const Eigen::VectorXd w = simpson_weights(f.contour);
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) acc += w[k] * f.values[k];
  return acc;
}

double sup_norm(const SampledField& f) {
  return f.values.cwiseAbs().maxCoeff();
}

double pt_asymmetry(const SampledField& f) {
  const int n = f.contour.n_points;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex mirrored = f.values[n - 1 - k];
    worst = std::max(worst, std::abs(mirrored - std::conj(f.values[k])));
  }
  return worst;
}

int grid_index(const Contour& c, Complex z) {
  if (std::abs(z.imag() + c.epsilon) > 1e-9)
    throw PreconditionError("grid_index: point is off the contour line");
  const double pos = z.real() / c.h() + c.mid();
  const int k = static_cast<int>(std::lround(pos));
  if (k < 0 || k >= c.n_points || std::abs(pos - k) > 1e-6)
    throw PreconditionError("grid_index: point is not a grid sample");
  return k;
}

}  // namespace ptdx
