#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "ptdx/errors.hpp"
#include "ptdx/jet.hpp"

namespace ptdx {

using AnalyticFn = std::function<Jet(Complex)>;

// Horizontal integration line z = x - i*epsilon sampled on a uniform real
// grid. n_points is forced odd so x = 0 and the reflection x <-> -x are
// exactly representable; PT checks rely on that pairing.
struct Contour {
  double epsilon = 1.0;
  double half_width = 8.0;
  int n_points = 1601;

  int size() const { return n_points; }
  int mid() const { return (n_points - 1) / 2; }
  double h() const { return half_width / static_cast<double>(mid()); }
  double x(int k) const { return (k - mid()) * h(); }
  Complex z(int k) const { return {x(k), -epsilon}; }
  Eigen::VectorXd xs() const;
  Eigen::VectorXcd zs() const;
  bool operator==(const Contour& o) const = default;
};

Contour build_contour(double epsilon, double half_width, int n_points);

// Complex values of a function (potential, wavefunction, superpotential) on
// a contour. `analytic`, when present, returns the full third-order jet at a
// contour point and is the preferred derivative source.
struct SampledField {
  Contour contour;
  Eigen::VectorXcd values;
  std::string label;
  AnalyticFn analytic;

  bool has_analytic() const { return static_cast<bool>(analytic); }
};

SampledField sample(const Contour& c, const std::string& label,
                    const AnalyticFn& f);
SampledField make_field(const Contour& c, const std::string& label,
                        Eigen::VectorXcd values, AnalyticFn analytic = {});

enum class DiffScheme { central_2nd_order, central_4th_order, analytic };

// d/dx along the contour (equals d/dz since dz/dx = 1). One-sided
// second-order stencils at the two ends.
SampledField differentiate(const SampledField& f, DiffScheme scheme);

// Composite Simpson quadrature of f over [-L, L] along the contour
// (dz = dx). Warns to stderr when the field has not decayed at the ends.
Complex integrate_contour(const SampledField& f);

Eigen::VectorXd simpson_weights(const Contour& c);

double sup_norm(const SampledField& f);

// max_k |f(-x_k) - conj(f(x_k))|; zero for a PT-symmetric field with real
// parameters.
double pt_asymmetry(const SampledField& f);

// Grid index of a contour point; throws if z is not a sample of c.
int grid_index(const Contour& c, Complex z);

}  // namespace ptdx
