#pragma once

#include <vector>

#include "ptdx/core.hpp"
#include "ptdx/darboux.hpp"

namespace ptdx::ginocchio {

struct GinocchioParams {
  double gamma = 1.0;  // shape parameter, >= 1
  double s = 2.0;      // depth parameter, > 0
  Complex alpha{0.75, 0.0};
  int q = 1;
  double epsilon = 1.0;  // contour shift, r = x - i*eps
};

void validate(const GinocchioParams& p);

// u(r) on the contour, one Newton solve per grid point marching from the
// most negative x, plus a Runge-Kutta cross-check of du/dr. Winding-corrected
// logarithms of sinh u, cosh u and gamma^2 + sinh^2 u are stored so that
// fractional powers follow the analytic continuation along the contour.
struct CoordinateMap {
  GinocchioParams params;
  Contour contour;
  Eigen::VectorXcd u;
  Eigen::VectorXd residuals;  // |r(u_k) - r_k|
  Eigen::VectorXcd log_sinh_u;
  Eigen::VectorXcd log_cosh_u;
  Eigen::VectorXcd log_g2s2;
  double ode_deviation = 0.0;  // sup_k |u_newton - u_rk4|

  double max_residual() const {
    return residuals.size() ? residuals.maxCoeff() : 0.0;
  }
};

CoordinateMap u_of_r(const GinocchioParams& p, const Contour& c);

struct GinLevel {
  int n;
  Complex mu;
  Complex energy;  // -gamma^4 mu^2
};

Complex mu(const GinocchioParams& p, int n);

// all n with n < (s + q alpha - 1/2)/2 and Re mu_n > 0; may be empty
std::vector<GinLevel> levels(const GinocchioParams& p);

SampledField potential(const GinocchioParams& p, const CoordinateMap& map);

// psi_n = (g^2+sinh^2 u)^{1/4} (sinh u)^{-q a + 1/2} (cosh u)^{-mu_n + q a - 1} f_n,
// f_n = P_n^{(mu_n, -q a)}(2 tanh^2 u - 1), N_n = 1
SampledField eigenfunction(const GinocchioParams& p, const CoordinateMap& map,
                           int n);

// closed-form W_mq with all u-derivatives converted through du/dr
SampledField superpotential(const GinocchioParams& p, const CoordinateMap& map,
                            int m);

struct PartnerM1 {
  darboux::DarbouxPair pair;  // generic engine result (authoritative)
  double printed_deviation;   // sup-norm gap to the printed m = 1 closed form
};
PartnerM1 partner_m1(const GinocchioParams& p, const CoordinateMap& map);

// the printed m = 1 closed form sampled verbatim (typo probe input)
SampledField partner_m1_printed(const GinocchioParams& p,
                                const CoordinateMap& map);

}  // namespace ptdx::ginocchio
