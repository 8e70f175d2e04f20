#pragma once

#include "ptdx/core.hpp"

namespace ptdx::darboux {

// Seed level, superpotential and the shifted partner pair
// v_minus = W^2 - W' - beta, v_plus = W^2 + W' - beta.
struct DarbouxPair {
  int m = 0;
  SampledField W;
  SampledField v_minus;
  SampledField v_plus;
  Complex beta{};
  Complex seed_energy{};
};

// W = -psi'/psi, using the field's analytic jet when available and a
// fourth-order stencil otherwise. Fails loudly on a vanishing seed.
SampledField superpotential_from_state(const SampledField& psi_m);

DarbouxPair make_pair(const SampledField& psi_m, Complex seed_energy,
                      Complex beta, int seed_level = 0);

// phi = psi_n' - (psi_m'/psi_m) psi_n, the Wronskian W(psi_m, psi_n)/psi_m.
SampledField map_state(const SampledField& psi_n, const SampledField& psi_m);

struct ShapeInvarianceReport {
  SampledField residual_field;  // vA - vB
  Complex offset{};             // its mean, the R(a1) candidate
  double flatness = 0.0;        // sup |residual - offset|
  bool shape_invariant = false;
};

ShapeInvarianceReport shape_invariance_residual(const SampledField& vA,
                                                const SampledField& vB);

}  // namespace ptdx::darboux
