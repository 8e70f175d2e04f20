#pragma once

#include <vector>

#include "ptdx/core.hpp"

namespace ptdx::spectra {

// Dirichlet 3-point discretization of -d^2/dx^2 + v along the contour,
// complex symmetric tridiagonal over the interior points.
struct DiscreteHamiltonian {
  Contour contour;
  Eigen::VectorXcd diagonal;      // 2/h^2 + v_k
  Eigen::VectorXcd off_diagonal;  // -1/h^2
};

DiscreteHamiltonian discretize(const SampledField& v);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;  // sorted by real part
  int n_requested = 0;
  double half_width = 0.0;
  int n_points = 0;
  double grid_h = 0.0;
  double max_imag = 0.0;  // largest |Im| among the reported levels
};

// k eigenvalues of smallest real part via implicitly shifted QL sweeps with
// complex-orthogonal rotations on the tridiagonal matrix.
SpectrumReport eigen_spectrum(const DiscreteHamiltonian& H, int k);

// inverse-iteration eigenvector for an already computed eigenvalue
Eigen::VectorXcd eigenvector(const DiscreteHamiltonian& H, Complex lambda);

// ||-psi'' + (v - E) psi||_inf / ||psi||_inf, analytic derivatives when
// available
double residual(const SampledField& v, const SampledField& psi, Complex E);

struct MatchVerdict {
  struct MatchedPair {
    Complex a;
    Complex b;
    double delta;  // |a - b|
  };
  std::vector<MatchedPair> matched_pairs;
  std::vector<Complex> missing_in_B;
  double tolerance = 0.0;
  bool verdict = false;
};

// Greedy nearest-neighbor pairing by real part; verdict is true iff every
// matched |delta| < tol and the unmatched levels of A are exactly the
// declared skip set.
MatchVerdict match_spectra(const SpectrumReport& A, const SpectrumReport& B,
                           const std::vector<Complex>& skip, double tol);

// G_mn = int phi_m phi_n dx (no conjugation), diagonal rescaled to unit
// modulus before reporting.
Eigen::MatrixXcd gram_cproduct(const std::vector<SampledField>& states);

// Eigenvalues of a complex symmetric tridiagonal matrix; exposed for tests.
std::vector<Complex> tridiag_eigenvalues(Eigen::VectorXcd diag,
                                         Eigen::VectorXcd off);

}  // namespace ptdx::spectra
