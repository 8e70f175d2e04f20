#include "ptdx/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace ptdx::spectra {

DiscreteHamiltonian discretize(const SampledField& v) {
  const Contour& c = v.contour;
  const int interior = c.n_points - 2;
  if (interior < 1)
    throw PreconditionError("discretize: no interior points");
  const double inv_h2 = 1.0 / (c.h() * c.h());

  DiscreteHamiltonian H;
  H.contour = c;
  H.diagonal.resize(interior);
  for (int k = 0; k < interior; ++k)
    H.diagonal[k] = 2.0 * inv_h2 + v.values[k + 1];
  H.off_diagonal = Eigen::VectorXcd::Constant(interior - 1, -inv_h2);
  return H;
}

// Implicitly shifted QL for a complex symmetric tridiagonal matrix, after
// the classic imtql sweep with complex-orthogonal rotations (c^2 + s^2 = 1).
// The shift comes from the leading 2x2 of the active block (Wilkinson
// style, branch chosen for the larger |denominator|). Negligible
// subdiagonals deflate; a stalled block gets a mild exceptional shift every
// tenth sweep and the whole solve aborts after a 30*n iteration budget.
std::vector<Complex> tridiag_eigenvalues(Eigen::VectorXcd d,
                                         Eigen::VectorXcd off) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (off.size() != n - 1)
    throw PreconditionError(
        "tridiag_eigenvalues: off-diagonal must have n-1 entries");

  Eigen::VectorXcd e(n);
  for (int i = 0; i + 1 < n; ++i) e[i] = off[i];
  e[n - 1] = Complex{};

  const double eps = std::numeric_limits<double>::epsilon();
  const long budget = 30L * n;
  long used = 0;

  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    bool force_exceptional = false;
    while (true) {
      int m = l;
      while (m < n - 1) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++used > budget)
        throw NumericalError(
            "tridiag_eigenvalues: QL stalled on block [" + std::to_string(l) +
            ", " + std::to_string(m) + "] after " + std::to_string(budget) +
            " iterations");
      ++sweeps;

      Complex g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      Complex r = std::sqrt(g * g + 1.0);
      const Complex denom = std::abs(g + r) >= std::abs(g - r) ? g + r : g - r;
      g = d[m] - d[l] + e[l] / denom;
      if (force_exceptional || sweeps % 10 == 0) {
        g += 0.5 * std::abs(e[l]) + 1e-3 * std::abs(d[l]);
        force_exceptional = false;
      }

      Complex s{1.0, 0.0}, c{1.0, 0.0}, p{};
      bool breakdown = false;
      for (int i = m - 1; i >= l; --i) {
        Complex f = s * e[i];
        const Complex b = c * e[i];
        r = std::sqrt(f * f + g * g);
        e[i + 1] = r;
        if (std::abs(r) <= 1e-14 * (std::abs(f) + std::abs(g))) {
          // rotation degenerates (f^2 + g^2 ~ 0): recover and re-shift
          d[i + 1] -= p;
          e[m] = Complex{};
          breakdown = true;
          force_exceptional = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (breakdown) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = Complex{};
    }
  }
  return std::vector<Complex>(d.data(), d.data() + n);
}

SpectrumReport eigen_spectrum(const DiscreteHamiltonian& H, int k) {
  const int dim = static_cast<int>(H.diagonal.size());
  if (k < 1 || k > dim)
    throw PreconditionError(
        "eigen_spectrum: k must be between 1 and the interior dimension");

  std::vector<Complex> all =
      tridiag_eigenvalues(H.diagonal, H.off_diagonal);
  std::sort(all.begin(), all.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  SpectrumReport rep;
  rep.eigenvalues.assign(all.begin(), all.begin() + k);
  rep.n_requested = k;
  rep.half_width = H.contour.half_width;
  rep.n_points = H.contour.n_points;
  rep.grid_h = H.contour.h();
  rep.max_imag = 0.0;
  for (const Complex& ev : rep.eigenvalues)
    rep.max_imag = std::max(rep.max_imag, std::abs(ev.imag()));
  return rep;
}

namespace {

// Tridiagonal LU with partial pivoting (gttrf/gtts pattern) for the shifted
// solves of the inverse iteration.
struct TridiagLU {
  Eigen::VectorXcd dl, dd, du, du2;
  std::vector<int> pivot;

  TridiagLU(const Eigen::VectorXcd& diag, const Eigen::VectorXcd& off,
            Complex shift) {
    const int n = static_cast<int>(diag.size());
    dl = off;
    dd = diag;
    for (int i = 0; i < n; ++i) dd[i] -= shift;
    du = off;
    du2 = Eigen::VectorXcd::Zero(std::max(0, n - 2));
    pivot.assign(n, 0);

    const double tiny = 1e-300;
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(dd[i]) >= std::abs(dl[i])) {
        if (std::abs(dd[i]) < tiny) dd[i] = tiny;
        const Complex fact = dl[i] / dd[i];
        dl[i] = fact;
        dd[i + 1] -= fact * du[i];
        if (i + 2 < n) du2[i] = Complex{};
      } else {
        pivot[i] = 1;
        const Complex fact = dd[i] / dl[i];
        dd[i] = dl[i];
        dl[i] = fact;
        const Complex temp = du[i];
        du[i] = dd[i + 1];
        dd[i + 1] = temp - fact * dd[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
      }
    }
    if (n > 0 && std::abs(dd[n - 1]) < tiny) dd[n - 1] = tiny;
  }

  Eigen::VectorXcd solve(Eigen::VectorXcd b) const {
    const int n = static_cast<int>(dd.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (pivot[i] == 0) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const Complex temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= dd[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (int i = n - 3; i >= 0; --i)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
    return b;
  }
};

}  // namespace

Eigen::VectorXcd eigenvector(const DiscreteHamiltonian& H, Complex lambda) {
  const int n = static_cast<int>(H.diagonal.size());
  if (n < 1) throw PreconditionError("eigenvector: empty operator");

  const TridiagLU lu(H.diagonal, H.off_diagonal, lambda);
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i)
    x[i] = Complex(1.0, 0.0) + 0.25 * std::sin(0.7 * i + 0.3);
  x /= x.norm();
  for (int iter = 0; iter < 3; ++iter) {
    x = lu.solve(std::move(x));
    x /= x.norm();
  }
  return x;
}

double residual(const SampledField& v, const SampledField& psi, Complex E) {
  if (!(v.contour == psi.contour))
    throw PreconditionError("residual: contour mismatch");
  const double norm = sup_norm(psi);
  if (norm == 0.0) throw PreconditionError("residual: zero field");

  const Contour& c = v.contour;
  Eigen::VectorXcd d2(c.n_points);
  if (psi.has_analytic()) {
    for (int k = 0; k < c.n_points; ++k) d2[k] = psi.analytic(c.z(k)).d2();
  } else {
    d2 = differentiate(differentiate(psi, DiffScheme::central_4th_order),
                       DiffScheme::central_4th_order)
             .values;
  }

  double worst = 0.0;
  for (int k = 0; k < c.n_points; ++k) {
    const Complex r = -d2[k] + (v.values[k] - E) * psi.values[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst / norm;
}

MatchVerdict match_spectra(const SpectrumReport& A, const SpectrumReport& B,
                           const std::vector<Complex>& skip, double tol) {
  MatchVerdict out;
  out.tolerance = tol;

  std::vector<bool> used(B.eigenvalues.size(), false);
  std::vector<Complex> unmatched;
  for (const Complex& a : A.eigenvalues) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < B.eigenvalues.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(a.real() - B.eigenvalues[j].real());
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0 && best_dist < tol) {
      used[best] = true;
      out.matched_pairs.push_back(
          {a, B.eigenvalues[best], std::abs(a - B.eigenvalues[best])});
    } else {
      unmatched.push_back(a);
    }
  }
  out.missing_in_B = unmatched;

  bool ok = true;
  for (const auto& pr : out.matched_pairs)
    if (!(pr.delta < tol)) ok = false;

  // the unmatched set must coincide with the declared skip set
  std::vector<bool> skip_used(skip.size(), false);
  for (const Complex& miss : unmatched) {
    bool found = false;
    for (size_t j = 0; j < skip.size(); ++j) {
      if (!skip_used[j] && std::abs(miss - skip[j]) < tol) {
        skip_used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) ok = false;
  }
  for (bool su : skip_used)
    if (!su) ok = false;
  if (unmatched.size() != skip.size()) ok = false;

  out.verdict = ok;
  return out;
}

Eigen::MatrixXcd gram_cproduct(const std::vector<SampledField>& states) {
  if (states.empty())
    throw PreconditionError("gram_cproduct: no states");
  const Contour& c = states.front().contour;
  for (const SampledField& s : states) {
    if (!(s.contour == c))
      throw PreconditionError("gram_cproduct: contour mismatch");
    const double maxabs = s.values.cwiseAbs().maxCoeff();
    const double ends =
        std::max(std::abs(s.values[0]), std::abs(s.values[c.n_points - 1]));
    if (maxabs > 0.0 && ends > 1e-8 * maxabs)
      std::cerr << "[ptdx] warning: gram_cproduct: state '" << s.label
                << "' has not decayed at the grid ends\n";
  }

  const int m = static_cast<int>(states.size());
  const Eigen::VectorXd w = simpson_weights(c);
  Eigen::MatrixXcd G(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Complex acc{};
      for (int k = 0; k < c.n_points; ++k)
        acc += w[k] * states[i].values[k] * states[j].values[k];
      G(i, j) = acc;
      G(j, i) = acc;
    }
  }
  // rescale so diagonal entries have unit modulus
  Eigen::VectorXd scale(m);
  for (int i = 0; i < m; ++i) scale[i] = 1.0 / std::sqrt(std::abs(G(i, i)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G(i, j) *= scale[i] * scale[j];
  return G;
}

}  // namespace ptdx::spectra
