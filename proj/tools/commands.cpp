#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <vector>

#include <json.hpp>

#include "ptdx/darboux.hpp"
#include "ptdx/ginocchio.hpp"
#include "ptdx/oscillator.hpp"
#include "ptdx/specfun.hpp"
#include "ptdx/spectra.hpp"
#include "ptdx/version.hpp"
#include "run_config.hpp"

namespace ptdx::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json as_json(Complex v) { return json::array({v.real(), v.imag()}); }

json as_json(const std::vector<Complex>& vs) {
  json arr = json::array();
  for (const Complex& v : vs) arr.push_back(as_json(v));
  return arr;
}

json spectrum_json(const spectra::SpectrumReport& rep) {
  return json{{"eigenvalues", as_json(rep.eigenvalues)},
              {"n_requested", rep.n_requested},
              {"max_imag", rep.max_imag},
              {"grid", {{"half_width", rep.half_width},
                        {"n_points", rep.n_points},
                        {"h", rep.grid_h}}}};
}

json match_json(const spectra::MatchVerdict& m) {
  json pairs = json::array();
  for (const auto& pr : m.matched_pairs)
    pairs.push_back(json{{"a", as_json(pr.a)},
                         {"b", as_json(pr.b)},
                         {"delta", pr.delta}});
  return json{{"pairs", pairs},
              {"missing_in_B", as_json(m.missing_in_B)},
              {"tolerance", m.tolerance},
              {"verdict", m.verdict}};
}

json reproducibility_block(const RunConfig& cfg) {
  return json{{"version", kVersion},
              {"params",
               {{"model", cfg.model},
                {"alpha", as_json(cfg.alpha)},
                {"q", cfg.q},
                {"gamma", cfg.gamma},
                {"s", cfg.s},
                {"m", cfg.m},
                {"epsilon", cfg.epsilon}}},
              {"grid",
               {{"half_width", cfg.half_width},
                {"n_points", cfg.n_points}}},
              {"tolerances", {{"match", cfg.tol}}}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << fmt17(row[i]);
    }
    out << "\n";
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

oscillator::OscillatorParams osc_params(const RunConfig& cfg) {
  return {cfg.alpha, cfg.q, cfg.epsilon};
}

ginocchio::GinocchioParams gin_params(const RunConfig& cfg) {
  return {cfg.gamma, cfg.s, cfg.alpha, cfg.q, cfg.epsilon};
}

Contour contour_of(const RunConfig& cfg) {
  return build_contour(cfg.epsilon, cfg.half_width, cfg.n_points);
}

struct ModelFields {
  SampledField v_minus;
  darboux::DarbouxPair pair;
  Complex seed_energy;
  json deviations;
};

ModelFields build_fields(const RunConfig& cfg, const Contour& c) {
  json deviations = json::object();
  if (cfg.model == "oscillator") {
    const auto p = osc_params(cfg);
    oscillator::validate(p);
    if (cfg.m < 0) throw PreconditionError("m must be non-negative");
    auto pair = oscillator::engine_pair(p, cfg.m, c);
    if (cfg.m <= 2)
      deviations["closed_form_sup"] =
          oscillator::closed_form_deviation(p, cfg.m, c);
    if (cfg.m == 2) {
      const auto d2 = oscillator::partner_m2_discrepancy(p, c);
      deviations["m2_printed_sup"] = d2.printed;
      deviations["m2_squared_denominator_sup"] = d2.squared_denominator;
    }
    return {oscillator::potential(p, c), std::move(pair),
            oscillator::energy(p, cfg.m), std::move(deviations)};
  }
  if (cfg.model == "ginocchio") {
    const auto p = gin_params(cfg);
    ginocchio::validate(p);
    const auto map = ginocchio::u_of_r(p, c);
    deviations["map_max_residual"] = map.max_residual();
    deviations["map_ode_deviation"] = map.ode_deviation;
    Complex seed_mu{};
    bool found = false;
    for (const auto& lev : ginocchio::levels(p))
      if (lev.n == cfg.m) {
        seed_mu = lev.mu;
        found = true;
      }
    if (!found)
      throw PreconditionError("m = " + std::to_string(cfg.m) +
                              " is not a bound level for these parameters");
    const double g4 = std::pow(cfg.gamma, 4);
    const Complex beta = g4 * seed_mu * seed_mu;
    auto pair = darboux::make_pair(ginocchio::eigenfunction(p, map, cfg.m),
                                   -beta, beta, cfg.m);
    if (cfg.m == 1)
      deviations["printed_closed_form_sup"] =
          (ginocchio::partner_m1_printed(p, map).values - pair.v_plus.values)
              .cwiseAbs()
              .maxCoeff();
    return {ginocchio::potential(p, map), std::move(pair), -beta,
            std::move(deviations)};
  }
  throw PreconditionError("unknown model '" + cfg.model +
                          "' (expected oscillator or ginocchio)");
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw PreconditionError("empty complex literal");

  auto stod_full = [&](const std::string& part) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw PreconditionError("bad complex literal '" + text + "'");
    }
    if (used != part.size())
      throw PreconditionError("bad complex literal '" + text + "'");
    return v;
  };

  const bool has_i = t.back() == 'i' || t.back() == 'I';
  if (!has_i) return {stod_full(t), 0.0};

  t.pop_back();  // drop the trailing i
  // split at the last sign that is not leading and not part of an exponent
  size_t split = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_part = [&](const std::string& part, double fallback) {
    if (part.empty() || part == "+") return fallback;
    if (part == "-") return -fallback;
    return stod_full(part);
  };
  if (split == std::string::npos) return {0.0, parse_part(t, 1.0)};
  return {parse_part(t.substr(0, split), 0.0),
          parse_part(t.substr(split), 1.0)};
}

std::string format_complex(std::complex<double> v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

int run_partner(const RunConfig& cfg) {
  Timer timer;
  const Contour c = contour_of(cfg);
  ModelFields fields = build_fields(cfg, c);

  std::vector<std::vector<double>> rows(c.n_points);
  for (int k = 0; k < c.n_points; ++k) {
    rows[k] = {c.x(k),
               fields.pair.v_minus.values[k].real(),
               fields.pair.v_minus.values[k].imag(),
               fields.pair.v_plus.values[k].real(),
               fields.pair.v_plus.values[k].imag(),
               fields.pair.W.values[k].real(),
               fields.pair.W.values[k].imag()};
  }

  fs::create_directories(cfg.out_dir);
  write_csv(fs::path(cfg.out_dir) / "partner.csv",
            "x,re_v_minus,im_v_minus,re_v_plus,im_v_plus,re_W,im_W", rows);

  json meta = reproducibility_block(cfg);
  meta["command"] = "partner";
  meta["beta"] = as_json(fields.pair.beta);
  meta["seed_energy"] = as_json(fields.seed_energy);
  meta["deviations"] = fields.deviations;
  meta["files"] = {"partner.csv"};
  meta["timings"] = {{"total_s", timer.seconds()}};
  write_json(fs::path(cfg.out_dir) / "partner.json", meta);
  return kExitOk;
}

int run_verify(const RunConfig& cfg) {
  Timer timer;
  json report = reproducibility_block(cfg);
  report["command"] = "verify";
  const bool report_only = std::abs(cfg.alpha.imag()) > 1e-14;
  report["report_only"] = report_only;

  json checks = json::object();
  bool all_pass = true;
  auto record = [&](const std::string& name, bool pass, double value,
                    double threshold) {
    checks[name] = {{"pass", pass}, {"value", value}, {"threshold", threshold}};
    if (!pass) all_pass = false;
  };

  try {
    const Contour c = contour_of(cfg);
    ModelFields fields = build_fields(cfg, c);
    report["deviations"] = fields.deviations;

    // independent eigen solves of v_minus and v_plus, run concurrently
    const int kA = cfg.k_levels;
    const int kB = std::max(1, cfg.k_levels - 1);
    auto solveA = std::async(std::launch::async, [&] {
      return spectra::eigen_spectrum(spectra::discretize(fields.v_minus), kA);
    });
    auto solveB = std::async(std::launch::async, [&] {
      return spectra::eigen_spectrum(spectra::discretize(fields.pair.v_plus),
                                     kB);
    });
    const spectra::SpectrumReport repA = solveA.get();
    const spectra::SpectrumReport repB = solveB.get();
    report["spectra"] = {{"v_minus", spectrum_json(repA)},
                         {"v_plus", spectrum_json(repB)}};

    std::vector<Complex> skip;
    if (!cfg.empty_skip) skip.push_back(fields.seed_energy);
    const spectra::MatchVerdict match =
        spectra::match_spectra(repA, repB, skip, cfg.tol);
    report["matches"] = match_json(match);
    record("isospectral_match", match.verdict, match.matched_pairs.empty()
                                                   ? 0.0
                                                   : match.matched_pairs.back().delta,
           cfg.tol);

    // residuals of closed-form states
    json residuals = json::object();
    if (cfg.model == "oscillator") {
      const auto p = osc_params(cfg);
      for (int n = 0; n <= 3; ++n) {
        const double r = spectra::residual(
            fields.v_minus, oscillator::eigenfunction(p, n, c),
            oscillator::energy(p, n));
        residuals["psi_" + std::to_string(n)] = r;
        record("residual_psi_" + std::to_string(n), r < 1e-6, r, 1e-6);
      }
      const int n0 = cfg.m == 0 ? 1 : 0;
      const double rphi = spectra::residual(
          fields.pair.v_plus, oscillator::map_excited(p, cfg.m, n0, c),
          oscillator::energy(p, n0));
      residuals["partner_ground_state"] = rphi;
      record("residual_partner_state", rphi < 1e-6, rphi, 1e-6);
      if (cfg.m == 1) {
        const auto gs = oscillator::partner_ground_state(p, c);
        const double r35 =
            spectra::residual(fields.pair.v_plus, gs.state, gs.energy);
        residuals["printed_gs_m1"] = r35;
        record("residual_printed_gs", r35 < 1e-6, r35, 1e-6);
      }

      std::vector<SampledField> states;
      for (int n = 0; n < 3; ++n)
        states.push_back(oscillator::eigenfunction(p, n, c));
      oscillator::OscillatorParams pm = p;
      pm.q = -p.q;
      states.push_back(oscillator::eigenfunction(pm, 0, c));
      const Eigen::MatrixXcd G = spectra::gram_cproduct(states);
      double offdiag = 0.0;
      for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j)
          if (i != j) offdiag = std::max(offdiag, std::abs(G(i, j)));
      report["gram_offdiag"] = offdiag;
      record("cproduct_orthogonality", offdiag < 1e-4, offdiag, 1e-4);

      if (!report_only) {
        const double pt_v = pt_asymmetry(fields.v_minus);
        const double pt_p = pt_asymmetry(fields.pair.v_plus);
        record("pt_symmetry_v_minus", pt_v < 1e-10, pt_v, 1e-10);
        record("pt_symmetry_v_plus", pt_p < 1e-10, pt_p, 1e-10);
      }
      if (cfg.m <= 1) {
        const double dev = fields.deviations["closed_form_sup"];
        record("closed_form_agreement", dev < 1e-8, dev, 1e-8);
      }
    } else {
      const auto p = gin_params(cfg);
      const auto map = ginocchio::u_of_r(p, c);
      record("map_round_trip", map.max_residual() < 1e-10, map.max_residual(),
             1e-10);
      record("map_newton_vs_ode", map.ode_deviation < 1e-8, map.ode_deviation,
             1e-8);
      for (const auto& lev : ginocchio::levels(p)) {
        const double r = spectra::residual(
            fields.v_minus, ginocchio::eigenfunction(p, map, lev.n),
            lev.energy);
        residuals["psi_" + std::to_string(lev.n)] = r;
        record("residual_psi_" + std::to_string(lev.n), r < 1e-5, r, 1e-5);
      }
      std::vector<SampledField> states;
      for (const auto& lev : ginocchio::levels(p))
        states.push_back(ginocchio::eigenfunction(p, map, lev.n));
      if (states.size() > 1) {
        const Eigen::MatrixXcd G = spectra::gram_cproduct(states);
        double offdiag = 0.0;
        for (int i = 0; i < G.rows(); ++i)
          for (int j = 0; j < G.cols(); ++j)
            if (i != j) offdiag = std::max(offdiag, std::abs(G(i, j)));
        report["gram_offdiag"] = offdiag;
        record("cproduct_orthogonality", offdiag < 1e-4, offdiag, 1e-4);
      }
      if (!report_only) {
        const double pt_v = pt_asymmetry(fields.v_minus);
        const double pt_p = pt_asymmetry(fields.pair.v_plus);
        record("pt_symmetry_v_minus", pt_v < 1e-8, pt_v, 1e-8);
        record("pt_symmetry_v_plus", pt_p < 1e-8, pt_p, 1e-8);
      }
    }
    report["residuals"] = residuals;
  } catch (...) {
    // partial results are still written
    report["checks"] = checks;
    report["timings"] = {{"total_s", timer.seconds()}};
    fs::create_directories(cfg.out_dir);
    write_json(fs::path(cfg.out_dir) / "verify.json", report);
    throw;
  }

  report["checks"] = checks;
  report["verdict"] =
      report_only ? "report-only" : (all_pass ? "pass" : "fail");
  report["timings"] = {{"total_s", timer.seconds()}};
  fs::create_directories(cfg.out_dir);
  write_json(fs::path(cfg.out_dir) / "verify.json", report);

  if (report_only) return kExitOk;
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int run_figure(const std::string& which_fig, const RunConfig& cfg) {
  Timer timer;
  if (cfg.model != "oscillator")
    throw PreconditionError("figure output is defined for the oscillator");
  if (which_fig != "fig1" && which_fig != "fig2")
    throw PreconditionError("figure must be fig1 or fig2");

  const auto p = osc_params(cfg);
  oscillator::validate(p);
  const Contour c = build_contour(cfg.epsilon, 5.0, 1001);

  Eigen::VectorXcd values;
  if (which_fig == "fig1") {
    values = oscillator::partner_closed(p, 1, c).values;
  } else {
    values = oscillator::partner_ground_state(p, c).state.values;
  }

  std::vector<std::vector<double>> rows(c.n_points);
  for (int k = 0; k < c.n_points; ++k)
    rows[k] = {c.x(k), values[k].real(), values[k].imag()};

  fs::create_directories(cfg.out_dir);
  write_csv(fs::path(cfg.out_dir) / (which_fig + ".csv"), "x,re,im", rows);

  json meta = reproducibility_block(cfg);
  meta["command"] = "figure";
  meta["which"] = which_fig;
  meta["files"] = {which_fig + ".csv"};
  meta["timings"] = {{"total_s", timer.seconds()}};
  write_json(fs::path(cfg.out_dir) / (which_fig + ".json"), meta);
  return kExitOk;
}

int run_spectrum(const RunConfig& cfg) {
  Timer timer;
  const Contour c = contour_of(cfg);
  ModelFields fields = build_fields(cfg, c);

  const SampledField& v =
      cfg.which == "partner" ? fields.pair.v_plus : fields.v_minus;
  const spectra::SpectrumReport rep =
      spectra::eigen_spectrum(spectra::discretize(v), cfg.k_levels);

  fs::create_directories(cfg.out_dir);
  std::vector<std::vector<double>> rows(rep.eigenvalues.size());
  for (size_t j = 0; j < rep.eigenvalues.size(); ++j)
    rows[j] = {static_cast<double>(j), rep.eigenvalues[j].real(),
               rep.eigenvalues[j].imag()};
  write_csv(fs::path(cfg.out_dir) / "spectrum.csv", "index,re,im", rows);

  json meta = reproducibility_block(cfg);
  meta["command"] = "spectrum";
  meta["which"] = cfg.which;
  meta["spectra"] = spectrum_json(rep);
  meta["deviations"] = fields.deviations;
  meta["files"] = {"spectrum.csv"};
  meta["timings"] = {{"total_s", timer.seconds()}};
  write_json(fs::path(cfg.out_dir) / "spectrum.json", meta);
  return kExitOk;
}

}  // namespace ptdx::cli
