#pragma once

#include <complex>
#include <string>

namespace ptdx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  std::string model = "oscillator";  // oscillator | ginocchio
  std::complex<double> alpha{0.75, 0.0};
  int q = 1;
  double gamma = 1.0;
  double s = 2.0;
  int m = 1;
  double epsilon = 1.0;
  double half_width = 8.0;
  int n_points = 1601;
  int k_levels = 6;
  double tol = 5e-3;
  bool empty_skip = false;           // sharpness probe for verify
  std::string which = "original";    // spectrum subcommand: original | partner
  std::string out_dir = ".";
};

// "a", "a+bi", "bi", "-a-bi"; exponent notation allowed in both parts
std::complex<double> parse_complex(const std::string& text);
std::string format_complex(std::complex<double> v);

int run_partner(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_figure(const std::string& which_fig, const RunConfig& cfg);
int run_spectrum(const RunConfig& cfg);

}  // namespace ptdx::cli
