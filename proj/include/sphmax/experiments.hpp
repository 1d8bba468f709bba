#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphmax/exponents.hpp"
#include "sphmax/grid.hpp"
#include "sphmax/multiplier.hpp"

// Scaling experiments: families of frequency-localized test inputs run
// across dyadic scales j, with the growth rate of the output/input norm
// ratio regressed against the exponent calculus.  Each family saturates one
// maximand of sigma_n; the smoothing probe bounds the half-wave smoothing
// order from below.
namespace sphmax::experiments {

using operators::cplx;

enum class Family { Focusing, Plate, Cone, Smoothing };

[[nodiscard]] std::string family_name(Family f);
[[nodiscard]] Family parse_family(const std::string& name);

// Input used by the smoothing probe.  Random fields give lower estimates;
// the deterministic radial bump is reproducible without a seed.
enum class InputKind { GaussianRandom, RadialBump };

struct ExperimentConfig {
  Family family = Family::Focusing;
  int dim = 2;
  cplx alpha{0.0, 0.0};
  exponents::Point point{{1, 2}, {0, 1}};  // (1/p, 1/q); q >= p
  int j_min = 3;
  int j_max = 7;
  double delta = 0.25;     // plate relative width
  double epsilon = 0.25;   // focusing observation window factor
  int t_samples = 0;       // 0 = family default for each j
  std::uint64_t seed = 1;  // smoothing random inputs
  InputKind input = InputKind::GaussianRandom;  // smoothing only
  double tolerance = 0.0;  // 0 = family default
  // Optional explicit grid plan, one entry per j in [j_min, j_max]; when
  // empty the built-in plan from default_grid is used.
  std::vector<field::GridSpec> grids;
};

// Built-in grid plan sized so every family's top frequency respects the
// oversampling rule points_per_axis >= 4 * support * box_length.
[[nodiscard]] field::GridSpec default_grid(Family family, int dim, int j);

// Dilation grid on [1, 2]: spacing 2^{-j}/4 for plate and cone (count
// 2^{j+2} + 1), a fixed 17-sample grid for smoothing, the single t = 1 for
// focusing.  count = 0 picks those defaults.
[[nodiscard]] std::vector<double> dilation_grid(Family family, int j,
                                                int count);

struct ScalingRow {
  int j = 0;
  double in_norm = 0.0;
  double out_norm_restricted = 0.0;
  double out_norm_full = 0.0;
  double log2_ratio = 0.0;  // log2(out_norm_restricted / in_norm)
};

struct SlopeFit {
  double slope = 0.0;
  double residual_max = 0.0;  // max |log2_ratio - fitted line|
};

// Ordinary least squares of log2_ratio against j over rows with
// window_lo <= j <= window_hi; needs at least two rows in the window.
[[nodiscard]] SlopeFit fit_slope(const std::vector<ScalingRow>& rows,
                                 int window_lo, int window_hi);

struct ScalingReport {
  ExperimentConfig config;  // with all defaults materialized
  std::vector<ScalingRow> rows;
  int window_lo = 0;  // slope window (inclusive j-interval)
  int window_hi = 0;
  double fitted_slope = 0.0;
  double fit_residual_max = 0.0;
  double predicted_slope = 0.0;
  double tolerance = 0.0;
  // Smoothing reports check fitted <= predicted + tolerance (the prediction
  // is an upper bound); the sharpness families check |fitted - predicted|.
  bool upper_bound_only = false;
  bool pass = false;
  double in_norm_slope = 0.0;  // OLS of log2(in_norm) against j, full range
  // Cone diagnostic: mean |argmax_t - |x|| over the restricted mask at the
  // largest scale; negative when not applicable.
  double argmax_mean_deviation = -1.0;
  double runtime_seconds = 0.0;  // never serialized into report files
};

// Theoretical slope from the exponents module (never a literal constant):
// focusing/plate/cone take the matching sigma_n maximand minus Re alpha;
// smoothing takes the local-smoothing exponent s_n (s2 when dim = 2).
[[nodiscard]] double predicted_slope(const ExperimentConfig& cfg);
[[nodiscard]] double default_tolerance(Family family);

// Materializes defaults, validates, runs every j, fits the slope over the
// top three scales, and fills the verdict.
[[nodiscard]] ScalingReport run_experiment(const ExperimentConfig& cfg);

// Byte-stable serializations (fixed float formatting, fixed row order).
// CSV columns: family,n,alpha_re,alpha_im,p,q,j,in_norm,
// out_norm_restricted,out_norm_full,log2_ratio.
[[nodiscard]] std::string report_csv(const ScalingReport& report);
[[nodiscard]] std::string report_json(const ScalingReport& report);

// Round-trips an ExperimentConfig through the JSON object format used by
// the command-line front end ("family", "n", "alpha", "p", "q", ...).
[[nodiscard]] std::string config_json(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentConfig parse_config_json(const std::string& text);

}  // namespace sphmax::experiments
