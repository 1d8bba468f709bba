#pragma once

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

// Radial Fourier symbols of the complex-order spherical mean, smooth
// frequency cutoffs, cubic-interpolated symbol tables, and the oscillatory
// decomposition diagnostics used by the CLI and the scaling experiments.
namespace sphmax::operators {

using cplx = std::complex<double>;

// Volume of the unit ball in R^n.
[[nodiscard]] double unit_ball_volume(int n);

// Raw radial symbol of the order-alpha spherical mean in dimension n:
//   pi^{1-alpha} r^{1-n/2-alpha} J_{n/2+alpha-1}(2 pi r),
// with the removable singularity at r = 0 filled by its series limit
// pi^{n/2} / Gamma(n/2 + alpha).  Entire in alpha; at alpha = 1 the value at
// r = 0 is the volume of the unit ball.
[[nodiscard]] cplx spherical_multiplier_raw(int n, cplx alpha, double r);

// Multiplicative normalization making the order-0 mean an average against a
// probability measure: Gamma(n/2)/pi^{n/2} when alpha == 0 exactly, else 1.
[[nodiscard]] double surface_normalization(int n, cplx alpha);

// Operator symbol: surface_normalization(n, alpha) * spherical_multiplier_raw.
// For n = 3, alpha = 0 this is sin(2 pi r)/(2 pi r).
[[nodiscard]] cplx spherical_symbol(int n, cplx alpha, double r);

// ---------------------------------------------------------------------------
// Smooth cutoff profiles.  All ramps use a fixed 7th-order smoothstep, so
// profiles are C^3 with machine-checkable plateau/support endpoints.
// ---------------------------------------------------------------------------

// 0 for u <= 0, 1 for u >= 1, u^4(35 - 84u + 70u^2 - 20u^3) between.
[[nodiscard]] double smoothstep(double u);

// Even low-pass profile: 1 on [0,1], 0 on [2,inf), monotone ramp between.
[[nodiscard]] double lowpass_profile(double r);

// Annular bump: 0 outside [3/4, 7/4], 1 on [1, 3/2], smooth ramps between.
[[nodiscard]] double annular_bump(double r);

// Even plateau: 1 on |u| <= 1/2, 0 on |u| >= 1, smooth ramp between.
[[nodiscard]] double plateau_profile(double u);

// Dyadic band for scale j >= 1 relative to the threshold M:
//   psi_j(r) = lowpass(2^-j r / M) - lowpass(2^{-j+1} r / M).
// Together with lowpass(r / M) these telescope to 1 for r <= 2^J M.
[[nodiscard]] double dyadic_profile(int j, double M, double r);

struct CutoffSpec {
  enum class Kind { Lowpass, Dyadic, AnnularBump, Plate, ConeSector, Chirp };
  Kind kind = Kind::Lowpass;
  int j = 1;          // dyadic / annular / plate scale
  double M = 4.0;     // low-pass threshold (Lowpass, Dyadic)
  double delta = 0.25;  // plate width parameter
  std::array<double, 3> direction{1.0, 0.0, 0.0};  // cone axis
  double inner_chord = 1e-2;       // cone: weight 1 inside this chordal radius
  double outer_chord = 1.0 / 81.0;  // cone: weight 0 outside this one
};

// Frequency-side weight of the cutoff at the point xi (first `dim` entries).
// Real-valued for every kind except Chirp, which is exp(-2 pi i |xi|).
[[nodiscard]] cplx cutoff_weight(const CutoffSpec& c, int dim,
                                 const std::array<double, 3>& xi);

// Radius of the support of the cutoff weight; +infinity for the
// degree-0-homogeneous cone sector and for the unimodular chirp.
[[nodiscard]] double cutoff_support_radius(const CutoffSpec& c, int dim);

// ---------------------------------------------------------------------------
// Sampled radial symbol with Catmull-Rom interpolation, for t-sweeps where
// exact per-bin evaluation would be needlessly slow.  Even extension at 0.
// ---------------------------------------------------------------------------
class RadialTable {
 public:
  RadialTable(const std::function<cplx(double)>& fn, double r_max,
              double step = 1.0 / 256.0);
  [[nodiscard]] cplx operator()(double r) const;  // r in [0, r_max]
  [[nodiscard]] double r_max() const { return r_max_; }

 private:
  double step_;
  double r_max_;
  std::vector<cplx> samples_;
};

// ---------------------------------------------------------------------------
// Diagnostic decomposition of the spherical symbol into a smooth
// low-frequency part, two oscillatory principal parts
//   r^{-(n-1)/2-alpha} e^{+-2 pi i r} a_{1,2}(r),
// and the truncation residual.  a_i are finite descending-power series built
// from the two-phase Bessel expansion coefficients, supported where the
// low-pass weight (threshold M) has died off.
// ---------------------------------------------------------------------------
struct MultiplierDecomposition {
  std::vector<double> r;
  std::vector<cplx> low;              // lowpass(r/M) * symbol
  std::vector<cplx> principal_plus;   // e^{+2 pi i r} branch
  std::vector<cplx> principal_minus;  // e^{-2 pi i r} branch
  std::vector<cplx> residual;         // symbol - (low + plus + minus)

  // Amplitude diagnostics over the bare series (cutoff factor removed),
  // computed on the sample radii >= M:
  double c_low = 0.0;                 // inf over samples of min_i |a_i(r)|
  std::array<double, 2> theta{0.0, 0.0};  // circular-mean arguments of a_1, a_2
  double max_arg_deviation = 0.0;     // sup_i sup_r |arg a_i(r) - theta_i|
  // Smallest sample radius M' with sup over r >= M' of the argument
  // deviation <= 1e-2 (infinity when no suffix qualifies).
  double smallest_arg_threshold = std::numeric_limits<double>::infinity();
};

[[nodiscard]] MultiplierDecomposition decompose_multiplier(
    int n, cplx alpha, int N, double M, const std::vector<double>& r_samples);

// Least-squares slope of log2(max |value| per dyadic window) against
// log2(window center), over windows [r_lo 2^w, r_lo 2^{w+1}) inside
// [r_lo, r_hi].  Oscillating magnitudes need this envelope treatment; a
// pointwise log-log fit would alias the oscillation.
[[nodiscard]] double envelope_log2_slope(const std::vector<double>& r,
                                         const std::vector<double>& magnitude,
                                         double r_lo, double r_hi);

// Log-spaced sample radii (geometric progression, endpoints included) with a
// count that avoids resonating with unit-period oscillations.
[[nodiscard]] std::vector<double> log_spaced(double r_lo, double r_hi,
                                             int count);

}  // namespace sphmax::operators
