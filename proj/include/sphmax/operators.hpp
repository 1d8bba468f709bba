#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sphmax/grid.hpp"
#include "sphmax/multiplier.hpp"

// Field-level operators: radial Fourier multipliers (spherical means,
// half-wave propagators, bracket powers), frequency cutoffs, and the
// pointwise supremum over a dilation grid.  Every operator returns its
// result in the representation of its input, except maximal_over_t whose
// result is a space-side nonnegative field.
namespace sphmax::operators {

using field::Field;
using field::GridSpec;

// Thrown when a requested frequency support violates the oversampling rule
// points_per_axis >= 4 * (support radius) * box_length.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distinct lattice radii |xi| of a grid and the bin -> radius-index map;
// lets radial symbols be evaluated once per distinct radius.
struct RadialIndex {
  std::vector<double> radii;
  std::vector<std::uint32_t> map;  // one entry per bin, row-major
};
[[nodiscard]] RadialIndex build_radial_index(const GridSpec& spec);

// General frequency-side weight w(xi).
[[nodiscard]] Field apply_frequency_weight(
    const Field& f,
    const std::function<cplx(const std::array<double, 3>&)>& weight);

// Radial frequency-side weight s(|xi|), deduplicated over lattice radii.
[[nodiscard]] Field apply_radial_symbol(
    const Field& f, const std::function<cplx(double)>& symbol);

// A named radial multiplier with its evaluation parameters.
struct RadialMultiplier {
  enum class Kind {
    SphericalMean,  // spherical_symbol(dim, alpha, t r)
    HalfWavePlus,   // exp(+2 pi i t r)
    HalfWaveMinus,  // exp(-2 pi i t r)
    BracketPower,   // (1 + (t r)^2)^{s/2}
    Cutoff          // radial cutoff kinds only (Lowpass/Dyadic/AnnularBump)
  };
  Kind kind = Kind::SphericalMean;
  int dim = 2;
  cplx alpha{0.0, 0.0};
  double t = 1.0;
  double s = 0.0;
  CutoffSpec cutoff{};

  // Symbol value at lattice radius r (the t-dilation is included).
  [[nodiscard]] cplx eval(double r) const;
};

// Frequency-wise product with mult.eval(|xi|); checks dim against the field.
[[nodiscard]] Field apply_multiplier(const Field& f,
                                     const RadialMultiplier& mult);

// Spherical mean of order alpha at dilation t (exact symbol evaluation).
[[nodiscard]] Field spherical_mean(const Field& f, cplx alpha, double t);

// Half-wave propagator exp(sign * 2 pi i t |xi|); sign must be +1 or -1.
[[nodiscard]] Field half_wave(const Field& f, double t, int sign);

// Bracket power (1 + |xi|^2)^{s/2}.
[[nodiscard]] Field bracket_power(const Field& f, double s);

// Frequency cutoff; enforces the oversampling rule for compactly supported
// kinds (Lowpass, Dyadic, AnnularBump, Plate) and throws ResolutionError on
// violation.  Cone sectors and chirps carry no radial support of their own.
[[nodiscard]] Field apply_cutoff(const Field& f, const CutoffSpec& spec);

// Pointwise maximum of |spherical mean at dilation t| over a nonempty,
// strictly increasing, positive t-grid.  The symbol is evaluated through a
// RadialTable (interpolation error ~5e-8 relative); the result is a real,
// nonnegative, space-side field.  When argmax_t is given it is resized to
// one entry per grid point and filled with the t attaining the maximum.
[[nodiscard]] Field maximal_over_t(const Field& f, cplx alpha,
                                   const std::vector<double>& t_grid,
                                   std::vector<double>* argmax_t = nullptr);

}  // namespace sphmax::operators
