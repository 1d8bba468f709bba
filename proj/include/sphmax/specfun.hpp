#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sphmax::specfun {

using cplx = std::complex<double>;

// Log-gamma on the principal branch, valid for all complex z away from the
// poles at 0, -1, -2, ...  (Lanczos approximation plus reflection).
[[nodiscard]] cplx log_gamma(cplx z);

// Gamma function; throws std::domain_error at nonpositive integer poles.
[[nodiscard]] cplx gamma(cplx z);

// Bessel function of the first kind with complex order beta and real
// argument r >= 0.  Ascending series (compensated, extended-precision
// accumulation) below the regime switch, two-sided Hankel expansion above.
// Target relative accuracy ~1e-12 of the oscillation envelope for
// |beta| <= 10, r <= 1e4.
[[nodiscard]] cplx bessel_j(cplx beta, double r);

// Coefficients of the two-sided asymptotic expansion
//   J_beta(r) ~ r^{-1/2} ( e^{ir} sum_{j<N} b_j r^{-j}
//                        + e^{-ir} sum_{j<N} d_j r^{-j} ).
// b_0 and d_0 are never zero; for beta = 1/2 every higher coefficient
// vanishes and the expansion is exact.
struct HankelCoefficients {
  std::vector<cplx> b;
  std::vector<cplx> d;
};
[[nodiscard]] HankelCoefficients hankel_coefficients(cplx beta, int terms);

// Max over the samples of |J_beta(r) - N-term truncated expansion|.
[[nodiscard]] double expansion_residual(cplx beta, int terms,
                                        std::span<const double> r_samples);

namespace detail {
// Both regimes exposed so the overlap window around the switch can be
// cross-checked directly.
inline constexpr double kRegimeSwitch = 25.0;
[[nodiscard]] cplx bessel_j_series(cplx beta, double r);
[[nodiscard]] cplx bessel_j_asymptotic(cplx beta, double r);
}  // namespace detail

}  // namespace sphmax::specfun
