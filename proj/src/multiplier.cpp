#include "sphmax/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphmax/specfun.hpp"

namespace sphmax::operators {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1/Gamma(z), entire: zero at the poles of Gamma.
cplx inv_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      z.real() == std::nearbyint(z.real()))
    return {0.0, 0.0};
  return std::exp(-specfun::log_gamma(z));
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<double>(x.size());
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= m;
  ym /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - xm) * (y[i] - ym);
    sxx += (x[i] - xm) * (x[i] - xm);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit: degenerate abscissae");
  return sxy / sxx;
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

}  // namespace

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n >= 1");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double surface_normalization(int n, cplx alpha) {
  if (n < 2) throw std::invalid_argument("surface_normalization: n >= 2");
  if (alpha == cplx(0.0, 0.0))
    return std::tgamma(0.5 * n) / std::pow(kPi, 0.5 * n);
  return 1.0;
}

cplx spherical_multiplier_raw(int n, cplx alpha, double r) {
  if (n < 2) throw std::invalid_argument("spherical multiplier: n >= 2");
  if (!(r >= 0.0))
    throw std::invalid_argument("spherical multiplier: r must be >= 0");
  if (r <= 0.5) {
    // Reduced power series: pi^{n/2} sum_m (-y)^m / (m! Gamma(n/2+alpha+m))
    // with y = (pi r)^2.  Converges in a few terms for r <= 1/2 and removes
    // the r -> 0 cancellation of the direct formula.
    const double y = (kPi * r) * (kPi * r);
    const cplx c0 = 0.5 * n + alpha;
    cplx sum(0.0, 0.0);
    double pow_term = 1.0;  // y^m / m!
    for (int m = 0; m <= 80; ++m) {
      if (m > 0) pow_term *= y / m;
      const cplx g = inv_gamma(c0 + static_cast<double>(m));
      sum += ((m & 1) != 0 ? -pow_term : pow_term) * g;
      // Once the gamma argument is in its increasing range, later terms are
      // dominated by pow_term * |g|.
      if (c0.real() + m > 2.0 &&
          pow_term * std::abs(g) < 1e-20 * std::max(1.0, std::abs(sum)))
        break;
    }
    return std::pow(kPi, 0.5 * n) * sum;
  }
  const cplx beta = 0.5 * n + alpha - 1.0;
  const cplx pref = std::exp((1.0 - alpha) * std::log(kPi) +
                             (1.0 - 0.5 * n - alpha) * std::log(r));
  return pref * specfun::bessel_j(beta, kTwoPi * r);
}

cplx spherical_symbol(int n, cplx alpha, double r) {
  return surface_normalization(n, alpha) * spherical_multiplier_raw(n, alpha, r);
}

// ---------------------------------------------------------------------------
// Cutoff profiles
// ---------------------------------------------------------------------------

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double u2 = u * u;
  return u2 * u2 * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u)));
}

double lowpass_profile(double r) {
  const double a = std::abs(r);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return smoothstep(2.0 - a);
}

double annular_bump(double r) {
  if (r <= 0.75 || r >= 1.75) return 0.0;
  if (r < 1.0) return smoothstep((r - 0.75) / 0.25);
  if (r <= 1.5) return 1.0;
  return smoothstep((1.75 - r) / 0.25);
}

double plateau_profile(double u) {
  const double a = std::abs(u);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return smoothstep(2.0 * (1.0 - a));
}

double dyadic_profile(int j, double M, double r) {
  if (j < 1) throw std::invalid_argument("dyadic_profile: j >= 1");
  if (!(M > 0.0)) throw std::invalid_argument("dyadic_profile: M > 0");
  return lowpass_profile(std::ldexp(r, -j) / M) -
         lowpass_profile(std::ldexp(r, -j + 1) / M);
}

cplx cutoff_weight(const CutoffSpec& c, int dim,
                   const std::array<double, 3>& xi) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("cutoff: dim in [1,3]");
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a)
    r2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  const double r = std::sqrt(r2);
  switch (c.kind) {
    case CutoffSpec::Kind::Lowpass:
      if (!(c.M > 0.0)) throw std::invalid_argument("cutoff: M > 0");
      return lowpass_profile(r / c.M);
    case CutoffSpec::Kind::Dyadic:
      return dyadic_profile(c.j, c.M, r);
    case CutoffSpec::Kind::AnnularBump:
      if (c.j < 0) throw std::invalid_argument("cutoff: annular j >= 0");
      return annular_bump(std::ldexp(r, -c.j));
    case CutoffSpec::Kind::Plate: {
      if (!(c.delta > 0.0)) throw std::invalid_argument("cutoff: delta > 0");
      if (c.j < 1) throw std::invalid_argument("cutoff: plate j >= 1");
      const double half_len = std::ldexp(c.delta, c.j - 1);
      const double half_wid = c.delta * std::exp2(0.5 * c.j);
      double w = plateau_profile((xi[0] - std::exp2(c.j)) / half_len);
      for (int a = 1; a < dim; ++a)
        w *= plateau_profile(xi[static_cast<std::size_t>(a)] / half_wid);
      return w;
    }
    case CutoffSpec::Kind::ConeSector: {
      if (!(c.inner_chord > 0.0) || !(c.outer_chord > c.inner_chord))
        throw std::invalid_argument("cutoff: need 0 < inner < outer chord");
      if (r == 0.0) return 0.0;
      double dir2 = 0.0;
      for (int a = 0; a < dim; ++a)
        dir2 += c.direction[static_cast<std::size_t>(a)] *
                c.direction[static_cast<std::size_t>(a)];
      if (!(dir2 > 0.0))
        throw std::invalid_argument("cutoff: zero cone direction");
      const double inv_dir = 1.0 / std::sqrt(dir2);
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double d = xi[static_cast<std::size_t>(a)] / r -
                         c.direction[static_cast<std::size_t>(a)] * inv_dir;
        d2 += d * d;
      }
      const double chord = std::sqrt(d2);
      if (chord <= c.inner_chord) return 1.0;
      if (chord >= c.outer_chord) return 0.0;
      return smoothstep((c.outer_chord - chord) /
                        (c.outer_chord - c.inner_chord));
    }
    case CutoffSpec::Kind::Chirp:
      return cplx(std::cos(kTwoPi * r), -std::sin(kTwoPi * r));
  }
  throw std::logic_error("cutoff: unknown kind");
}

double cutoff_support_radius(const CutoffSpec& c, int dim) {
  switch (c.kind) {
    case CutoffSpec::Kind::Lowpass:
      return 2.0 * c.M;
    case CutoffSpec::Kind::Dyadic:
      return 2.0 * c.M * std::exp2(c.j);
    case CutoffSpec::Kind::AnnularBump:
      return 1.75 * std::exp2(c.j);
    case CutoffSpec::Kind::Plate: {
      const double x1 = std::exp2(c.j) + std::ldexp(c.delta, c.j - 1);
      const double wid = c.delta * std::exp2(0.5 * c.j);
      return std::sqrt(x1 * x1 + (dim - 1) * wid * wid);
    }
    case CutoffSpec::Kind::ConeSector:
    case CutoffSpec::Kind::Chirp:
      return std::numeric_limits<double>::infinity();
  }
  throw std::logic_error("cutoff: unknown kind");
}

// ---------------------------------------------------------------------------
// RadialTable
// ---------------------------------------------------------------------------

RadialTable::RadialTable(const std::function<cplx(double)>& fn, double r_max,
                         double step)
    : step_(step), r_max_(r_max) {
  if (!(step > 0.0) || !(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("RadialTable: need step > 0, finite r_max > 0");
  const auto m = static_cast<std::size_t>(std::ceil(r_max / step)) + 3;
  samples_.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    samples_[i] = fn(static_cast<double>(i) * step);
}

cplx RadialTable::operator()(double r) const {
  if (!(r >= 0.0) || r > r_max_)
    throw std::out_of_range("RadialTable: radius outside [0, r_max]");
  const double x = r / step_;
  const auto i = static_cast<std::size_t>(x);
  const double u = x - static_cast<double>(i);
  const cplx s0 = samples_[i == 0 ? 1 : i - 1];  // even extension at 0
  const cplx s1 = samples_[i];
  const cplx s2 = samples_[i + 1];
  const cplx s3 = samples_[i + 2];
  return 0.5 * (2.0 * s1 + (-s0 + s2) * u +
                (2.0 * s0 - 5.0 * s1 + 4.0 * s2 - s3) * (u * u) +
                (-s0 + 3.0 * s1 - 3.0 * s2 + s3) * (u * u * u));
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

MultiplierDecomposition decompose_multiplier(
    int n, cplx alpha, int N, double M, const std::vector<double>& r_samples) {
  if (n < 2) throw std::invalid_argument("decompose: n >= 2");
  if (N < 1) throw std::invalid_argument("decompose: N >= 1");
  if (!(M >= 1.0)) throw std::invalid_argument("decompose: M >= 1");
  const cplx beta = 0.5 * n + alpha - 1.0;
  const auto coeffs =
      specfun::hankel_coefficients(beta, N);
  const double kappa = surface_normalization(n, alpha);
  const cplx c_amp =
      kappa * std::sqrt(0.5) * std::exp((0.5 - alpha) * std::log(kPi));

  MultiplierDecomposition out;
  out.r = r_samples;
  const std::size_t m = r_samples.size();
  out.low.resize(m);
  out.principal_plus.resize(m);
  out.principal_minus.resize(m);
  out.residual.resize(m);

  // Bare oscillatory amplitudes (cutoff factor removed) for the diagnostics.
  std::vector<double> diag_r;
  std::array<std::vector<double>, 2> diag_arg;
  double c_low = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < m; ++i) {
    const double r = r_samples[i];
    if (!(r >= 0.0)) throw std::invalid_argument("decompose: radii >= 0");
    const cplx sym = spherical_symbol(n, alpha, r);
    const double phi = lowpass_profile(r / M);
    out.low[i] = phi * sym;
    if (r <= M || phi >= 1.0) {
      out.principal_plus[i] = out.principal_minus[i] = cplx(0.0, 0.0);
      out.residual[i] = sym - out.low[i];
    } else {
      cplx series_b(0.0, 0.0), series_d(0.0, 0.0);
      double rp = 1.0;  // (2 pi r)^{-j}
      for (std::size_t j = 0; j < coeffs.b.size(); ++j) {
        series_b += coeffs.b[j] * rp;
        series_d += coeffs.d[j] * rp;
        rp /= kTwoPi * r;
      }
      const cplx bare1 = c_amp * series_b;
      const cplx bare2 = c_amp * series_d;
      const cplx weight =
          std::exp((-0.5 * (n - 1) - alpha) * std::log(r));
      const cplx osc(std::cos(kTwoPi * r), std::sin(kTwoPi * r));
      out.principal_plus[i] = weight * osc * bare1 * (1.0 - phi);
      out.principal_minus[i] = weight * std::conj(osc) * bare2 * (1.0 - phi);
      out.residual[i] =
          sym - out.low[i] - out.principal_plus[i] - out.principal_minus[i];
      if (r >= M) {
        diag_r.push_back(r);
        diag_arg[0].push_back(std::arg(bare1));
        diag_arg[1].push_back(std::arg(bare2));
        c_low = std::min(c_low, std::min(std::abs(bare1), std::abs(bare2)));
      }
    }
  }

  if (!diag_r.empty()) {
    out.c_low = c_low;
    // Circular means and worst deviation over the whole diagnostic range.
    for (int i = 0; i < 2; ++i) {
      double sc = 0.0, ss = 0.0;
      for (const double a : diag_arg[static_cast<std::size_t>(i)]) {
        sc += std::cos(a);
        ss += std::sin(a);
      }
      const double th = std::atan2(ss, sc);
      out.theta[static_cast<std::size_t>(i)] = th;
      for (const double a : diag_arg[static_cast<std::size_t>(i)])
        out.max_arg_deviation =
            std::max(out.max_arg_deviation, std::abs(wrap_angle(a - th)));
    }
    // Smallest suffix threshold with deviation <= 1e-2 (radii ascending).
    std::vector<std::size_t> order(diag_r.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return diag_r[a] < diag_r[b];
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
      double dev = 0.0;
      for (int i = 0; i < 2; ++i) {
        double sc = 0.0, ss = 0.0;
        for (std::size_t l = k; l < order.size(); ++l) {
          const double a = diag_arg[static_cast<std::size_t>(i)][order[l]];
          sc += std::cos(a);
          ss += std::sin(a);
        }
        const double th = std::atan2(ss, sc);
        for (std::size_t l = k; l < order.size(); ++l) {
          const double a = diag_arg[static_cast<std::size_t>(i)][order[l]];
          dev = std::max(dev, std::abs(wrap_angle(a - th)));
        }
      }
      if (dev <= 1e-2) {
        out.smallest_arg_threshold = diag_r[order[k]];
        break;
      }
    }
  }
  return out;
}

double envelope_log2_slope(const std::vector<double>& r,
                           const std::vector<double>& magnitude, double r_lo,
                           double r_hi) {
  if (r.size() != magnitude.size())
    throw std::invalid_argument("envelope fit: size mismatch");
  if (!(r_lo > 0.0) || !(r_hi > 2.0 * r_lo))
    throw std::invalid_argument("envelope fit: need r_hi > 2 r_lo > 0");
  std::vector<double> xs, ys;
  for (double lo = r_lo; lo * 2.0 <= r_hi * (1.0 + 1e-12); lo *= 2.0) {
    double peak = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] >= lo && r[i] < 2.0 * lo) {
        peak = std::max(peak, magnitude[i]);
        seen = true;
      }
    }
    if (!seen) continue;
    xs.push_back(std::log2(lo) + 0.5);
    ys.push_back(std::log2(std::max(peak, 1e-300)));
  }
  if (xs.size() < 2)
    throw std::invalid_argument("envelope fit: fewer than two windows");
  return ols_slope(xs, ys);
}

std::vector<double> log_spaced(double r_lo, double r_hi, int count) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || count < 2)
    throw std::invalid_argument("log_spaced: need r_hi > r_lo > 0, count >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::log(r_hi / r_lo);
  for (int k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] =
        r_lo * std::exp(ratio * k / (count - 1));
  out.back() = r_hi;
  return out;
}

}  // namespace sphmax::operators
