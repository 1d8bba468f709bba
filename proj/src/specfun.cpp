#include "sphmax/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sphmax::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Double-double arithmetic.  The ascending Bessel series suffers cancellation
// that grows like e^r, which exhausts plain double precision well before the
// asymptotic regime takes over; accumulating the series in ~31 significant
// digits keeps the switch region accurate.
// ---------------------------------------------------------------------------

struct Dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline Dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Dd dd_add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Dd dd_neg(Dd a) { return {-a.hi, -a.lo}; }

inline Dd dd_sub(Dd a, Dd b) { return dd_add(a, dd_neg(b)); }

inline Dd dd_mul(Dd a, Dd b) {
  Dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Dd dd_mul(Dd a, double b) {
  Dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline Dd dd_div(Dd a, Dd b) {
  const double q1 = a.hi / b.hi;
  Dd r = dd_sub(a, dd_mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  const double q3 = r.hi / b.hi;
  return dd_add(quick_two_sum(q1, q2), {q3, 0.0});
}

struct CDd {
  Dd re, im;
};

inline CDd cdd_add(CDd a, CDd b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline CDd cdd_mul(CDd a, CDd b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline CDd cdd_mul(CDd a, double b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline CDd cdd_div(CDd a, CDd b) {
  const Dd norm = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
  const CDd num = cdd_mul(a, CDd{b.re, dd_neg(b.im)});
  return {dd_div(num.re, norm), dd_div(num.im, norm)};
}

inline cplx cdd_to_cplx(CDd a) { return {a.re.hi + a.re.lo, a.im.hi + a.im.lo}; }

inline double cdd_abs(CDd a) { return std::abs(cdd_to_cplx(a)); }

// ---------------------------------------------------------------------------
// Complex log-gamma: Lanczos approximation with g = 4.7421875, 14 terms,
// reflected to Re z < 0.5 through log(pi / sin(pi z)).
// ---------------------------------------------------------------------------

constexpr double kLanczos[14] = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3,
    -0.210264441724104883e-3, 0.217439618115212643e-3,
    -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

cplx log_gamma_core(cplx z) {
  // Requires Re z >= 0.5.
  cplx tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  cplx ser(0.999999999999997092, 0.0);
  cplx y = z;
  for (const double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(2.5066282746310005 * ser / z);
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::floor(z.real());
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z))
    throw std::domain_error("log_gamma pole at nonpositive integer");
  if (z.real() >= 0.5) return log_gamma_core(z);
  // Reflection: log Gamma(z) = log(pi) - log(sin(pi z)) - log Gamma(1 - z).
  return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_core(1.0 - z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

namespace detail {

cplx bessel_j_series(cplx beta, double r) {
  // J_beta(r) = (r/2)^beta / Gamma(beta+1) * sum_m c_m,
  // c_0 = 1,  c_m = c_{m-1} * (-(r/2)^2) / (m (beta + m)).
  // Every per-term factor is formed exactly in double-double: a plain-double
  // rounding of (beta + m) would feed a random walk of ulp errors into the
  // violently cancelling sum and cost ~8 digits near the regime switch.
  const double x = 0.5 * r;
  const CDd neg_x2{dd_neg(two_prod(x, x)), {0.0, 0.0}};
  CDd term{{1.0, 0.0}, {0.0, 0.0}};
  CDd sum = term;
  double peak = 1.0;
  for (int m = 1; m <= 800; ++m) {
    const double md = static_cast<double>(m);
    const CDd denom{dd_mul(two_sum(beta.real(), md), md),
                    two_prod(beta.imag(), md)};
    term = cdd_mul(term, cdd_div(neg_x2, denom));
    sum = cdd_add(sum, term);
    const double mag = cdd_abs(term);
    peak = std::max(peak, mag);
    if (mag < peak * 1.0e-35 && m > x) break;
  }
  const cplx prefactor =
      std::exp(beta * std::log(cplx(x, 0.0)) - log_gamma(beta + 1.0));
  return prefactor * cdd_to_cplx(sum);
}

cplx bessel_j_asymptotic(cplx beta, double r) {
  // Two-sided Hankel expansion, truncated adaptively at the smallest term.
  // The opposite-phase factors e^{-i theta} and e^{+i theta} with
  // theta = beta pi/2 + pi/4 are independent exponentials, not conjugates,
  // once beta is complex.
  const cplx theta = beta * (kPi / 2) + kPi / 4;
  const cplx phase_minus = std::exp(cplx(0.0, -1.0) * theta) /
                           std::sqrt(2.0 * kPi);
  const cplx phase_plus = std::exp(cplx(0.0, 1.0) * theta) /
                          std::sqrt(2.0 * kPi);
  const cplx four_beta2 = 4.0 * beta * beta;
  cplx a(1.0, 0.0);   // a_j(beta)
  cplx pw(1.0, 0.0);  // i^j r^{-j}; conj(pw) = (-i)^j r^{-j} since r is real
  cplx sum_b = phase_minus * a;  // e^{+ir} side
  cplx sum_d = phase_plus * a;   // e^{-ir} side; both sides share a_j
  double prev_mag = 1.0;
  for (int j = 1; j <= 48; ++j) {
    const double odd = 2.0 * j - 1.0;
    a *= (four_beta2 - odd * odd) / (8.0 * j);
    pw *= cplx(0.0, 1.0) / r;
    const double mag = std::abs(a * pw);
    if (mag >= prev_mag) break;  // past the optimal truncation point
    sum_b += phase_minus * pw * a;
    sum_d += phase_plus * std::conj(pw) * a;
    if (mag < 1e-18) break;
    prev_mag = mag;
  }
  const cplx eir(std::cos(r), std::sin(r));
  return (eir * sum_b + std::conj(eir) * sum_d) / std::sqrt(r);
}

}  // namespace detail

cplx bessel_j(cplx beta, double r) {
  if (r < 0.0) throw std::domain_error("bessel_j requires r >= 0");
  if (r == 0.0) {
    if (beta == cplx(0.0, 0.0)) return {1.0, 0.0};
    if (beta.real() > 0.0) return {0.0, 0.0};
    throw std::domain_error("bessel_j diverges at r = 0 for Re(beta) <= 0");
  }
  // Exact negative integer order: reflect to positive order.
  if (beta.imag() == 0.0 && beta.real() < 0.0 &&
      beta.real() == std::floor(beta.real())) {
    const int k = static_cast<int>(-beta.real());
    const cplx v = bessel_j(cplx(-beta.real(), 0.0), r);
    return (k % 2 == 0) ? v : -v;
  }
  if (r <= detail::kRegimeSwitch) return detail::bessel_j_series(beta, r);
  return detail::bessel_j_asymptotic(beta, r);
}

HankelCoefficients hankel_coefficients(cplx beta, int terms) {
  if (terms < 1) throw std::domain_error("hankel_coefficients: terms >= 1");
  const cplx theta = beta * (kPi / 2) + kPi / 4;
  const cplx phase_minus = std::exp(cplx(0.0, -1.0) * theta) /
                           std::sqrt(2.0 * kPi);
  const cplx phase_plus = std::exp(cplx(0.0, 1.0) * theta) /
                          std::sqrt(2.0 * kPi);
  const cplx four_beta2 = 4.0 * beta * beta;
  HankelCoefficients out;
  out.b.reserve(terms);
  out.d.reserve(terms);
  cplx a(1.0, 0.0);
  cplx ipow(1.0, 0.0);
  for (int j = 0; j < terms; ++j) {
    if (j > 0) {
      const double odd = 2.0 * j - 1.0;
      a *= (four_beta2 - odd * odd) / (8.0 * j);
      ipow *= cplx(0.0, 1.0);
    }
    out.b.push_back(phase_minus * ipow * a);
    out.d.push_back(phase_plus * std::conj(ipow) * a);
  }
  return out;
}

double expansion_residual(cplx beta, int terms,
                          std::span<const double> r_samples) {
  const HankelCoefficients hc = hankel_coefficients(beta, terms);
  double worst = 0.0;
  for (const double r : r_samples) {
    if (r <= 0.0) throw std::domain_error("expansion_residual: r > 0 required");
    cplx sb(0.0, 0.0), sd(0.0, 0.0);
    double rp = 1.0;
    for (int j = 0; j < terms; ++j) {
      sb += hc.b[static_cast<std::size_t>(j)] / rp;
      sd += hc.d[static_cast<std::size_t>(j)] / rp;
      rp *= r;
    }
    const cplx eir(std::cos(r), std::sin(r));
    const cplx approx = (eir * sb + std::conj(eir) * sd) / std::sqrt(r);
    worst = std::max(worst, std::abs(bessel_j(beta, r) - approx));
  }
  return worst;
}

}  // namespace sphmax::specfun
