// Acceptance suite: ten end-to-end criteria, one [PASS]/[FAIL] line each.
// Exits nonzero when any criterion fails.  Tolerances and runtime budgets
// are pinned here on purpose; loosening them is a functional change.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sphmax/exponents.hpp"
#include "sphmax/experiments.hpp"
#include "sphmax/grid.hpp"
#include "sphmax/multiplier.hpp"
#include "sphmax/operators.hpp"

namespace {

using sphmax::Rational;
using sphmax::exponents::Point;
using cplx = std::complex<double>;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Random admissible rational point with denominators up to 60.
Point random_admissible(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, 60);
  const std::int64_t d1 = den_dist(rng), d2 = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> a_dist(0, d1);
  const std::int64_t a = a_dist(rng);
  std::uniform_int_distribution<std::int64_t> b_dist(0, (d2 * a) / d1);
  return {Rational(a, d1), Rational(b_dist(rng), d2)};
}

// --------------------------------------------------------------------------
// 1. Exact exponent identities on random admissible points.
// --------------------------------------------------------------------------
Verdict criterion1() {
  namespace ex = sphmax::exponents;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240811u);
  const int count = 10000;
  for (int i = 0; i < count; ++i) {
    const Point pt = random_admissible(rng);
    if (ex::sigma(2, pt) != ex::s2(pt) - Rational(1, 2) + pt.inv_q)
      return {false, "sigma_2 identity broken at (" + pt.inv_p.str() + "," +
                         pt.inv_q.str() + ")"};
    for (const int n : {3, 4, 5, 8}) {
      if (ex::d_exponent(n, pt) !=
          ex::s_n(n, pt) - Rational(n - 1, 2) + pt.inv_q)
        return {false, "d_n identity broken at n=" + std::to_string(n)};
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 5.0) return {false, "runtime " + fmt(dt) + " s exceeds 5 s"};
  return {true, "10000 points, n in {2,3,4,5,8}, " + fmt(dt) + " s"};
}

// --------------------------------------------------------------------------
// 2. Vertex B of the exponent diagram equals the critical point exactly.
// --------------------------------------------------------------------------
Verdict criterion2() {
  namespace ex = sphmax::exponents;
  for (int n = 3; n <= 12; ++n) {
    const ex::Vertices v = ex::figure_vertices(n);
    const ex::CriticalPoint c = ex::critical_point(n);
    if (v.B.inv_p != c.inv_p0 || v.B.inv_q != c.inv_q0)
      return {false, "B != (1/p0, 1/q0) at n=" + std::to_string(n)};
    if (ex::s_n(n, v.B) != c.s0)
      return {false, "s_n(B) != s0 at n=" + std::to_string(n)};
  }
  return {true, "B = (1/p0, 1/q0) and s_n(B) = s0 for n = 3..12"};
}

// --------------------------------------------------------------------------
// 3. Boundedness quadrangle recovered by the sign of the exponents (n = 3).
// --------------------------------------------------------------------------
Verdict criterion3() {
  namespace ex = sphmax::exponents;
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 3;
  const auto corners = ex::quadrangle(n);
  std::mt19937_64 rng(77007u);
  std::uniform_int_distribution<std::int64_t> w_dist(1, 20);

  for (int i = 0; i < 1000; ++i) {
    // Positive rational convex combination of the four corners: interior.
    std::int64_t w[4], total = 0;
    for (auto& x : w) {
      x = w_dist(rng);
      total += x;
    }
    Point pt{Rational(0), Rational(0)};
    for (int k = 0; k < 4; ++k) {
      pt.inv_p += Rational(w[k], total) * corners[static_cast<size_t>(k)].inv_p;
      pt.inv_q += Rational(w[k], total) * corners[static_cast<size_t>(k)].inv_q;
    }
    if (!(ex::d_exponent(n, pt) < Rational(0)))
      return {false, "d_3 >= 0 at interior point (" + pt.inv_p.str() + "," +
                         pt.inv_q.str() + ")"};
  }

  int found = 0;
  while (found < 1000) {
    const Point pt = random_admissible(rng);
    if (ex::in_quadrangle(n, pt, /*strict=*/false)) continue;
    ++found;
    if (!(ex::sigma(n, pt) > Rational(0)))
      return {false, "sigma_3 <= 0 outside the closed quadrangle at (" +
                         pt.inv_p.str() + "," + pt.inv_q.str() + ")"};
  }
  const double dt = seconds_since(t0);
  if (dt >= 5.0) return {false, "runtime " + fmt(dt) + " s exceeds 5 s"};
  return {true, "1000 interior and 1000 exterior points, " + fmt(dt) + " s"};
}

// --------------------------------------------------------------------------
// 4. Multiplier correctness: limits, closed form, quadrature oracle.
// --------------------------------------------------------------------------
Verdict criterion4() {
  namespace op = sphmax::operators;
  namespace fd = sphmax::field;
  const double pi = std::acos(-1.0);

  for (const int n : {2, 3}) {
    const cplx v = op::spherical_multiplier_raw(n, cplx(1.0, 0.0), 0.0);
    if (std::abs(v - cplx(op::unit_ball_volume(n), 0.0)) > 1e-8)
      return {false, "order-1 zero-frequency limit misses vol(B^n) at n=" +
                         std::to_string(n)};
  }

  // n = 3, order 0: raw multiplier sin(2 pi r)/r, symbol sinc(2 pi r).
  for (int i = 0; i <= 5000; ++i) {
    const double r = 0.1 + (100.0 - 0.1) * i / 5000.0;
    const double closed = std::sin(2.0 * pi * r) / r;
    if (std::abs(op::spherical_multiplier_raw(3, cplx(0.0, 0.0), r) -
                 cplx(closed, 0.0)) > 1e-8)
      return {false, "half-order closed form misses at r=" + fmt(r)};
    if (std::abs(op::spherical_symbol(3, cplx(0.0, 0.0), r) -
                 cplx(closed / (2.0 * pi), 0.0)) > 1e-8)
      return {false, "normalized symbol misses sinc at r=" + fmt(r)};
  }

  // Circle-mean quadrature oracle in the plane at 16 radii.
  fd::GridSpec spec;
  spec.dim = 2;
  spec.points_per_axis = 256;
  spec.box_length = 8.0;
  fd::Field f = fd::make_field(spec);
  const auto gaussians = [&](double x, double y) {
    const double d1 = (x - 0.0) * (x - 0.0) + (y - 0.0) * (y - 0.0);
    const double d2 = (x - 0.7) * (x - 0.7) + (y + 0.3) * (y + 0.3);
    return std::exp(-d1 / 0.36) + 0.5 * std::exp(-d2 / 0.36);
  };
  const int N = spec.points_per_axis;
  for (int m0 = 0; m0 < N; ++m0)
    for (int m1 = 0; m1 < N; ++m1)
      f.data[static_cast<std::size_t>(m0 * N + m1)] =
          gaussians(spec.coord(m0, 0), spec.coord(m1, 1));

  const int i0 = N / 2 + 8, i1 = N / 2 - 12;  // evaluation point near origin
  const double x0 = spec.coord(i0, 0), y0 = spec.coord(i1, 1);
  double worst = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double t = 0.5 + 1.5 * k / 15.0;
    const fd::Field mean = op::spherical_mean(f, cplx(0.0, 0.0), t);
    const cplx got = mean.data[static_cast<std::size_t>(i0 * N + i1)];
    double acc = 0.0;
    const int Q = 4096;
    for (int q = 0; q < Q; ++q) {
      const double th = 2.0 * pi * q / Q;
      acc += gaussians(x0 + t * std::cos(th), y0 + t * std::sin(th));
    }
    worst = std::max(worst, std::abs(got - cplx(acc / Q, 0.0)));
  }
  if (worst > 1e-5)
    return {false,
            "circle-mean quadrature deviation " + fmt(worst) + " > 1e-5"};
  return {true, "limits 1e-8, closed form 1e-8, quadrature max dev " +
                    fmt(worst)};
}

// --------------------------------------------------------------------------
// 5. Oscillatory decomposition residual decay law.
// --------------------------------------------------------------------------
Verdict criterion5() {
  namespace op = sphmax::operators;
  const int n = 2, N = 3;
  const double M = 4.0;
  const auto rs = op::log_spaced(8.0, 1024.0, 800);
  std::string detail;
  for (const cplx alpha : {cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(0.0, 1.0)}) {
    const std::string label =
        "a=" + fmt(alpha.real()) + "+" + fmt(alpha.imag()) + "i";
    const auto dec = op::decompose_multiplier(n, alpha, N, M, rs);
    double max_res = 0.0, max_sym = 0.0;
    std::vector<double> mags(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      mags[i] = std::abs(dec.residual[i]);
      max_res = std::max(max_res, mags[i]);
      max_sym = std::max(
          max_sym, std::abs(dec.low[i] + dec.principal_plus[i] +
                            dec.principal_minus[i] + dec.residual[i]));
    }
    const double target = -(N + 0.5 + alpha.real()) + 0.3;
    if (max_res <= 1e-13 * max_sym) {
      // Exact-termination order (beta = 1/2): the residual is rounding
      // noise, which is stronger than any decay law.
      detail += label + " noise-floor; ";
      continue;
    }
    const double slope = op::envelope_log2_slope(rs, mags, 8.0, 1024.0);
    if (slope > target)
      return {false, "residual slope " + fmt(slope) + " exceeds " +
                         fmt(target) + " at " + label};
    detail += label + " slope " + fmt(slope) + "; ";
  }
  return {true, detail};
}

// --------------------------------------------------------------------------
// 6-9. Scaling experiments.
// --------------------------------------------------------------------------
Verdict run_scaling(sphmax::experiments::Family family, cplx alpha,
                    const Point& pt, int j_min, int j_max,
                    double expected_slope, double tol,
                    double budget_seconds) {
  namespace ex = sphmax::experiments;
  ex::ExperimentConfig cfg;
  cfg.family = family;
  cfg.dim = 2;
  cfg.alpha = alpha;
  cfg.point = pt;
  cfg.j_min = j_min;
  cfg.j_max = j_max;
  cfg.tolerance = tol;
  const ex::ScalingReport rep = ex::run_experiment(cfg);
  const std::string basics = "fitted " + fmt(rep.fitted_slope) +
                             ", predicted " + fmt(rep.predicted_slope) +
                             ", " + fmt(rep.runtime_seconds) + " s";
  if (std::abs(rep.predicted_slope - expected_slope) > 1e-12)
    return {false, "predicted slope is not " + fmt(expected_slope) + " (" +
                       basics + ")"};
  if (std::abs(rep.fitted_slope - expected_slope) > tol)
    return {false, basics};
  if (!rep.pass) return {false, "report verdict failed (" + basics + ")"};
  if (rep.runtime_seconds > budget_seconds)
    return {false, "runtime " + fmt(rep.runtime_seconds) + " s exceeds " +
                       fmt(budget_seconds) + " s"};
  return {true, basics};
}

Verdict criterion6() {
  return run_scaling(sphmax::experiments::Family::Focusing, cplx(0.0, 0.0),
                     {Rational(1, 2), Rational(0)}, 3, 7, 0.5, 0.15, 300.0);
}

Verdict criterion7() {
  return run_scaling(sphmax::experiments::Family::Plate, cplx(0.0, 0.0),
                     {Rational(1, 2), Rational(1, 2)}, 3, 7, 0.0, 0.15,
                     900.0);
}

Verdict criterion8() {
  return run_scaling(sphmax::experiments::Family::Cone, cplx(0.0, 0.0),
                     {Rational(1), Rational(1)}, 3, 6, 1.0, 0.2, 900.0);
}

Verdict criterion9() {
  return run_scaling(sphmax::experiments::Family::Focusing, cplx(0.5, 0.0),
                     {Rational(1, 2), Rational(0)}, 3, 7, 0.0, 0.15, 300.0);
}

// --------------------------------------------------------------------------
// 10. Wave-propagator invariants and smoothing probes.
// --------------------------------------------------------------------------
Verdict criterion10() {
  namespace op = sphmax::operators;
  namespace fd = sphmax::field;
  namespace ex = sphmax::experiments;

  fd::GridSpec spec;
  spec.dim = 2;
  spec.points_per_axis = 128;
  spec.box_length = 4.0;
  fd::Field f = fd::make_field(spec);
  std::mt19937_64 rng(4242u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.data) z = cplx(u(rng), u(rng));

  const double before = fd::lebesgue_norm(f, 2.0);
  const fd::Field w = op::half_wave(f, 0.61, +1);
  if (std::abs(fd::lebesgue_norm(w, 2.0) - before) > 1e-10 * before)
    return {false, "L2 norm drift beyond 1e-10"};

  const fd::Field two = op::half_wave(op::half_wave(f, 0.3, +1), 0.45, +1);
  const fd::Field one = op::half_wave(f, 0.75, +1);
  double worst = 0.0;
  for (std::size_t i = 0; i < two.data.size(); ++i)
    worst = std::max(worst, std::abs(two.data[i] - one.data[i]));
  if (worst > 1e-10)
    return {false, "group law deviation " + fmt(worst) + " > 1e-10"};

  // Two-sided L2 smoothing slope with random annular data.
  ex::ExperimentConfig cfg;
  cfg.family = ex::Family::Smoothing;
  cfg.dim = 2;
  cfg.point = {Rational(1, 2), Rational(1, 2)};
  cfg.j_min = 3;
  cfg.j_max = 5;
  cfg.seed = 2024;
  cfg.input = ex::InputKind::GaussianRandom;
  cfg.tolerance = 0.02;
  const ex::ScalingReport l2 = ex::run_experiment(cfg);
  if (std::abs(l2.fitted_slope) > 0.02 || !l2.pass)
    return {false, "L2 smoothing slope " + fmt(l2.fitted_slope) +
                       " outside 0 +- 0.02"};

  // One-sided probes against the theoretical regularity order.
  const struct {
    Point pt;
    double expect;
  } probes[] = {
      {{Rational(1, 2), Rational(1, 2)}, 0.0},
      {{Rational(0), Rational(0)}, 0.5},
      {{Rational(1), Rational(0)}, 1.5},
  };
  std::string detail = "L2 slope " + fmt(l2.fitted_slope);
  for (const auto& probe : probes) {
    ex::ExperimentConfig pc = cfg;
    pc.point = probe.pt;
    pc.input = ex::InputKind::RadialBump;
    pc.tolerance = 0.2;
    const ex::ScalingReport rep = ex::run_experiment(pc);
    if (std::abs(rep.predicted_slope - probe.expect) > 1e-12)
      return {false, "probe bound is not " + fmt(probe.expect)};
    if (rep.fitted_slope > rep.predicted_slope + 0.2 || !rep.pass)
      return {false, "probe slope " + fmt(rep.fitted_slope) +
                         " exceeds bound " + fmt(rep.predicted_slope) +
                         " + 0.2"};
    detail += ", probe(" + probe.pt.inv_p.str() + "," + probe.pt.inv_q.str() +
              ") " + fmt(rep.fitted_slope) + " <= " +
              fmt(rep.predicted_slope) + "+0.2";
  }
  return {true, detail};
}

}  // namespace

int main() {
  const struct {
    const char* name;
    std::function<Verdict()> run;
  } criteria[] = {
      {"exact exponent identities", criterion1},
      {"critical vertex consistency", criterion2},
      {"boundedness region sign recovery", criterion3},
      {"multiplier limits, closed form, quadrature", criterion4},
      {"decomposition residual decay law", criterion5},
      {"focusing sharpness slope", criterion6},
      {"plate sharpness slope", criterion7},
      {"cone sharpness slope", criterion8},
      {"order-shift of the focusing slope", criterion9},
      {"wave propagator invariants and smoothing", criterion10},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s (%s)\n", v.pass ? "PASS" : "FAIL",
                index, c.name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of 10 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
