#include "sphmax/exponents.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace sphmax::exponents {

namespace {

void require_admissible(const Point& pt) {
  if (!admissible(pt))
    throw std::domain_error("exponent point outside 0 <= 1/q <= 1/p <= 1");
}

void require_dim(int n, int lo) {
  if (n < lo)
    throw std::domain_error("dimension n = " + std::to_string(n) +
                            " below minimum " + std::to_string(lo));
}

// Sign of the cross product (b - a) x (p - a); exact.
int side(const Point& a, const Point& b, const Point& p) {
  const Rational cross = (b.inv_p - a.inv_p) * (p.inv_q - a.inv_q) -
                         (b.inv_q - a.inv_q) * (p.inv_p - a.inv_p);
  if (cross.num() == 0) return 0;
  return cross.num() > 0 ? 1 : -1;
}

// Closed-polygon membership for a convex vertex loop (either orientation).
// Returns +1 interior, 0 on boundary, -1 outside.
int convex_position(const std::vector<Point>& poly, const Point& p) {
  int pos = 0, neg = 0, zero = 0;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const int s = side(poly[i], poly[(i + 1) % m], p);
    if (s > 0) ++pos;
    if (s < 0) ++neg;
    if (s == 0) ++zero;
  }
  if (pos > 0 && neg > 0) return -1;
  return zero > 0 ? 0 : 1;
}

}  // namespace

bool admissible(const Point& pt) {
  const Rational zero(0), one(1);
  return pt.inv_q >= zero && pt.inv_q <= pt.inv_p && pt.inv_p <= one;
}

std::array<Rational, 3> sigma_terms(int n, const Point& pt) {
  require_dim(n, 2);
  require_admissible(pt);
  const Rational u = pt.inv_p, v = pt.inv_q;
  return {
      u - Rational(n) * v,
      Rational(n + 1, 2) * u - Rational(n - 1, 2) * (v + Rational(1)),
      Rational(n) * u - Rational(n - 1),
  };
}

Rational sigma(int n, const Point& pt) {
  const auto t = sigma_terms(n, pt);
  return rat_max(t[0], rat_max(t[1], t[2]));
}

Rational d_extra_term(int n, const Point& pt) {
  require_dim(n, 3);
  require_admissible(pt);
  return Rational(1, 2) * pt.inv_p - Rational(n - 2, 2) * pt.inv_q -
         Rational(n - 1, 4);
}

Rational d_exponent(int n, const Point& pt) {
  require_dim(n, 3);
  return rat_max(sigma(n, pt), d_extra_term(n, pt));
}

Rational s2(const Point& pt) {
  require_admissible(pt);
  const Rational u = pt.inv_p, v = pt.inv_q;
  const Rational dual = Rational(1) - u;  // 1/p'
  // Branches keyed on 1/q vs 1/(3p') and 1/p'; ties resolve to the branch
  // with the larger q so that q = infinity always lands in the first branch.
  if (v <= dual / Rational(3))
    return Rational(1, 2) + u - Rational(3) * v;
  if (v <= dual) return Rational(3, 2) * (u - v);
  return Rational(2) * u - Rational(1, 2) - v;
}

Vertices figure_vertices(int n) {
  require_dim(n, 2);
  const std::int64_t N = n;
  const Rational a(N - 1, 2 * (N + 1));
  const std::int64_t db = 2 * (N * N + 2 * N - 1);
  return Vertices{
      .O = {Rational(0), Rational(0)},
      .A = {a, a},
      .B = {Rational((N - 1) * (N + 3), db), Rational((N - 1) * (N + 1), db)},
      .C = {Rational(1, 2), Rational(1, 2)},
      .D = {Rational(1), Rational(1)},
      .E = {Rational(1), Rational(0)},
  };
}

CriticalPoint critical_point(int n) {
  require_dim(n, 2);
  const std::int64_t N = n;
  const std::int64_t d = 2 * (N * N + 2 * N - 1);
  return CriticalPoint{
      .inv_p0 = Rational((N - 1) * (N + 3), d),
      .inv_q0 = Rational((N - 1) * (N + 1), d),
      .s0 = Rational((N - 1) * (N + 1), d),
  };
}

RegionInfo classify_region(int n, const Point& pt) {
  require_dim(n, 3);
  if (!(pt.inv_q <= pt.inv_p) || pt.inv_q < Rational(0) ||
      pt.inv_p > Rational(1))
    return {Region::OUTSIDE, false};
  const Vertices vx = figure_vertices(n);
  const struct {
    Region region;
    std::vector<Point> tri;
  } order[] = {
      {Region::AOE, {vx.A, vx.O, vx.E}}, {Region::ABE, {vx.A, vx.B, vx.E}},
      {Region::BCE, {vx.B, vx.C, vx.E}}, {Region::ABC, {vx.A, vx.B, vx.C}},
      {Region::CDE, {vx.C, vx.D, vx.E}},
  };
  for (const auto& entry : order) {
    const int pos = convex_position(entry.tri, pt);
    if (pos >= 0) return {entry.region, pos == 0};
  }
  // Unreachable for admissible points: the five triangles cover ODE.
  return {Region::OUTSIDE, false};
}

std::string region_name(Region r) {
  switch (r) {
    case Region::AOE: return "AOE";
    case Region::ABE: return "ABE";
    case Region::BCE: return "BCE";
    case Region::ABC: return "ABC";
    case Region::CDE: return "CDE";
    case Region::OUTSIDE: return "OUTSIDE";
  }
  return "?";
}

Rational s_n(int n, const Point& pt) {
  require_dim(n, 3);
  const auto info = classify_region(n, pt);
  const Rational u = pt.inv_p, v = pt.inv_q;
  switch (info.region) {
    case Region::AOE:
    case Region::ABE:
      return u - Rational(n + 1) * v + Rational(n - 1, 2);
    case Region::BCE:
      return Rational(n + 1, 2) * (u - v);
    case Region::ABC:
      return Rational(1, 2) * u - Rational(n, 2) * v + Rational(n - 1, 4);
    case Region::CDE:
      return Rational(n) * u - v - Rational(n - 1, 2);
    case Region::OUTSIDE:
      break;
  }
  throw std::domain_error("s_n: point with 1/q > 1/p");
}

Rational transfer_alpha(const Rational& s, int n, const Point& pt) {
  require_dim(n, 2);
  return s - Rational(n - 1, 2) + pt.inv_q;
}

std::array<Point, 4> quadrangle(int n) {
  require_dim(n, 2);
  const std::int64_t N = n;
  return {
      Point{Rational(0), Rational(0)},
      Point{Rational(N - 1, N), Rational(N - 1, N)},
      Point{Rational(N - 1, N), Rational(1, N)},
      Point{Rational(N * (N - 1), N * N + 1), Rational(N - 1, N * N + 1)},
  };
}

bool in_quadrangle(int n, const Point& pt, bool strict) {
  const auto q = quadrangle(n);
  std::vector<Point> poly;
  for (const auto& v : q) {
    if (poly.empty() || !(poly.back().inv_p == v.inv_p &&
                          poly.back().inv_q == v.inv_q))
      poly.push_back(v);  // drop the duplicate corner of the n = 2 degeneracy
  }
  const int pos = convex_position(poly, pt);
  return strict ? pos > 0 : pos >= 0;
}

}  // namespace sphmax::exponents
