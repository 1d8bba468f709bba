#pragma once

#include <array>
#include <string>

#include "sphmax/rational.hpp"

// Exact exponent calculus for the L^p -> L^q mapping theory of the spherical
// mean operator of complex order.  Everything here works on points
// (1/p, 1/q) of the unit square with exact rational arithmetic; no floating
// point is involved, so piecewise formulas and region membership are decided
// without rounding ambiguity.
namespace sphmax::exponents {

// A point (1/p, 1/q).  inv_p = 0 encodes p = infinity.
struct Point {
  Rational inv_p;
  Rational inv_q;
};

// Admissible means 0 <= 1/q <= 1/p <= 1 (i.e. q >= p, both in [1, inf]).
[[nodiscard]] bool admissible(const Point& pt);

// The three maximands of sigma_n(p, q), in order:
//   [0]  1/p - n/q
//   [1]  (n+1)/(2p) - (n-1)/2 * (1/q + 1)
//   [2]  n/p - (n-1)
// Exposed individually so scaling experiments can quote the term their
// example family saturates.
[[nodiscard]] std::array<Rational, 3> sigma_terms(int n, const Point& pt);

// sigma_n(p, q) = max of the three terms above.  Requires n >= 2, admissible.
[[nodiscard]] Rational sigma(int n, const Point& pt);

// The additional maximand entering d_n for n > 2:
//   1/(2p) - (n-2)/(2q) - (n-1)/4
[[nodiscard]] Rational d_extra_term(int n, const Point& pt);

// d_n(p, q) = max(sigma_n, extra term).  Requires n > 2.
[[nodiscard]] Rational d_exponent(int n, const Point& pt);

// Sharp local smoothing exponent for the half-wave operator in dimension 2,
// piecewise linear in (1/p, 1/q) with three branches keyed on q vs p', 3p'.
[[nodiscard]] Rational s2(const Point& pt);

// Region decomposition of the admissible triangle used by s_n for n >= 3.
// The five closed triangles AOE, ABE, BCE, ABC, CDE partition the triangle
// ODE; boundary points are owned by the first triangle in this order that
// contains them.  OUTSIDE is returned when 1/q > 1/p.
enum class Region { AOE, ABE, BCE, ABC, CDE, OUTSIDE };

struct RegionInfo {
  Region region;
  bool on_boundary;  // point lies on an edge of the owning triangle
};

[[nodiscard]] RegionInfo classify_region(int n, const Point& pt);
[[nodiscard]] std::string region_name(Region r);

// s_n(p, q) for n >= 3: piecewise linear over the five-triangle partition.
[[nodiscard]] Rational s_n(int n, const Point& pt);

// Translation between smoothing and operator exponents:
//   alpha-threshold = s - (n-1)/2 + 1/q.
[[nodiscard]] Rational transfer_alpha(const Rational& s, int n,
                                      const Point& pt);

// Vertices of the partition diagram in the (1/p, 1/q) plane.
struct Vertices {
  Point O, A, B, C, D, E;
};
[[nodiscard]] Vertices figure_vertices(int n);

// Critical interpolation point: B = (1/p0, 1/q0) with smoothing order s0.
struct CriticalPoint {
  Rational inv_p0;
  Rational inv_q0;
  Rational s0;
};
[[nodiscard]] CriticalPoint critical_point(int n);

// The quadrangle Q with corners
//   P1=(0,0), P2=((n-1)/n,(n-1)/n), P3=((n-1)/n,1/n),
//   P4=(n(n-1)/(n^2+1),(n-1)/(n^2+1));
// interior of Q is exactly where the order-zero operator maps L^p -> L^q.
// Degenerates (P2 == P3) at n = 2.
[[nodiscard]] std::array<Point, 4> quadrangle(int n);

// Membership in Q; strict = interior only.
[[nodiscard]] bool in_quadrangle(int n, const Point& pt, bool strict);

}  // namespace sphmax::exponents
