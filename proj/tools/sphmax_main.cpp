// Command-line front end: exponent tables, multiplier dumps, operator
// application on stored fields, scaling experiments, and a self-test
// runner.  Exit codes: 0 success / all verdicts pass, 1 verdict or check
// failure, 2 invalid arguments or config, 3 resolution refusal.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphmax/exponents.hpp"
#include "sphmax/experiments.hpp"
#include "sphmax/grid.hpp"
#include "sphmax/io.hpp"
#include "sphmax/multiplier.hpp"
#include "sphmax/operators.hpp"
#include "sphmax/specfun.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using sphmax::Rational;
using sphmax::exponents::Point;
using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// exponents
// ---------------------------------------------------------------------------

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("point must be \"inv_p,inv_q\": " + text);
  return {Rational::parse(text.substr(0, comma)),
          Rational::parse(text.substr(comma + 1))};
}

std::string quadrangle_label(int n, const Point& pt) {
  if (sphmax::exponents::in_quadrangle(n, pt, /*strict=*/true))
    return "interior";
  if (sphmax::exponents::in_quadrangle(n, pt, /*strict=*/false))
    return "boundary";
  return "outside";
}

std::string exponent_rows(int n, const std::vector<Point>& pts) {
  namespace ex = sphmax::exponents;
  std::string out = "inv_p,inv_q,sigma,d,s,region,s_region\n";
  for (const Point& pt : pts) {
    if (!ex::admissible(pt))
      throw std::invalid_argument("point (" + pt.inv_p.str() + "," +
                                  pt.inv_q.str() + ") is not admissible");
    const Rational sigma = ex::sigma(n, pt);
    const std::string d = n > 2 ? ex::d_exponent(n, pt).str() : "";
    const Rational s = n == 2 ? ex::s2(pt) : ex::s_n(n, pt);
    const std::string s_region =
        n > 2 ? ex::region_name(ex::classify_region(n, pt).region) : "";
    out += pt.inv_p.str() + "," + pt.inv_q.str() + "," + sigma.str() + "," +
           d + "," + s.str() + "," + quadrangle_label(n, pt) + "," +
           s_region + "\n";
  }
  return out;
}

std::string rational_pair_json(const Point& pt) {
  return "[\"" + pt.inv_p.str() + "\", \"" + pt.inv_q.str() + "\"]";
}

std::string figure_json(int n) {
  namespace ex = sphmax::exponents;
  const ex::Vertices v = ex::figure_vertices(n);
  const ex::CriticalPoint crit = ex::critical_point(n);
  const auto quad = ex::quadrangle(n);
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(n) + ",\n";
  out += "  \"vertices\": {\n";
  out += "    \"O\": " + rational_pair_json(v.O) + ",\n";
  out += "    \"A\": " + rational_pair_json(v.A) + ",\n";
  out += "    \"B\": " + rational_pair_json(v.B) + ",\n";
  out += "    \"C\": " + rational_pair_json(v.C) + ",\n";
  out += "    \"D\": " + rational_pair_json(v.D) + ",\n";
  out += "    \"E\": " + rational_pair_json(v.E) + "\n";
  out += "  },\n";
  out += "  \"critical\": {\"inv_p0\": \"" + crit.inv_p0.str() +
         "\", \"inv_q0\": \"" + crit.inv_q0.str() + "\", \"s0\": \"" +
         crit.s0.str() + "\"},\n";
  out += "  \"quadrangle\": [";
  for (std::size_t i = 0; i < quad.size(); ++i) {
    if (i) out += ", ";
    out += rational_pair_json(quad[i]);
  }
  out += "]\n}\n";
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    sphmax::io::write_text_file(out_path, content);
  }
}

int cmd_exponents(int n, const std::vector<std::string>& points,
                  int grid_density, bool figure1,
                  const std::string& out_path) {
  if (figure1) {
    emit(figure_json(n), out_path);
    return 0;
  }
  std::vector<Point> pts;
  for (const auto& text : points) pts.push_back(parse_point(text));
  if (grid_density > 0) {
    for (int i = 0; i <= grid_density; ++i)
      for (int j = 0; j <= i; ++j)
        pts.push_back({Rational(i, grid_density), Rational(j, grid_density)});
  }
  if (pts.empty())
    throw std::invalid_argument(
        "exponents needs --point, --grid, or --figure1");
  emit(exponent_rows(n, pts), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// multiplier
// ---------------------------------------------------------------------------

int cmd_multiplier(int n, const std::string& alpha_text, double rmax,
                   int samples, const std::vector<double>& decompose,
                   const std::string& out_path) {
  namespace op = sphmax::operators;
  const cplx alpha = sphmax::io::parse_complex(alpha_text);
  if (samples < 2) throw std::invalid_argument("--samples must be >= 2");

  if (decompose.empty()) {
    std::string out = "r,re,im\n";
    for (int i = 0; i < samples; ++i) {
      const double r = rmax * i / (samples - 1);
      const cplx v = op::spherical_symbol(n, alpha, r);
      out += sphmax::io::format_float(r) + "," +
             sphmax::io::format_float(v.real()) + "," +
             sphmax::io::format_float(v.imag()) + "\n";
    }
    emit(out, out_path);
    return 0;
  }

  if (decompose.size() != 2)
    throw std::invalid_argument("--decompose takes N and M");
  const int N = static_cast<int>(decompose[0]);
  const double M = decompose[1];
  if (rmax <= 4.0 * M)
    throw std::invalid_argument("--rmax must exceed 4*M for a slope fit");
  const auto rs = op::log_spaced(1.0, rmax, samples);
  const auto dec = op::decompose_multiplier(n, alpha, N, M, rs);
  std::string out =
      "r,symbol_re,symbol_im,low_re,low_im,principal_plus_re,"
      "principal_plus_im,principal_minus_re,principal_minus_im,"
      "residual_re,residual_im\n";
  std::vector<double> resid_mag(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const cplx sym = dec.low[i] + dec.principal_plus[i] +
                     dec.principal_minus[i] + dec.residual[i];
    resid_mag[i] = std::abs(dec.residual[i]);
    out += sphmax::io::format_float(rs[i]) + "," +
           sphmax::io::format_float(sym.real()) + "," +
           sphmax::io::format_float(sym.imag()) + "," +
           sphmax::io::format_float(dec.low[i].real()) + "," +
           sphmax::io::format_float(dec.low[i].imag()) + "," +
           sphmax::io::format_float(dec.principal_plus[i].real()) + "," +
           sphmax::io::format_float(dec.principal_plus[i].imag()) + "," +
           sphmax::io::format_float(dec.principal_minus[i].real()) + "," +
           sphmax::io::format_float(dec.principal_minus[i].imag()) + "," +
           sphmax::io::format_float(dec.residual[i].real()) + "," +
           sphmax::io::format_float(dec.residual[i].imag()) + "\n";
  }
  emit(out, out_path);
  const double slope = op::envelope_log2_slope(rs, resid_mag, 2.0 * M, rmax);
  const std::string summary =
      "residual_log2_slope=" + sphmax::io::format_float(slope) + "\n" +
      "c_low=" + sphmax::io::format_float(dec.c_low) + "\n" +
      "max_arg_deviation=" +
      sphmax::io::format_float(dec.max_arg_deviation) + "\n" +
      "smallest_arg_threshold=" +
      sphmax::io::format_float(dec.smallest_arg_threshold) + "\n";
  // Keep a bare-stdout dump clean: the summary goes to stderr unless the
  // CSV went to a file.
  std::fputs(summary.c_str(), out_path.empty() ? stderr : stdout);
  return 0;
}

// ---------------------------------------------------------------------------
// apply / maximal
// ---------------------------------------------------------------------------

sphmax::operators::CutoffSpec::Kind parse_cutoff_kind(
    const std::string& name) {
  using Kind = sphmax::operators::CutoffSpec::Kind;
  if (name == "lowpass") return Kind::Lowpass;
  if (name == "dyadic") return Kind::Dyadic;
  if (name == "annular") return Kind::AnnularBump;
  if (name == "plate") return Kind::Plate;
  if (name == "cone") return Kind::ConeSector;
  if (name == "chirp") return Kind::Chirp;
  throw std::invalid_argument("unknown cutoff kind: " + name);
}

int cmd_apply(const std::string& in_path, const std::string& out_path,
              const std::string& op_name, const std::string& alpha_text,
              double t, double s, const std::string& cutoff_name, int j,
              double M, double delta, const std::string& profile_path,
              int profile_bins) {
  namespace op = sphmax::operators;
  sphmax::field::Field f = sphmax::field::read_field(in_path);
  sphmax::field::Field result = [&]() {
    if (op_name == "mean")
      return op::spherical_mean(f, sphmax::io::parse_complex(alpha_text), t);
    if (op_name == "halfwave+") return op::half_wave(f, t, +1);
    if (op_name == "halfwave-") return op::half_wave(f, t, -1);
    if (op_name == "bracket") return op::bracket_power(f, s);
    if (op_name == "cutoff") {
      op::CutoffSpec spec;
      spec.kind = parse_cutoff_kind(cutoff_name);
      spec.j = j;
      spec.M = M;
      spec.delta = delta;
      return op::apply_cutoff(f, spec);
    }
    throw std::invalid_argument("unknown --op: " + op_name);
  }();
  sphmax::field::write_field(result, out_path);
  if (!profile_path.empty())
    sphmax::field::write_radial_profile_csv(result, profile_path,
                                            profile_bins);
  return 0;
}

int cmd_maximal(const std::string& in_path, const std::string& out_path,
                const std::string& alpha_text, double tmin, double tmax,
                int tcount, const std::string& profile_path,
                int profile_bins) {
  if (tcount < 1) throw std::invalid_argument("--tcount must be >= 1");
  if (!(tmin > 0.0) || tmax < tmin)
    throw std::invalid_argument("need 0 < tmin <= tmax");
  std::vector<double> ts(static_cast<std::size_t>(tcount));
  for (int i = 0; i < tcount; ++i)
    ts[static_cast<std::size_t>(i)] =
        tcount == 1 ? tmin : tmin + (tmax - tmin) * i / (tcount - 1.0);
  sphmax::field::Field f = sphmax::field::read_field(in_path);
  sphmax::field::Field result = sphmax::operators::maximal_over_t(
      f, sphmax::io::parse_complex(alpha_text), ts);
  sphmax::field::write_field(result, out_path);
  if (!profile_path.empty())
    sphmax::field::write_radial_profile_csv(result, profile_path,
                                            profile_bins);
  return 0;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

int cmd_experiment(const std::string& config_path,
                   const std::string& outdir) {
  namespace ex = sphmax::experiments;
  std::string text = sphmax::io::read_text_file(config_path);
  {
    // A manifest is itself a valid config carrier: replaying it reuses the
    // embedded materialized config.
    nlohmann::json doc = nlohmann::json::parse(text, nullptr,
                                               /*allow_exceptions=*/false);
    if (doc.is_object() && doc.contains("config")) text = doc["config"].dump();
  }
  const ex::ExperimentConfig cfg = ex::parse_config_json(text);
  const ex::ScalingReport report = ex::run_experiment(cfg);

  std::filesystem::create_directories(outdir);
  const std::string csv_path = outdir + "/report.csv";
  const std::string json_path = outdir + "/report.json";
  sphmax::io::write_text_file(csv_path, ex::report_csv(report));
  sphmax::io::write_text_file(json_path, ex::report_json(report));

  std::string manifest = "{\n";
  manifest += "  \"command\": \"experiment\",\n";
  manifest += std::string("  \"tool_version\": \"") + kVersion + "\",\n";
  manifest += "  \"config\": " + ex::config_json(report.config) + ",\n";
  manifest += "  \"seed\": " + std::to_string(report.config.seed) + ",\n";
  manifest += "  \"runtime_seconds\": \"" +
              sphmax::io::format_float(report.runtime_seconds) + "\",\n";
  manifest += "  \"outputs\": [\n";
  manifest += "    {\"path\": \"report.csv\", \"sha256\": \"" +
              sphmax::io::sha256_file(csv_path) + "\"},\n";
  manifest += "    {\"path\": \"report.json\", \"sha256\": \"" +
              sphmax::io::sha256_file(json_path) + "\"}\n";
  manifest += "  ]\n}\n";
  sphmax::io::write_text_file(outdir + "/manifest.json", manifest);

  std::printf("family=%s fitted_slope=%s predicted_slope=%s verdict=%s\n",
              ex::family_name(report.config.family).c_str(),
              sphmax::io::format_float(report.fitted_slope).c_str(),
              sphmax::io::format_float(report.predicted_slope).c_str(),
              report.pass ? "pass" : "fail");
  return report.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Point> random_admissible_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> den_dist(1, 50);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(pts.size()) < count) {
    const std::int64_t d1 = den_dist(rng), d2 = den_dist(rng);
    std::uniform_int_distribution<std::int64_t> a_dist(0, d1);
    const std::int64_t a = a_dist(rng);
    // v <= u = a/d1: draw b <= d2*a/d1.
    const std::int64_t b_max = (d2 * a) / d1;
    std::uniform_int_distribution<std::int64_t> b_dist(0, b_max);
    pts.push_back({Rational(a, d1), Rational(b_dist(rng), d2)});
  }
  return pts;
}

CheckResult check_exponent_identity(bool fault_s2_branch) {
  namespace ex = sphmax::exponents;
  const auto pts = random_admissible_points(2000, 271828u);
  for (const Point& pt : pts) {
    // sigma_2 = s_2 - 1/2 + 1/q exactly.
    Rational s2 = ex::s2(pt);
    if (fault_s2_branch) {
      // Deliberate fault: nudge the middle branch (p' <= q <= 3 p') by 1e-6.
      const Rational u = pt.inv_p, v = pt.inv_q;
      const Rational one_minus_u = Rational(1) - u;
      if (v <= one_minus_u && Rational(3) * v >= one_minus_u)
        s2 = s2 + Rational(1, 1000000);
    }
    if (ex::sigma(2, pt) != s2 - Rational(1, 2) + pt.inv_q)
      return {"exponent-identity", false,
              "sigma_2 != s_2 - 1/2 + 1/q at (" + pt.inv_p.str() + "," +
                  pt.inv_q.str() + ")"};
    for (const int n : {3, 5}) {
      const Rational lhs = ex::d_exponent(n, pt);
      const Rational rhs =
          ex::s_n(n, pt) - Rational(n - 1, 2) + pt.inv_q;
      if (lhs != rhs)
        return {"exponent-identity", false,
                "d_n != s_n - (n-1)/2 + 1/q at n=" + std::to_string(n)};
    }
  }
  return {"exponent-identity", true, "2000 random points, n in {2,3,5}"};
}

CheckResult check_vertex_consistency() {
  namespace ex = sphmax::exponents;
  for (int n = 3; n <= 10; ++n) {
    const ex::CriticalPoint crit = ex::critical_point(n);
    const ex::Vertices v = ex::figure_vertices(n);
    if (!(v.B.inv_p == crit.inv_p0) || !(v.B.inv_q == crit.inv_q0))
      return {"vertex-consistency", false, "B != (1/p0, 1/q0)"};
    if (!(ex::s_n(n, v.B) == crit.s0))
      return {"vertex-consistency", false,
              "s_n(B) != s0 at n=" + std::to_string(n)};
  }
  return {"vertex-consistency", true, "n = 3..10"};
}

CheckResult check_gamma() {
  namespace sf = sphmax::specfun;
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  if (std::abs(sf::gamma(cplx(0.5, 0.0)).real() - sqrt_pi) > 1e-12)
    return {"gamma-values", false, "Gamma(1/2) != sqrt(pi) to 1e-12"};
  if (std::abs(sf::gamma(cplx(5.0, 0.0)).real() - 24.0) > 1e-10)
    return {"gamma-values", false, "Gamma(5) != 24 to 1e-10"};
  const double mag = std::abs(sf::gamma(cplx(1.0, 1.0)));
  const double expect = std::sqrt(std::acos(-1.0) / std::sinh(std::acos(-1.0)));
  if (std::abs(mag - expect) > 1e-12)
    return {"gamma-values", false, "|Gamma(1+i)| off by > 1e-12"};
  return {"gamma-values", true, "half-integer, integer, complex"};
}

CheckResult check_bessel() {
  namespace sf = sphmax::specfun;
  const double z0 = 2.4048255576957727686;
  if (std::abs(sf::bessel_j(cplx(0.0, 0.0), z0)) > 1e-12)
    return {"bessel-values", false, "J_0 first zero off by > 1e-12"};
  const double pi = std::acos(-1.0);
  for (const double r : {0.7, 5.0, 40.0}) {
    const cplx direct = sf::bessel_j(cplx(0.5, 0.0), r);
    const double closed = std::sqrt(2.0 / (pi * r)) * std::sin(r);
    if (std::abs(direct - closed) > 1e-12)
      return {"bessel-values", false, "J_{1/2} closed form off at r=" +
                                          std::to_string(r)};
  }
  return {"bessel-values", true, "first zero and half-order closed form"};
}

CheckResult check_hankel_decay(bool fault_phase) {
  namespace sf = sphmax::specfun;
  namespace op = sphmax::operators;
  const auto rs = op::log_spaced(8.0, 512.0, 400);
  std::vector<double> resid(rs.size());
  auto coeffs = sf::hankel_coefficients(cplx(0.0, 0.0), 3);
  if (fault_phase) coeffs.b[0] = std::conj(coeffs.b[0]);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = rs[i];
    cplx sum_b = 0.0, sum_d = 0.0, rp = 1.0;
    for (std::size_t k = 0; k < coeffs.b.size(); ++k) {
      sum_b += coeffs.b[k] * rp;
      sum_d += coeffs.d[k] * rp;
      rp /= r;
    }
    const cplx expansion =
        (std::exp(cplx(0.0, r)) * sum_b + std::exp(cplx(0.0, -r)) * sum_d) /
        std::sqrt(r);
    resid[i] = std::abs(sf::bessel_j(cplx(0.0, 0.0), r) - expansion);
  }
  const double slope = op::envelope_log2_slope(rs, resid, 8.0, 512.0);
  if (slope > -3.2)
    return {"hankel-expansion-decay", false,
            "fitted slope " + sphmax::io::format_float(slope) +
                " exceeds -3.2"};
  return {"hankel-expansion-decay", true,
          "slope " + sphmax::io::format_float(slope) + " <= -3.2"};
}

CheckResult check_transform_roundtrip() {
  namespace fd = sphmax::field;
  fd::GridSpec spec;
  spec.dim = 2;
  spec.points_per_axis = 64;
  spec.box_length = 4.0;
  fd::Field f = fd::make_field(spec);
  std::mt19937_64 rng(99u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.data) z = cplx(u(rng), u(rng));
  fd::Field g = f;
  fd::to_frequency(g);
  double freq_l2 = 0.0;
  for (const auto& z : g.data) freq_l2 += std::norm(z);
  freq_l2 = std::sqrt(freq_l2 / std::pow(spec.box_length, 2));
  const double space_l2 = fd::lebesgue_norm(f, 2.0);
  if (std::abs(freq_l2 - space_l2) > 1e-12 * space_l2)
    return {"transform-roundtrip", false, "Parseval violated beyond 1e-12"};
  fd::to_space(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.data.size(); ++i)
    worst = std::max(worst, std::abs(f.data[i] - g.data[i]));
  if (worst > 1e-13)
    return {"transform-roundtrip", false, "round trip error > 1e-13"};
  return {"transform-roundtrip", true, "64x64 random field"};
}

CheckResult check_multiplier_limits() {
  namespace op = sphmax::operators;
  if (std::abs(op::spherical_multiplier_raw(2, cplx(1.0, 0.0), 0.0) -
               op::unit_ball_volume(2)) > 1e-12)
    return {"multiplier-limits", false, "order-1 limit != vol(B^2)"};
  if (std::abs(op::spherical_multiplier_raw(3, cplx(1.0, 0.0), 0.0) -
               op::unit_ball_volume(3)) > 1e-12)
    return {"multiplier-limits", false, "order-1 limit != vol(B^3)"};
  const double pi = std::acos(-1.0);
  for (const double r : {0.3, 4.25, 33.0}) {
    const double expect = std::sin(2.0 * pi * r) / (2.0 * pi * r);
    if (std::abs(op::spherical_symbol(3, cplx(0.0, 0.0), r) - expect) >
        1e-11)
      return {"multiplier-limits", false, "sinc law off at r=" +
                                              std::to_string(r)};
  }
  return {"multiplier-limits", true, "ball volumes and n=3 sinc law"};
}

CheckResult check_halfwave() {
  namespace fd = sphmax::field;
  namespace op = sphmax::operators;
  fd::GridSpec spec;
  spec.dim = 2;
  spec.points_per_axis = 64;
  spec.box_length = 4.0;
  fd::Field f = fd::make_field(spec);
  std::mt19937_64 rng(123u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.data) z = cplx(u(rng), u(rng));
  const double before = fd::lebesgue_norm(f, 2.0);
  fd::Field w = op::half_wave(f, 0.37, +1);
  if (std::abs(fd::lebesgue_norm(w, 2.0) - before) > 1e-10 * before)
    return {"halfwave-unitarity", false, "L2 norm drifts beyond 1e-10"};
  fd::Field two = op::half_wave(op::half_wave(f, 0.3, +1), 0.45, +1);
  fd::Field one = op::half_wave(f, 0.75, +1);
  double worst = 0.0;
  for (std::size_t i = 0; i < two.data.size(); ++i)
    worst = std::max(worst, std::abs(two.data[i] - one.data[i]));
  if (worst > 1e-10 * before)
    return {"halfwave-unitarity", false, "group law violated beyond 1e-10"};
  return {"halfwave-unitarity", true, "unitarity and group law"};
}

CheckResult check_partition_of_unity() {
  namespace fd = sphmax::field;
  namespace op = sphmax::operators;
  fd::GridSpec spec;
  spec.dim = 2;
  spec.points_per_axis = 64;
  spec.box_length = 2.0;
  fd::Field f = fd::make_field(spec);
  std::mt19937_64 rng(5u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.data) z = cplx(u(rng), u(rng));
  fd::to_frequency(f);
  // Keep only frequencies below 4 so that lowpass(M=1) + two dyadic shells
  // reproduce the input exactly.
  const int n = spec.points_per_axis;
  for (int b0 = 0; b0 < n; ++b0)
    for (int b1 = 0; b1 < n; ++b1) {
      const double x0 = spec.freq(b0), x1 = spec.freq(b1);
      if (x0 * x0 + x1 * x1 > 16.0)
        f.data[static_cast<std::size_t>(b0 * n + b1)] = 0.0;
    }
  op::CutoffSpec low;
  low.kind = op::CutoffSpec::Kind::Lowpass;
  low.M = 1.0;
  fd::Field sum = op::apply_cutoff(f, low);
  for (int j = 1; j <= 2; ++j) {
    op::CutoffSpec dy;
    dy.kind = op::CutoffSpec::Kind::Dyadic;
    dy.M = 1.0;
    dy.j = j;
    const fd::Field part = op::apply_cutoff(f, dy);
    for (std::size_t i = 0; i < sum.data.size(); ++i)
      sum.data[i] += part.data[i];
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < sum.data.size(); ++i)
    worst = std::max(worst, std::abs(sum.data[i] - f.data[i]));
  if (worst > 1e-12)
    return {"partition-of-unity", false, "reconstruction error > 1e-12"};
  return {"partition-of-unity", true, "lowpass + 2 dyadic shells"};
}

int cmd_selftest(const std::string& fault) {
  if (!fault.empty() && fault != "s2-branch" && fault != "hankel-phase")
    throw std::invalid_argument("unknown --fault: " + fault);
  std::vector<CheckResult> results;
  results.push_back(check_exponent_identity(fault == "s2-branch"));
  results.push_back(check_vertex_consistency());
  results.push_back(check_gamma());
  results.push_back(check_bessel());
  results.push_back(check_hankel_decay(fault == "hankel-phase"));
  results.push_back(check_transform_roundtrip());
  results.push_back(check_multiplier_limits());
  results.push_back(check_halfwave());
  results.push_back(check_partition_of_unity());
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    failures += r.pass ? 0 : 1;
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) -
                                            failures,
              results.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical-mean maximal operator toolkit"};
  app.set_version_flag("--version", std::string("sphmax ") + kVersion);
  app.require_subcommand(1);

  // exponents
  auto* exp_cmd = app.add_subcommand(
      "exponents", "Exact exponent tables and region diagrams");
  int exp_n = 2;
  std::vector<std::string> exp_points;
  int exp_grid = 0;
  bool exp_figure = false;
  std::string exp_out;
  exp_cmd->add_option("--n", exp_n, "dimension")->required();
  exp_cmd->add_option("--point", exp_points,
                      "evaluation point \"inv_p,inv_q\" (repeatable)");
  exp_cmd->add_option("--grid", exp_grid, "rational grid density");
  exp_cmd->add_flag("--figure1", exp_figure, "emit the vertex polygon JSON");
  exp_cmd->add_option("--out", exp_out, "output file (default stdout)");

  // multiplier
  auto* mul_cmd =
      app.add_subcommand("multiplier", "Radial symbol dumps");
  int mul_n = 2;
  std::string mul_alpha = "0+0i";
  double mul_rmax = 8.0;
  int mul_samples = 256;
  std::vector<double> mul_decompose;
  std::string mul_out;
  bool mul_rmax_set = false, mul_samples_set = false;
  mul_cmd->add_option("--n", mul_n, "dimension")->required();
  mul_cmd->add_option("--alpha", mul_alpha, "complex order \"a+bi\"");
  mul_cmd->add_option("--rmax", mul_rmax, "largest radius")
      ->each([&](const std::string&) { mul_rmax_set = true; });
  mul_cmd->add_option("--samples", mul_samples, "sample count")
      ->each([&](const std::string&) { mul_samples_set = true; });
  mul_cmd->add_option("--decompose", mul_decompose,
                      "N M: oscillatory decomposition dump")
      ->expected(2);
  mul_cmd->add_option("--out", mul_out, "output file (default stdout)");

  // apply
  auto* apply_cmd =
      app.add_subcommand("apply", "Apply one operator to a stored field");
  std::string ap_in, ap_out, ap_op = "mean", ap_alpha = "0+0i";
  std::string ap_cutoff = "lowpass", ap_profile;
  double ap_t = 1.0, ap_s = 0.0, ap_M = 4.0, ap_delta = 0.25;
  int ap_j = 1, ap_bins = 128;
  apply_cmd->add_option("--in", ap_in, "input field container")->required();
  apply_cmd->add_option("--out", ap_out, "output field container")
      ->required();
  apply_cmd->add_option(
      "--op", ap_op, "mean | halfwave+ | halfwave- | bracket | cutoff");
  apply_cmd->add_option("--alpha", ap_alpha, "complex order \"a+bi\"");
  apply_cmd->add_option("--t", ap_t, "dilation / time");
  apply_cmd->add_option("--s", ap_s, "bracket power");
  apply_cmd->add_option("--cutoff", ap_cutoff,
                        "lowpass | dyadic | annular | plate | cone | chirp");
  apply_cmd->add_option("--j", ap_j, "dyadic scale");
  apply_cmd->add_option("--M", ap_M, "lowpass scale");
  apply_cmd->add_option("--delta", ap_delta, "plate width");
  apply_cmd->add_option("--profile", ap_profile, "radial profile CSV path");
  apply_cmd->add_option("--bins", ap_bins, "profile bin count");

  // maximal
  auto* max_cmd = app.add_subcommand(
      "maximal", "Pointwise maximum over a dilation grid");
  std::string mx_in, mx_out, mx_alpha = "0+0i", mx_profile;
  double mx_tmin = 1.0, mx_tmax = 2.0;
  int mx_tcount = 17, mx_bins = 128;
  max_cmd->add_option("--in", mx_in, "input field container")->required();
  max_cmd->add_option("--out", mx_out, "output field container")->required();
  max_cmd->add_option("--alpha", mx_alpha, "complex order \"a+bi\"");
  max_cmd->add_option("--tmin", mx_tmin, "first dilation");
  max_cmd->add_option("--tmax", mx_tmax, "last dilation");
  max_cmd->add_option("--tcount", mx_tcount, "dilation count");
  max_cmd->add_option("--profile", mx_profile, "radial profile CSV path");
  max_cmd->add_option("--bins", mx_bins, "profile bin count");

  // experiment
  auto* ex_cmd = app.add_subcommand(
      "experiment", "Run a scaling experiment from a JSON config");
  std::string ex_config, ex_outdir = ".";
  ex_cmd->add_option("--config", ex_config, "config or manifest JSON file")
      ->required();
  ex_cmd->add_option("--outdir", ex_outdir, "output directory");

  // selftest
  auto* st_cmd =
      app.add_subcommand("selftest", "Run the built-in invariant checks");
  std::string st_fault;
  st_cmd->add_option(
      "--fault", st_fault,
      "deliberate fault injection (s2-branch | hankel-phase) to "
      "demonstrate check sensitivity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (exp_cmd->parsed())
      return cmd_exponents(exp_n, exp_points, exp_grid, exp_figure, exp_out);
    if (mul_cmd->parsed()) {
      if (!mul_decompose.empty()) {
        if (!mul_rmax_set) mul_rmax = 1024.0;
        if (!mul_samples_set) mul_samples = 800;
      }
      return cmd_multiplier(mul_n, mul_alpha, mul_rmax, mul_samples,
                            mul_decompose, mul_out);
    }
    if (apply_cmd->parsed())
      return cmd_apply(ap_in, ap_out, ap_op, ap_alpha, ap_t, ap_s, ap_cutoff,
                       ap_j, ap_M, ap_delta, ap_profile, ap_bins);
    if (max_cmd->parsed())
      return cmd_maximal(mx_in, mx_out, mx_alpha, mx_tmin, mx_tmax,
                         mx_tcount, mx_profile, mx_bins);
    if (ex_cmd->parsed()) return cmd_experiment(ex_config, ex_outdir);
    if (st_cmd->parsed()) return cmd_selftest(st_fault);
  } catch (const sphmax::operators::ResolutionError& e) {
    std::fprintf(stderr, "resolution refusal: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
