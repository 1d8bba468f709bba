#include "sphmax/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "sphmax/io.hpp"
#include "sphmax/operators.hpp"

namespace sphmax::experiments {

namespace {

using field::Field;
using field::GridSpec;
using std::numbers::pi;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Frequency-side sector aperture for the cone family (inner plateau /
// outer support chords) and the matching space-side observation aperture.
constexpr double kConeInnerChord = 0.15;
constexpr double kConeOuterChord = 0.30;

double exponent_value(const Rational& inv) {
  return inv.num() == 0 ? kInf
                        : static_cast<double>(inv.den()) / inv.num();
}

std::string exponent_string(const Rational& inv) {
  if (inv.num() == 0) return "inf";
  const Rational p(inv.den(), inv.num());
  if (p.den() == 1) return std::to_string(p.num());
  return p.str();
}

// Input of norm one is never needed: only slopes matter, so every family
// uses the unnormalized bump of height one.
Field ones_frequency(const GridSpec& spec) {
  Field f = field::make_field(spec, field::Representation::Frequency);
  for (auto& z : f.data) z = 1.0;
  return f;
}

Field focusing_input(const GridSpec& spec, int j) {
  operators::CutoffSpec ring;
  ring.kind = operators::CutoffSpec::Kind::AnnularBump;
  ring.j = j;
  Field f = operators::apply_cutoff(ones_frequency(spec), ring);
  operators::CutoffSpec chirp;
  chirp.kind = operators::CutoffSpec::Kind::Chirp;
  return operators::apply_cutoff(f, chirp);
}

Field plate_input(const GridSpec& spec, int j, double delta) {
  operators::CutoffSpec plate;
  plate.kind = operators::CutoffSpec::Kind::Plate;
  plate.j = j;
  plate.delta = delta;
  plate.direction = {1.0, 0.0, 0.0};
  return operators::apply_cutoff(ones_frequency(spec), plate);
}

Field cone_input(const GridSpec& spec, int j) {
  operators::CutoffSpec ring;
  ring.kind = operators::CutoffSpec::Kind::AnnularBump;
  ring.j = j;
  Field f = operators::apply_cutoff(ones_frequency(spec), ring);
  operators::CutoffSpec sector;
  sector.kind = operators::CutoffSpec::Kind::ConeSector;
  sector.direction = {1.0, 0.0, 0.0};
  sector.inner_chord = kConeInnerChord;
  sector.outer_chord = kConeOuterChord;
  return operators::apply_cutoff(f, sector);
}

// Annulus 2^{k-1} <= |xi| <= 2^{k+1} filled with unit-variance complex
// Gaussians drawn in row-major bin order (deterministic for a fixed seed).
Field smoothing_random_input(const GridSpec& spec, int k,
                             std::uint64_t seed) {
  Field f = field::make_field(spec, field::Representation::Frequency);
  // The support must respect the oversampling rule like every other input.
  const double top = std::exp2(k + 1);
  const double limit = spec.points_per_axis / (4.0 * spec.box_length);
  if (top > limit * (1.0 + 1e-12))
    throw operators::ResolutionError(
        "smoothing annulus radius " + std::to_string(top) +
        " exceeds the oversampling limit " + std::to_string(limit));
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull *
                              static_cast<std::uint64_t>(k)));
  auto unit = [&rng]() {  // uniform in (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  const double lo2 = std::exp2(2 * (k - 1)), hi2 = std::exp2(2 * (k + 1));
  const int n = spec.points_per_axis;
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < f.data.size(); ++flat) {
    double r2 = 0.0;
    for (int a = 0; a < spec.dim; ++a) {
      const double x = spec.freq(idx[static_cast<std::size_t>(a)]);
      r2 += x * x;
    }
    if (r2 >= lo2 && r2 <= hi2) {
      const double u1 = unit(), u2 = unit();
      const double amp = std::sqrt(-2.0 * std::log(u1));
      f.data[flat] = cplx(amp * std::cos(2.0 * pi * u2),
                          amp * std::sin(2.0 * pi * u2));
    }
    for (int a = spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
  return f;
}

Field smoothing_bump_input(const GridSpec& spec, int k) {
  operators::CutoffSpec ring;
  ring.kind = operators::CutoffSpec::Kind::AnnularBump;
  ring.j = k;
  return operators::apply_cutoff(ones_frequency(spec), ring);
}

double ols_slope(const std::vector<double>& xs,
                 const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = m * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("degenerate regression");
  return (m * sxy - sx * sy) / det;
}

struct RowResult {
  ScalingRow row;
  double argmax_mean_deviation = -1.0;
};

RowResult run_one_scale(const ExperimentConfig& cfg, int j,
                        const GridSpec& spec) {
  const double p = exponent_value(cfg.point.inv_p);
  const double q = exponent_value(cfg.point.inv_q);
  RowResult result;
  ScalingRow& row = result.row;
  row.j = j;

  Field input = [&]() {
    switch (cfg.family) {
      case Family::Focusing: return focusing_input(spec, j);
      case Family::Plate: return plate_input(spec, j, cfg.delta);
      case Family::Cone: return cone_input(spec, j);
      case Family::Smoothing:
        return cfg.input == InputKind::GaussianRandom
                   ? smoothing_random_input(spec, j, cfg.seed)
                   : smoothing_bump_input(spec, j);
    }
    throw std::logic_error("unknown family");
  }();

  {
    Field space = input;
    field::to_space(space);
    row.in_norm = field::lebesgue_norm(space, p);
  }

  const std::vector<double> t_grid =
      dilation_grid(cfg.family, j, cfg.t_samples);

  if (cfg.family == Family::Focusing) {
    Field out = operators::spherical_mean(input, cfg.alpha, 1.0);
    field::to_space(out);
    const field::RegionMask ball =
        field::mask_ball(spec, spec.center, cfg.epsilon * std::exp2(-j));
    row.out_norm_restricted = field::lebesgue_norm(out, q, &ball);
    row.out_norm_full = field::lebesgue_norm(out, q);
  } else if (cfg.family == Family::Plate || cfg.family == Family::Cone) {
    std::vector<double> argmax_t;
    const bool want_argmax = cfg.family == Family::Cone;
    Field out = operators::maximal_over_t(input, cfg.alpha, t_grid,
                                          want_argmax ? &argmax_t : nullptr);
    field::RegionMask mask;
    if (cfg.family == Family::Plate) {
      std::vector<field::AxisInterval> box(
          static_cast<std::size_t>(spec.dim));
      box[0] = {1.0, 2.0};
      const double width = std::exp2(-0.5 * j);
      for (int a = 1; a < spec.dim; ++a)
        box[static_cast<std::size_t>(a)] = {-width, width};
      mask = field::mask_box(spec, box);
    } else {
      mask = field::mask_sector(spec, {1.0, 0.0, 0.0}, kConeInnerChord, 1.0,
                                2.0);
    }
    row.out_norm_restricted = field::lebesgue_norm(out, q, &mask);
    row.out_norm_full = field::lebesgue_norm(out, q);
    if (want_argmax && !mask.empty()) {
      // How far the maximizing dilation sits from |x| on the observation
      // sector; wave-front focusing predicts a small deviation.
      const int n = spec.points_per_axis;
      std::array<int, 3> idx{0, 0, 0};
      double dev_sum = 0.0;
      for (std::size_t flat = 0; flat < argmax_t.size(); ++flat) {
        if (mask.inside[flat]) {
          double r2 = 0.0;
          for (int a = 0; a < spec.dim; ++a) {
            const double x =
                spec.coord(idx[static_cast<std::size_t>(a)], a);
            r2 += x * x;
          }
          dev_sum += std::abs(argmax_t[flat] - std::sqrt(r2));
        }
        for (int a = spec.dim - 1; a >= 0; --a) {
          auto& v = idx[static_cast<std::size_t>(a)];
          if (++v < n) break;
          v = 0;
        }
      }
      result.argmax_mean_deviation =
          dev_sum / static_cast<double>(mask.count);
    }
  } else {  // Smoothing
    // Space-time norm over t in [1, 2]: trapezoid in t for finite q, sup
    // over t for q = inf.
    const std::size_t count = t_grid.size();
    double st_accum = 0.0, st_sup = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      Field out = operators::half_wave(input, t_grid[i], +1);
      field::to_space(out);
      const double norm_t = field::lebesgue_norm(out, q);
      if (q == kInf) {
        st_sup = std::max(st_sup, norm_t);
      } else {
        const double weight = (i == 0 || i + 1 == count) ? 0.5 : 1.0;
        st_accum += weight * std::pow(norm_t, q);
      }
    }
    const double dt = (t_grid.back() - t_grid.front()) /
                      static_cast<double>(count - 1);
    row.out_norm_restricted =
        q == kInf ? st_sup : std::pow(st_accum * dt, 1.0 / q);
    row.out_norm_full = row.out_norm_restricted;
  }

  row.log2_ratio = std::log2(row.out_norm_restricted / row.in_norm);
  return result;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Focusing: return "focusing";
    case Family::Plate: return "plate";
    case Family::Cone: return "cone";
    case Family::Smoothing: return "smoothing";
  }
  throw std::logic_error("unknown family");
}

Family parse_family(const std::string& name) {
  if (name == "focusing") return Family::Focusing;
  if (name == "plate") return Family::Plate;
  if (name == "cone") return Family::Cone;
  if (name == "smoothing") return Family::Smoothing;
  throw std::invalid_argument("unknown family: " + name);
}

GridSpec default_grid(Family family, int dim, int j) {
  if (j < 1) throw std::invalid_argument("scale index must be >= 1");
  GridSpec spec;
  spec.dim = dim;
  if (dim == 3) {
    // Desk-scale 3-d plan: one size fits the scales it can resolve.
    spec.box_length = 2.0;
    spec.points_per_axis = 256;
    const double top = family == Family::Smoothing ? std::exp2(j + 1)
                                                   : 1.75 * std::exp2(j);
    if (top > spec.points_per_axis / (4.0 * spec.box_length))
      throw std::invalid_argument(
          "no built-in 3-d grid resolves scale j=" + std::to_string(j));
    return spec;
  }
  if (dim != 2) throw std::invalid_argument("grid plan needs dim 2 or 3");
  const int jc = std::max(j, 3);  // small scales reuse the j=3 grid
  switch (family) {
    case Family::Focusing:
      if (j <= 6) {
        spec.box_length = 4.0;
        spec.points_per_axis = 256 << (jc - 3);
      } else if (j == 7) {
        spec.box_length = 2.25;
        spec.points_per_axis = 2048;
      } else {
        throw std::invalid_argument("focusing plan stops at j=7");
      }
      return spec;
    case Family::Plate:
      if (j <= 6) {
        spec.box_length = 4.5;
        spec.points_per_axis = 256 << (jc - 3);
      } else if (j == 7) {
        spec.box_length = 3.5;
        spec.points_per_axis = 2048;
        spec.center = {0.85, 0.0, 0.0};
      } else {
        throw std::invalid_argument("plate plan stops at j=7");
      }
      return spec;
    case Family::Cone:
      if (j > 6) throw std::invalid_argument("cone plan stops at j=6");
      spec.box_length = 4.5;
      spec.points_per_axis = 256 << (jc - 3);
      return spec;
    case Family::Smoothing:
      if (j > 5) throw std::invalid_argument("smoothing plan stops at k=5");
      spec.box_length = 5.0;
      spec.points_per_axis = 512 << (std::max(j, 3) - 3);
      return spec;
  }
  throw std::logic_error("unknown family");
}

std::vector<double> dilation_grid(Family family, int j, int count) {
  if (family == Family::Focusing) return {1.0};
  if (count == 0) {
    count = family == Family::Smoothing
                ? 17
                : static_cast<int>(std::exp2(j + 2)) + 1;
  }
  if (count < 2)
    throw std::invalid_argument("dilation grid needs at least 2 samples");
  std::vector<double> ts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    ts[static_cast<std::size_t>(i)] = 1.0 + i / (count - 1.0);
  return ts;
}

SlopeFit fit_slope(const std::vector<ScalingRow>& rows, int window_lo,
                   int window_hi) {
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    if (row.j < window_lo || row.j > window_hi) continue;
    xs.push_back(row.j);
    ys.push_back(row.log2_ratio);
  }
  if (xs.size() < 2)
    throw std::invalid_argument("slope window holds fewer than 2 rows");
  SlopeFit fit;
  fit.slope = ols_slope(xs, ys);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double intercept =
      sy / static_cast<double>(xs.size()) -
      fit.slope * sx / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residual_max = std::max(
        fit.residual_max, std::abs(ys[i] - fit.slope * xs[i] - intercept));
  return fit;
}

double predicted_slope(const ExperimentConfig& cfg) {
  switch (cfg.family) {
    case Family::Focusing:
      return exponents::sigma_terms(cfg.dim, cfg.point)[0].to_double() -
             cfg.alpha.real();
    case Family::Plate:
      return exponents::sigma_terms(cfg.dim, cfg.point)[1].to_double() -
             cfg.alpha.real();
    case Family::Cone:
      return exponents::sigma_terms(cfg.dim, cfg.point)[2].to_double() -
             cfg.alpha.real();
    case Family::Smoothing:
      return cfg.dim == 2 ? exponents::s2(cfg.point).to_double()
                          : exponents::s_n(cfg.dim, cfg.point).to_double();
  }
  throw std::logic_error("unknown family");
}

double default_tolerance(Family family) {
  switch (family) {
    case Family::Focusing: return 0.15;
    case Family::Plate: return 0.15;
    case Family::Cone: return 0.2;
    case Family::Smoothing: return 0.2;
  }
  throw std::logic_error("unknown family");
}

ScalingReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ScalingReport report;
  report.config = cfg;
  ExperimentConfig& c = report.config;
  if (c.dim != 2 && c.dim != 3)
    throw std::invalid_argument("dim must be 2 or 3");
  if (c.j_min < 1 || c.j_min > c.j_max)
    throw std::invalid_argument("scale range must satisfy 1 <= j_min <= j_max");
  if (!(c.delta > 0.0) || !(c.epsilon > 0.0))
    throw std::invalid_argument("delta and epsilon must be positive");
  if (!exponents::admissible(c.point))
    throw std::invalid_argument(
        "(1/p, 1/q) must satisfy 0 <= 1/q <= 1/p <= 1");
  const std::size_t scales = static_cast<std::size_t>(c.j_max - c.j_min + 1);
  if (c.grids.empty()) {
    c.grids.reserve(scales);
    for (int j = c.j_min; j <= c.j_max; ++j)
      c.grids.push_back(default_grid(c.family, c.dim, j));
  } else if (c.grids.size() != scales) {
    throw std::invalid_argument("grid plan must list one grid per scale");
  }
  for (const auto& g : c.grids) {
    if (g.dim != c.dim)
      throw std::invalid_argument("grid plan dimension mismatch");
    g.validate();
  }
  if (c.tolerance == 0.0) c.tolerance = default_tolerance(c.family);

  std::vector<double> js, in_logs;
  for (int j = c.j_min; j <= c.j_max; ++j) {
    const GridSpec& spec = c.grids[static_cast<std::size_t>(j - c.j_min)];
    RowResult one = run_one_scale(c, j, spec);
    if (one.argmax_mean_deviation >= 0.0)
      report.argmax_mean_deviation = one.argmax_mean_deviation;
    report.rows.push_back(one.row);
    js.push_back(j);
    in_logs.push_back(std::log2(one.row.in_norm));
  }

  // Asymptotic fit over the top three scales (all scales when fewer).
  report.window_hi = c.j_max;
  report.window_lo = std::max(c.j_min, c.j_max - 2);
  const SlopeFit fit = fit_slope(report.rows, report.window_lo,
                                 report.window_hi);
  report.fitted_slope = fit.slope;
  report.fit_residual_max = fit.residual_max;
  report.in_norm_slope = js.size() >= 2 ? ols_slope(js, in_logs) : 0.0;
  report.predicted_slope = predicted_slope(c);
  report.tolerance = c.tolerance;
  report.upper_bound_only = c.family == Family::Smoothing;
  report.pass = report.upper_bound_only
                    ? report.fitted_slope <=
                          report.predicted_slope + report.tolerance
                    : std::abs(report.fitted_slope -
                               report.predicted_slope) <= report.tolerance;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::string report_csv(const ScalingReport& report) {
  const ExperimentConfig& c = report.config;
  std::string out =
      "family,n,alpha_re,alpha_im,p,q,j,in_norm,out_norm_restricted,"
      "out_norm_full,log2_ratio\n";
  const std::string prefix = family_name(c.family) + "," +
                             std::to_string(c.dim) + "," +
                             io::format_float(c.alpha.real()) + "," +
                             io::format_float(c.alpha.imag()) + "," +
                             exponent_string(c.point.inv_p) + "," +
                             exponent_string(c.point.inv_q) + ",";
  for (const auto& row : report.rows) {
    out += prefix + std::to_string(row.j) + "," +
           io::format_float(row.in_norm) + "," +
           io::format_float(row.out_norm_restricted) + "," +
           io::format_float(row.out_norm_full) + "," +
           io::format_float(row.log2_ratio) + "\n";
  }
  return out;
}

std::string report_json(const ScalingReport& report) {
  const ExperimentConfig& c = report.config;
  std::string out = "{\n";
  out += "  \"config\": " + config_json(c) + ",\n";
  out += "  \"rows\": [\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out += "    {\"j\": " + std::to_string(row.j) + ", \"in_norm\": \"" +
           io::format_float(row.in_norm) +
           "\", \"out_norm_restricted\": \"" +
           io::format_float(row.out_norm_restricted) +
           "\", \"out_norm_full\": \"" +
           io::format_float(row.out_norm_full) + "\", \"log2_ratio\": \"" +
           io::format_float(row.log2_ratio) + "\"}";
    out += i + 1 < report.rows.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"slope_window\": [" + std::to_string(report.window_lo) + ", " +
         std::to_string(report.window_hi) + "],\n";
  out += "  \"fitted_slope\": \"" + io::format_float(report.fitted_slope) +
         "\",\n";
  out += "  \"fit_residual_max\": \"" +
         io::format_float(report.fit_residual_max) + "\",\n";
  out += "  \"predicted_slope\": \"" +
         io::format_float(report.predicted_slope) + "\",\n";
  out += "  \"tolerance\": \"" + io::format_float(report.tolerance) +
         "\",\n";
  out += std::string("  \"upper_bound_only\": ") +
         (report.upper_bound_only ? "true" : "false") + ",\n";
  out += "  \"in_norm_slope\": \"" + io::format_float(report.in_norm_slope) +
         "\",\n";
  out += "  \"argmax_mean_deviation\": \"" +
         io::format_float(report.argmax_mean_deviation) + "\",\n";
  out += std::string("  \"verdict\": \"") + (report.pass ? "pass" : "fail") +
         "\"\n";
  out += "}\n";
  return out;
}

std::string config_json(const ExperimentConfig& cfg) {
  std::string out = "{";
  out += "\"family\": \"" + family_name(cfg.family) + "\"";
  out += ", \"n\": " + std::to_string(cfg.dim);
  out += ", \"alpha\": \"" + io::format_complex(cfg.alpha) + "\"";
  out += ", \"inv_p\": \"" + cfg.point.inv_p.str() + "\"";
  out += ", \"inv_q\": \"" + cfg.point.inv_q.str() + "\"";
  out += ", \"j_min\": " + std::to_string(cfg.j_min);
  out += ", \"j_max\": " + std::to_string(cfg.j_max);
  out += ", \"delta\": \"" + io::format_float(cfg.delta) + "\"";
  out += ", \"epsilon\": \"" + io::format_float(cfg.epsilon) + "\"";
  out += ", \"t_samples\": " + std::to_string(cfg.t_samples);
  out += ", \"seed\": " + std::to_string(cfg.seed);
  out += std::string(", \"input\": \"") +
         (cfg.input == InputKind::GaussianRandom ? "random" : "bump") + "\"";
  out += ", \"tolerance\": \"" + io::format_float(cfg.tolerance) + "\"";
  out += ", \"grids\": [";
  for (std::size_t i = 0; i < cfg.grids.size(); ++i) {
    const auto& g = cfg.grids[i];
    if (i) out += ", ";
    out += "{\"points_per_axis\": " + std::to_string(g.points_per_axis) +
           ", \"box_length\": \"" + io::format_float(g.box_length) +
           "\", \"center\": [\"" + io::format_float(g.center[0]) + "\", \"" +
           io::format_float(g.center[1]) + "\", \"" +
           io::format_float(g.center[2]) + "\"]}";
  }
  out += "]}";
  return out;
}

ExperimentConfig parse_config_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig cfg;
  auto as_double = [](const nlohmann::json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return std::stod(v.get<std::string>());
    throw std::invalid_argument(std::string("config key ") + key +
                                " must be a number");
  };
  try {
    if (!doc.contains("family"))
      throw std::invalid_argument("config needs a \"family\" key");
    cfg.family = parse_family(doc["family"].get<std::string>());
    if (doc.contains("n")) cfg.dim = doc["n"].get<int>();
    if (doc.contains("alpha"))
      cfg.alpha = io::parse_complex(doc["alpha"].get<std::string>());
    if (doc.contains("inv_p"))
      cfg.point.inv_p =
          Rational::parse(doc["inv_p"].get<std::string>());
    if (doc.contains("inv_q"))
      cfg.point.inv_q =
          Rational::parse(doc["inv_q"].get<std::string>());
    if (doc.contains("j_min")) cfg.j_min = doc["j_min"].get<int>();
    if (doc.contains("j_max")) cfg.j_max = doc["j_max"].get<int>();
    if (doc.contains("delta")) cfg.delta = as_double(doc["delta"], "delta");
    if (doc.contains("epsilon"))
      cfg.epsilon = as_double(doc["epsilon"], "epsilon");
    if (doc.contains("t_samples"))
      cfg.t_samples = doc["t_samples"].get<int>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("input")) {
      const std::string kind = doc["input"].get<std::string>();
      if (kind == "random") {
        cfg.input = InputKind::GaussianRandom;
      } else if (kind == "bump") {
        cfg.input = InputKind::RadialBump;
      } else {
        throw std::invalid_argument("input must be \"random\" or \"bump\"");
      }
    }
    if (doc.contains("tolerance"))
      cfg.tolerance = as_double(doc["tolerance"], "tolerance");
    if (doc.contains("grids")) {
      for (const auto& g : doc["grids"]) {
        GridSpec spec;
        spec.dim = cfg.dim;
        spec.points_per_axis = g["points_per_axis"].get<int>();
        spec.box_length = as_double(g["box_length"], "box_length");
        if (g.contains("center")) {
          const auto& cc = g["center"];
          for (std::size_t a = 0; a < 3 && a < cc.size(); ++a)
            spec.center[a] = as_double(cc[a], "center");
        }
        cfg.grids.push_back(spec);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

}  // namespace sphmax::experiments
