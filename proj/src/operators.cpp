#include "sphmax/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace sphmax::operators {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Multiplies the frequency samples of f by per-bin values and restores the
// input representation.
template <typename BinValue>
Field weighted_copy(const Field& f, BinValue&& value_at_bin) {
  Field out = f;
  field::to_frequency(out);
  const int n = out.spec.points_per_axis;
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < out.data.size(); ++flat) {
    out.data[flat] *= value_at_bin(flat, idx);
    for (int a = out.spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
  if (f.rep == field::Representation::Space) field::to_space(out);
  return out;
}

}  // namespace

RadialIndex build_radial_index(const GridSpec& spec) {
  spec.validate();
  RadialIndex out;
  out.map.resize(spec.total_points());
  std::unordered_map<std::int64_t, std::uint32_t> seen;
  const int n = spec.points_per_axis;
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < out.map.size(); ++flat) {
    std::int64_t key = 0;
    for (int a = 0; a < spec.dim; ++a) {
      const std::int64_t k = spec.signed_bin(idx[static_cast<std::size_t>(a)]);
      key += k * k;
    }
    auto [it, inserted] =
        seen.emplace(key, static_cast<std::uint32_t>(out.radii.size()));
    if (inserted)
      out.radii.push_back(std::sqrt(static_cast<double>(key)) /
                          spec.box_length);
    out.map[flat] = it->second;
    for (int a = spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
  return out;
}

Field apply_frequency_weight(
    const Field& f,
    const std::function<cplx(const std::array<double, 3>&)>& weight) {
  return weighted_copy(f, [&](std::size_t, const std::array<int, 3>& idx) {
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (int a = 0; a < f.spec.dim; ++a)
      xi[static_cast<std::size_t>(a)] =
          f.spec.freq(idx[static_cast<std::size_t>(a)]);
    return weight(xi);
  });
}

Field apply_radial_symbol(const Field& f,
                          const std::function<cplx(double)>& symbol) {
  const RadialIndex ri = build_radial_index(f.spec);
  std::vector<cplx> vals(ri.radii.size());
  for (std::size_t d = 0; d < vals.size(); ++d) vals[d] = symbol(ri.radii[d]);
  return weighted_copy(f, [&](std::size_t flat, const std::array<int, 3>&) {
    return vals[ri.map[flat]];
  });
}

cplx RadialMultiplier::eval(double r) const {
  switch (kind) {
    case Kind::SphericalMean:
      return spherical_symbol(dim, alpha, t * r);
    case Kind::HalfWavePlus:
      return cplx(std::cos(kTwoPi * t * r), std::sin(kTwoPi * t * r));
    case Kind::HalfWaveMinus:
      return cplx(std::cos(kTwoPi * t * r), -std::sin(kTwoPi * t * r));
    case Kind::BracketPower:
      return std::pow(1.0 + (t * r) * (t * r), 0.5 * s);
    case Kind::Cutoff:
      switch (cutoff.kind) {
        case CutoffSpec::Kind::Lowpass:
        case CutoffSpec::Kind::Dyadic:
        case CutoffSpec::Kind::AnnularBump:
        case CutoffSpec::Kind::Chirp:
          return cutoff_weight(cutoff, 1, {r, 0.0, 0.0});
        default:
          throw std::invalid_argument(
              "RadialMultiplier: plate/cone cutoffs are not radial");
      }
  }
  throw std::logic_error("RadialMultiplier: unknown kind");
}

Field apply_multiplier(const Field& f, const RadialMultiplier& mult) {
  if (mult.dim != f.spec.dim)
    throw std::invalid_argument("apply_multiplier: dimension mismatch");
  return apply_radial_symbol(f, [&](double r) { return mult.eval(r); });
}

Field spherical_mean(const Field& f, cplx alpha, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("spherical_mean: t > 0");
  const int n = f.spec.dim;
  return apply_radial_symbol(
      f, [&](double r) { return spherical_symbol(n, alpha, t * r); });
}

Field half_wave(const Field& f, double t, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("half_wave: sign must be +1 or -1");
  return apply_radial_symbol(f, [&](double r) {
    const double phase = sign * kTwoPi * t * r;
    return cplx(std::cos(phase), std::sin(phase));
  });
}

Field bracket_power(const Field& f, double s) {
  return apply_radial_symbol(
      f, [&](double r) { return cplx(std::pow(1.0 + r * r, 0.5 * s), 0.0); });
}

Field apply_cutoff(const Field& f, const CutoffSpec& spec) {
  const double support = cutoff_support_radius(spec, f.spec.dim);
  if (std::isfinite(support)) {
    const double limit =
        f.spec.points_per_axis / (4.0 * f.spec.box_length);
    if (support > limit * (1.0 + 1e-12))
      throw ResolutionError(
          "cutoff support radius " + std::to_string(support) +
          " exceeds the oversampling limit " + std::to_string(limit));
  }
  const int dim = f.spec.dim;
  return apply_frequency_weight(f, [&](const std::array<double, 3>& xi) {
    return cutoff_weight(spec, dim, xi);
  });
}

Field maximal_over_t(const Field& f, cplx alpha,
                     const std::vector<double>& t_grid,
                     std::vector<double>* argmax_t) {
  if (t_grid.empty())
    throw std::invalid_argument("maximal_over_t: empty t-grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0))
      throw std::invalid_argument("maximal_over_t: t must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("maximal_over_t: t-grid must increase");
  }
  Field freq = f;
  field::to_frequency(freq);
  const RadialIndex ri = build_radial_index(f.spec);
  double r_top = 0.0;
  for (const double r : ri.radii) r_top = std::max(r_top, r);
  const int n = f.spec.dim;
  const double step = 1.0 / 256.0;
  const RadialTable table(
      [&](double r) { return spherical_symbol(n, alpha, r); },
      t_grid.back() * r_top + 2.0 * step, step);

  Field acc = field::make_field(f.spec, field::Representation::Space);
  Field work = field::make_field(f.spec, field::Representation::Frequency);
  if (argmax_t) argmax_t->assign(acc.data.size(), t_grid.front());
  std::vector<cplx> vals(ri.radii.size());
  for (const double t : t_grid) {
    for (std::size_t d = 0; d < vals.size(); ++d)
      vals[d] = table(t * ri.radii[d]);
    work.rep = field::Representation::Frequency;
    for (std::size_t i = 0; i < work.data.size(); ++i)
      work.data[i] = freq.data[i] * vals[ri.map[i]];
    field::to_space(work);
    for (std::size_t i = 0; i < acc.data.size(); ++i) {
      const double mag = std::abs(work.data[i]);
      if (mag > acc.data[i].real()) {
        acc.data[i] = cplx(mag, 0.0);
        if (argmax_t) (*argmax_t)[i] = t;
      }
    }
  }
  return acc;
}

}  // namespace sphmax::operators
