#include "sphmax/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace sphmax::field {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

// ---------------------------------------------------------------------------
// FFTW plumbing.  One in-place c2c plan per (dim, N, sign), created with
// FFTW_ESTIMATE (deterministic plan choice) | FFTW_UNALIGNED (usable on any
// caller buffer via the new-array interface).  Planner access is serialized.
// ---------------------------------------------------------------------------

fftw_plan get_plan(int dim, int n, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(dim, n, sign);
  if (const auto it = cache.find(key); it != cache.end()) return it->second;

  const std::size_t total = dim == 2 ? static_cast<std::size_t>(n) * n
                                     : static_cast<std::size_t>(n) * n * n;
  fftw_complex* buf = fftw_alloc_complex(total);
  if (buf == nullptr) throw std::bad_alloc();
  fftw_plan plan =
      dim == 2 ? fftw_plan_dft_2d(n, n, buf, buf, sign,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED)
               : fftw_plan_dft_3d(n, n, n, buf, buf, sign,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

void run_dft(Field& f, int sign) {
  fftw_plan plan = get_plan(f.spec.dim, f.spec.points_per_axis, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(f.data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

// Applies the per-bin factor connecting the raw DFT to the analytic
// transform at x = center + (m - N/2) h:  scale * (-1)^{sum k_a} *
// exp(+-2 pi i sum c_a k_a / L) with signed bin indices k_a.
void apply_bin_phase(Field& f, double scale, int conj_sign) {
  const GridSpec& g = f.spec;
  const int n = g.points_per_axis;
  const bool centered = g.center[0] == 0.0 && g.center[1] == 0.0 &&
                        (g.dim == 2 || g.center[2] == 0.0);
  std::array<int, 3> idx{0, 0, 0};
  std::size_t flat = 0;
  const int depth = g.dim;
  // Row-major walk with explicit per-axis indices.
  const std::size_t total = g.total_points();
  for (flat = 0; flat < total; ++flat) {
    int parity = 0;
    double carg = 0.0;
    for (int a = 0; a < depth; ++a) {
      const int k = g.signed_bin(idx[static_cast<std::size_t>(a)]);
      parity ^= (k & 1);
      if (!centered)
        carg += g.center[static_cast<std::size_t>(a)] * k / g.box_length;
    }
    cplx factor(parity != 0 ? -scale : scale, 0.0);
    if (!centered) {
      const double ang = conj_sign * kTwoPi * carg;
      factor *= cplx(std::cos(ang), std::sin(ang));
    }
    f.data[flat] *= factor;
    // Increment the multi-index (last axis fastest).
    for (int a = depth - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
}

void require_space(const Field& f, const char* what) {
  if (f.rep != Representation::Space)
    throw std::logic_error(std::string(what) +
                           " requires a space-representation field");
}

double block_p_sum(const Field& f, const RegionMask* mask, double p,
                   std::size_t lo, std::size_t hi) {
  NeumaierSum acc;
  const bool p1 = p == 1.0, p2 = p == 2.0;
  for (std::size_t i = lo; i < hi; ++i) {
    if (mask != nullptr && mask->inside[i] == 0) continue;
    const double a2 = std::norm(f.data[i]);
    if (p2)
      acc.add(a2);
    else if (p1)
      acc.add(std::sqrt(a2));
    else if (a2 > 0.0)
      acc.add(std::pow(a2, 0.5 * p));
  }
  return acc.value();
}

}  // namespace

void NeumaierSum::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}

int worker_count() {
  if (const char* env = std::getenv("SPHMAX_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 16);
  }
  return 1;
}

std::size_t GridSpec::total_points() const {
  std::size_t t = 1;
  for (int a = 0; a < dim; ++a) t *= static_cast<std::size_t>(points_per_axis);
  return t;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= spacing();
  return v;
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("grid dim must be 2 or 3");
  if (!is_pow2(points_per_axis) || points_per_axis < 8 ||
      points_per_axis > 4096)
    throw std::invalid_argument(
        "points_per_axis must be a power of two in [8, 4096]");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("box_length must be positive and finite");
  for (int a = 0; a < dim; ++a)
    if (!std::isfinite(center[static_cast<std::size_t>(a)]))
      throw std::invalid_argument("grid center must be finite");
}

Field make_field(const GridSpec& spec, Representation rep) {
  spec.validate();
  Field f;
  f.spec = spec;
  f.rep = rep;
  f.data.assign(spec.total_points(), cplx(0.0, 0.0));
  return f;
}

void to_frequency(Field& f) {
  if (f.rep == Representation::Frequency) return;
  f.spec.validate();
  if (f.data.size() != f.spec.total_points())
    throw std::invalid_argument("field data size mismatch");
  run_dft(f, FFTW_BACKWARD);  // e^{+2 pi i m k / N}
  double scale = 1.0;
  for (int a = 0; a < f.spec.dim; ++a) scale *= f.spec.spacing();
  apply_bin_phase(f, scale, +1);
  f.rep = Representation::Frequency;
}

void to_space(Field& f) {
  if (f.rep == Representation::Space) return;
  f.spec.validate();
  if (f.data.size() != f.spec.total_points())
    throw std::invalid_argument("field data size mismatch");
  double scale = 1.0;
  for (int a = 0; a < f.spec.dim; ++a) scale /= f.spec.box_length;
  apply_bin_phase(f, scale, -1);
  run_dft(f, FFTW_FORWARD);  // e^{-2 pi i m k / N}
  f.rep = Representation::Space;
}

// ---------------------------------------------------------------------------
// Masks
// ---------------------------------------------------------------------------

namespace {

template <typename Pred>
RegionMask build_mask(const GridSpec& spec, Pred&& pred) {
  spec.validate();
  RegionMask m;
  m.inside.assign(spec.total_points(), 0);
  const int n = spec.points_per_axis;
  std::array<int, 3> idx{0, 0, 0};
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (std::size_t flat = 0; flat < m.inside.size(); ++flat) {
    for (int a = 0; a < spec.dim; ++a)
      x[static_cast<std::size_t>(a)] =
          spec.coord(idx[static_cast<std::size_t>(a)], a);
    if (pred(x)) {
      m.inside[flat] = 1;
      ++m.count;
    }
    for (int a = spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
  m.measure = static_cast<double>(m.count) * spec.cell_volume();
  return m;
}

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b,
             int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = a[static_cast<std::size_t>(i)] -
                     b[static_cast<std::size_t>(i)];
    s += d * d;
  }
  return s;
}

}  // namespace

RegionMask mask_full(const GridSpec& spec) {
  return build_mask(spec, [](const std::array<double, 3>&) { return true; });
}

RegionMask mask_ball(const GridSpec& spec, std::array<double, 3> center,
                     double radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("mask_ball: radius must be positive");
  for (int a = 0; a < spec.dim; ++a) {
    const double c = center[static_cast<std::size_t>(a)];
    const double lo = spec.center[static_cast<std::size_t>(a)] -
                      0.5 * spec.box_length;
    if (c < lo || c >= lo + spec.box_length)
      throw std::invalid_argument("mask_ball: center outside the box");
  }
  return build_mask(spec, [&](const std::array<double, 3>& x) {
    return dist2(x, center, spec.dim) <= radius * radius;
  });
}

RegionMask mask_box(const GridSpec& spec,
                    const std::vector<AxisInterval>& intervals) {
  if (intervals.size() < static_cast<std::size_t>(spec.dim))
    throw std::invalid_argument("mask_box: one interval per axis required");
  for (int a = 0; a < spec.dim; ++a)
    if (!(intervals[static_cast<std::size_t>(a)].lo <=
          intervals[static_cast<std::size_t>(a)].hi))
      throw std::invalid_argument("mask_box: empty interval");
  return build_mask(spec, [&](const std::array<double, 3>& x) {
    for (int a = 0; a < spec.dim; ++a) {
      const auto& iv = intervals[static_cast<std::size_t>(a)];
      const double v = x[static_cast<std::size_t>(a)];
      if (v < iv.lo || v > iv.hi) return false;
    }
    return true;
  });
}

RegionMask mask_sector(const GridSpec& spec, std::array<double, 3> direction,
                       double chord, double r_lo, double r_hi) {
  double len = 0.0;
  for (int a = 0; a < spec.dim; ++a)
    len += direction[static_cast<std::size_t>(a)] *
           direction[static_cast<std::size_t>(a)];
  len = std::sqrt(len);
  if (!(len > 0.0))
    throw std::invalid_argument("mask_sector: zero direction");
  if (!(chord > 0.0) || !(r_lo >= 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("mask_sector: bad parameters");
  std::array<double, 3> v{0.0, 0.0, 0.0};
  for (int a = 0; a < spec.dim; ++a)
    v[static_cast<std::size_t>(a)] =
        direction[static_cast<std::size_t>(a)] / len;
  return build_mask(spec, [&, chord, r_lo, r_hi](
                              const std::array<double, 3>& x) {
    const double r = std::sqrt(dist2(x, {0.0, 0.0, 0.0}, spec.dim));
    if (r < r_lo || r > r_hi || r == 0.0) return false;
    double d2 = 0.0;
    for (int a = 0; a < spec.dim; ++a) {
      const double d = x[static_cast<std::size_t>(a)] / r -
                       v[static_cast<std::size_t>(a)];
      d2 += d * d;
    }
    return d2 <= chord * chord;
  });
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

double lebesgue_norm(const Field& f, double p, const RegionMask* mask) {
  require_space(f, "lebesgue_norm");
  if (mask != nullptr && mask->inside.size() != f.data.size())
    throw std::invalid_argument("mask size does not match field");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.data.size(); ++i) {
      if (mask != nullptr && mask->inside[i] == 0) continue;
      m = std::max(m, std::abs(f.data[i]));
    }
    return m;
  }
  if (!(p >= 1.0))
    throw std::invalid_argument("lebesgue_norm: p must be >= 1 or infinity");

  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t total = f.data.size();
  const std::size_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);

  const int workers = std::min<int>(worker_count(),
                                    static_cast<int>(nblocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b)
      partial[b] = block_p_sum(f, mask, p, b * kBlock,
                               std::min(total, (b + 1) * kBlock));
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t b = next.fetch_add(1);
          if (b >= nblocks) return;
          partial[b] = block_p_sum(f, mask, p, b * kBlock,
                                   std::min(total, (b + 1) * kBlock));
        }
      });
    for (auto& t : pool) t.join();
  }

  NeumaierSum acc;
  for (const double v : partial) acc.add(v);
  return std::pow(acc.value() * f.spec.cell_volume(), 1.0 / p);
}

double sobolev_norm(const Field& f, double s, double p) {
  require_space(f, "sobolev_norm");
  Field g = f;
  to_frequency(g);
  const int n = g.spec.points_per_axis;
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < g.data.size(); ++flat) {
    double xi2 = 0.0;
    for (int a = 0; a < g.spec.dim; ++a) {
      const double xi = g.spec.freq(idx[static_cast<std::size_t>(a)]);
      xi2 += xi * xi;
    }
    g.data[flat] *= std::pow(1.0 + xi2, 0.5 * s);
    for (int a = g.spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
  to_space(g);
  return lebesgue_norm(g, p);
}

// ---------------------------------------------------------------------------
// Container I/O
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'S', 'P', 'H', 'F', 'L', 'D', '0', '1'};

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("field file truncated");
  return v;
}

}  // namespace

void write_field(const Field& f, const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "container format is little-endian");
  f.spec.validate();
  if (f.data.size() != f.spec.total_points())
    throw std::invalid_argument("field data size mismatch");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.spec.dim));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.spec.points_per_axis));
  put<double>(os, f.spec.box_length);
  for (const double c : f.spec.center) put<double>(os, c);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.rep));
  put<std::uint32_t>(os, 16);  // bytes per complex sample (complex128)
  put<std::uint64_t>(os, static_cast<std::uint64_t>(f.data.size()));
  os.write(reinterpret_cast<const char*>(f.data.data()),
           static_cast<std::streamsize>(f.data.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a field container: " + path);
  Field f;
  f.spec.dim = static_cast<int>(get<std::uint32_t>(is));
  f.spec.points_per_axis = static_cast<int>(get<std::uint32_t>(is));
  f.spec.box_length = get<double>(is);
  for (double& c : f.spec.center) c = get<double>(is);
  const auto rep = get<std::uint32_t>(is);
  if (rep > 1) throw std::runtime_error("bad representation tag in " + path);
  f.rep = static_cast<Representation>(rep);
  const auto width = get<std::uint32_t>(is);
  const auto count = get<std::uint64_t>(is);
  f.spec.validate();
  if (count != f.spec.total_points())
    throw std::runtime_error("sample count does not match grid in " + path);
  f.data.resize(count);
  if (width == 16) {
    is.read(reinterpret_cast<char*>(f.data.data()),
            static_cast<std::streamsize>(count * sizeof(cplx)));
  } else if (width == 8) {
    std::vector<std::complex<float>> tmp(count);
    is.read(reinterpret_cast<char*>(tmp.data()),
            static_cast<std::streamsize>(count * sizeof(tmp[0])));
    for (std::size_t i = 0; i < count; ++i)
      f.data[i] = cplx(tmp[i].real(), tmp[i].imag());
  } else {
    throw std::runtime_error("unsupported sample width in " + path);
  }
  if (!is) throw std::runtime_error("field file truncated: " + path);
  return f;
}

void write_radial_profile_csv(const Field& f, const std::string& path,
                              int bins) {
  if (bins < 1) throw std::invalid_argument("radial profile: bins >= 1");
  f.spec.validate();
  const bool freq_side = f.rep == Representation::Frequency;
  const int n = f.spec.points_per_axis;

  // Pass 1: maximum radius; pass 2: bin statistics.
  auto radius_at = [&](const std::array<int, 3>& idx) {
    double r2 = 0.0;
    for (int a = 0; a < f.spec.dim; ++a) {
      const double c =
          freq_side ? f.spec.freq(idx[static_cast<std::size_t>(a)])
                    : f.spec.coord(idx[static_cast<std::size_t>(a)], a);
      r2 += c * c;
    }
    return std::sqrt(r2);
  };
  std::array<int, 3> idx{0, 0, 0};
  double rmax = 0.0;
  for (std::size_t flat = 0; flat < f.data.size(); ++flat) {
    rmax = std::max(rmax, radius_at(idx));
    for (int a = f.spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }
  if (rmax == 0.0) rmax = 1.0;

  struct Bin {
    std::size_t count = 0;
    NeumaierSum re, im, abs;
    double peak = 0.0;
  };
  std::vector<Bin> acc(static_cast<std::size_t>(bins));
  idx = {0, 0, 0};
  for (std::size_t flat = 0; flat < f.data.size(); ++flat) {
    const double r = radius_at(idx);
    auto b = static_cast<std::size_t>(r / rmax * bins);
    if (b >= acc.size()) b = acc.size() - 1;
    const cplx z = f.data[flat];
    acc[b].count += 1;
    acc[b].re.add(z.real());
    acc[b].im.add(z.imag());
    acc[b].abs.add(std::abs(z));
    acc[b].peak = std::max(acc[b].peak, std::abs(z));
    for (int a = f.spec.dim - 1; a >= 0; --a) {
      auto& v = idx[static_cast<std::size_t>(a)];
      if (++v < n) break;
      v = 0;
    }
  }

  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "radius,count,mean_re,mean_im,mean_abs,max_abs\n";
  char line[256];
  for (std::size_t b = 0; b < acc.size(); ++b) {
    const double mid = rmax * (static_cast<double>(b) + 0.5) / bins;
    const double c = acc[b].count > 0 ? static_cast<double>(acc[b].count) : 1;
    std::snprintf(line, sizeof(line), "%.12e,%zu,%.12e,%.12e,%.12e,%.12e\n",
                  mid, acc[b].count, acc[b].re.value() / c,
                  acc[b].im.value() / c, acc[b].abs.value() / c, acc[b].peak);
    os << line;
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace sphmax::field
