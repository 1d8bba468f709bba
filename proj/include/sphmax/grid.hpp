#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

// Periodized fields on [c - L/2, c + L/2)^dim with N samples per axis and
// discrete Fourier transforms normalized as the analytic transform
//   (F f)(xi) = integral f(x) e^{+2 pi i x.xi} dx,
// sampled at lattice frequencies xi = k/L, k in [-N/2, N/2)^dim.  With this
// normalization the round trip is the identity and Parseval reads
//   sum |f|^2 h^dim = sum |Ff|^2 / L^dim.
namespace sphmax::field {

using cplx = std::complex<double>;

struct GridSpec {
  int dim = 2;                         // 2 or 3
  int points_per_axis = 64;            // power of two
  double box_length = 8.0;             // L
  std::array<double, 3> center{0.0, 0.0, 0.0};

  [[nodiscard]] std::size_t total_points() const;
  [[nodiscard]] double spacing() const { return box_length / points_per_axis; }
  [[nodiscard]] double cell_volume() const;
  // Coordinate of sample index m (0..N-1) along an axis.
  [[nodiscard]] double coord(int m, int axis) const {
    return center[static_cast<std::size_t>(axis)] +
           (m - points_per_axis / 2) * spacing();
  }
  // Signed frequency index of DFT bin b (0..N-1), in [-N/2, N/2).
  [[nodiscard]] int signed_bin(int b) const {
    return b < points_per_axis / 2 ? b : b - points_per_axis;
  }
  [[nodiscard]] double freq(int b) const {
    return signed_bin(b) / box_length;
  }
  void validate() const;  // throws std::invalid_argument
  [[nodiscard]] bool operator==(const GridSpec&) const = default;
};

enum class Representation : std::uint32_t { Space = 0, Frequency = 1 };

struct Field {
  GridSpec spec;
  Representation rep = Representation::Space;
  std::vector<cplx> data;  // row-major, axis 0 slowest
};

[[nodiscard]] Field make_field(const GridSpec& spec,
                               Representation rep = Representation::Space);

// In-place change of representation (no-ops when already there).
void to_frequency(Field& f);
void to_space(Field& f);

// ---------------------------------------------------------------------------
// Masks: space-side cell selections by cell-center membership.
// ---------------------------------------------------------------------------

struct RegionMask {
  std::vector<std::uint8_t> inside;
  std::size_t count = 0;
  double measure = 0.0;  // count * cell volume

  [[nodiscard]] bool empty() const { return count == 0; }
};

[[nodiscard]] RegionMask mask_full(const GridSpec& spec);
[[nodiscard]] RegionMask mask_ball(const GridSpec& spec,
                                   std::array<double, 3> center,
                                   double radius);
// Product of per-axis closed intervals [lo_a, hi_a] (axes beyond `dim`
// ignored).
struct AxisInterval {
  double lo, hi;
};
[[nodiscard]] RegionMask mask_box(const GridSpec& spec,
                                  const std::vector<AxisInterval>& intervals);
// Angular sector around a direction: r_lo <= |x| <= r_hi and
// |x/|x| - v| <= chord.
[[nodiscard]] RegionMask mask_sector(const GridSpec& spec,
                                     std::array<double, 3> direction,
                                     double chord, double r_lo, double r_hi);

// ---------------------------------------------------------------------------
// Norms.  Deterministic: fixed-size blocks are summed with compensated
// (Neumaier) accumulation and combined in block order, so results are
// bit-identical no matter how many worker threads computed the blocks.
// ---------------------------------------------------------------------------

// L^p norm of the space samples, p in [1, inf]; pass infinity for sup.
// Requires Representation::Space; masked variant sums over mask cells only.
[[nodiscard]] double lebesgue_norm(const Field& f, double p,
                                   const RegionMask* mask = nullptr);

// Bessel-potential Sobolev norm: || F^{-1} (1+|xi|^2)^{s/2} F f ||_p.
[[nodiscard]] double sobolev_norm(const Field& f, double s, double p);

// Compensated scalar accumulator used by the norm kernels; exposed for tests.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x);
  [[nodiscard]] double value() const { return sum + comp; }
};

// Worker count taken from SPHMAX_THREADS (>=1); affects speed only.
[[nodiscard]] int worker_count();

// ---------------------------------------------------------------------------
// Container I/O: self-describing little-endian binary (dims, box, rep,
// row-major complex samples; 128-bit written, 64- or 128-bit read), plus a
// radial profile CSV export (shell means over |x| or |xi|).
// ---------------------------------------------------------------------------

void write_field(const Field& f, const std::string& path);
[[nodiscard]] Field read_field(const std::string& path);
void write_radial_profile_csv(const Field& f, const std::string& path,
                              int bins);

}  // namespace sphmax::field
