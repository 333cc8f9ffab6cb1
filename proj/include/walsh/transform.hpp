#pragma once

// Walsh characters in Paley order, the fast Walsh-Hadamard transform,
// wave packets adapted to tiles, partial Walsh-Fourier sums, and the
// brute-force Walsh-Carleson maximal operator.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/signal.hpp"

namespace walsh {

namespace detail {

inline std::uint64_t bit_reverse(std::uint64_t x, int bits) noexcept {
  std::uint64_t r = 0;
  for (int i = 0; i < bits; ++i) r |= ((x >> i) & 1u) << (bits - 1 - i);
  return r;
}

// In-place unnormalized Hadamard butterfly:
//   out[m] = sum_j (-1)^popcount(m & j) in[j].
inline void hadamard_in_place(std::vector<double>& v) {
  const std::size_t n = v.size();
  for (std::size_t len = 1; len < n; len <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * len)
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j];
        const double b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

// Paley-ordered character value on a grid cell:
//   W_n(cell j) = (-1)^popcount(bitrev(n) & j).
inline int character_sign(std::uint64_t n_reversed, std::uint64_t cell) noexcept {
  return (std::popcount(n_reversed & cell) & 1) ? -1 : 1;
}

}  // namespace detail

/// Paley-ordered Walsh character W_n sampled on the 2^M grid.
inline Signal walsh_character(std::uint64_t n, int resolution) {
  if (n >= (std::uint64_t{1} << resolution))
    throw std::invalid_argument("walsh_character: n not resolvable at 2^M");
  Signal f = Signal::zero(resolution);
  const std::uint64_t rev = detail::bit_reverse(n, resolution);
  for (std::uint64_t c = 0; c < f.cell_count(); ++c)
    f.values[c] = detail::character_sign(rev, c);
  return f;
}

/// coefficients[n] = <f, W_n>.  O(2^M M).
inline WalshSpectrum fwht(const Signal& f) {
  const int M = f.resolution;
  std::vector<double> h = f.values;
  detail::hadamard_in_place(h);
  std::vector<double> c(h.size());
  const double scale = f.cell_measure();
  for (std::uint64_t n = 0; n < h.size(); ++n)
    c[n] = h[detail::bit_reverse(n, M)] * scale;
  return WalshSpectrum(M, std::move(c));
}

/// Exact inverse: f = sum_n c_n W_n.
inline Signal inverse_fwht(const WalshSpectrum& spec) {
  const int M = spec.resolution;
  std::vector<double> d(spec.coefficients.size());
  for (std::uint64_t m = 0; m < d.size(); ++m)
    d[m] = spec.coefficients[detail::bit_reverse(m, M)];
  detail::hadamard_in_place(d);
  return Signal(M, std::move(d));
}

/// True when w_t is a step function on the 2^M grid.
inline bool tile_representable(const Tile& t, int resolution) noexcept {
  if (t.scale > 0 || t.scale < -resolution) return false;
  if (t.time_index >= (std::uint64_t{1} << -t.scale)) return false;
  return t.freq_index < (std::uint64_t{1} << (resolution + t.scale));
}

/// Walsh wave packet w_t = |I_t|^{-1/2} W_{n_t}((x - inf I_t)/|I_t|),
/// supported on I_t with unit L2 norm.
inline Signal wave_packet(const Tile& t, int resolution) {
  if (!tile_representable(t, resolution))
    throw std::invalid_argument("wave_packet: tile not representable at 2^M");
  Signal f = Signal::zero(resolution);
  const int local_bits = resolution + t.scale;
  const std::uint64_t first = t.time_index << local_bits;
  const std::uint64_t cells = std::uint64_t{1} << local_bits;
  const std::uint64_t rev = detail::bit_reverse(t.freq_index, local_bits);
  const double amp = std::exp2(-0.5 * t.scale);  // |I|^{-1/2}
  for (std::uint64_t c = 0; c < cells; ++c)
    f.values[first + c] = amp * detail::character_sign(rev, c);
  return f;
}

/// <f, w_t> without materializing the packet.  Tiles whose frequency
/// exceeds the grid (n_t >= 2^{M+j}) pair to exactly zero with every
/// resolution-M step function: the packet oscillates with mean zero
/// inside each cell.
inline double tile_coefficient(const Signal& f, const Tile& t) {
  const int M = f.resolution;
  if (t.scale > 0 || t.scale < -M ||
      t.time_index >= (std::uint64_t{1} << -t.scale))
    throw std::invalid_argument("tile_coefficient: tile outside the grid");
  if (!tile_representable(t, M)) return 0.0;
  const int local_bits = M + t.scale;
  const std::uint64_t first = t.time_index << local_bits;
  const std::uint64_t cells = std::uint64_t{1} << local_bits;
  const std::uint64_t rev = detail::bit_reverse(t.freq_index, local_bits);
  double s = 0.0;
  for (std::uint64_t c = 0; c < cells; ++c)
    s += detail::character_sign(rev, c) * f.values[first + c];
  return s * std::exp2(-0.5 * t.scale) * f.cell_measure();
}

/// n-th partial Walsh-Fourier sum, 0 <= n <= 2^M.
inline Signal partial_sum(const Signal& f, std::uint64_t n) {
  const std::uint64_t cap = f.cell_count();
  if (n > cap) throw std::invalid_argument("partial_sum: n above 2^M");
  WalshSpectrum spec = fwht(f);
  for (std::uint64_t m = n; m < cap; ++m) spec.coefficients[m] = 0.0;
  return inverse_fwht(spec);
}

struct CarlesonScan {
  Signal max;           // W f(x) = max_{0<=n<=2^M} |W_n f(x)|
  ChoiceFunction argmax;  // smallest maximizing n per cell
};

/// One incremental pass over n: W_{n+1} f = W_n f + <f,W_n> W_n.
inline CarlesonScan carleson_scan(const Signal& f) {
  const int M = f.resolution;
  const std::uint64_t cells = f.cell_count();
  const WalshSpectrum spec = fwht(f);

  std::vector<double> partial(cells, 0.0);
  std::vector<double> best(cells, 0.0);
  std::vector<std::uint64_t> best_n(cells, 0);
  for (std::uint64_t n = 0; n < cells; ++n) {
    const double coef = spec.coefficients[n];
    const std::uint64_t rev = detail::bit_reverse(n, M);
    for (std::uint64_t c = 0; c < cells; ++c) {
      partial[c] += coef * detail::character_sign(rev, c);
      const double mag = std::abs(partial[c]);
      if (mag > best[c]) {
        best[c] = mag;
        best_n[c] = n + 1;
      }
    }
  }
  return {Signal(M, std::move(best)), ChoiceFunction(M, std::move(best_n))};
}

inline Signal carleson_max(const Signal& f) { return carleson_scan(f).max; }
inline ChoiceFunction argmax_choice(const Signal& f) {
  return carleson_scan(f).argmax;
}

/// sup_j |W_{n_j} f| over an increasing integer sequence.
inline Signal lacunary_max(const Signal& f,
                           std::span<const std::uint64_t> seq) {
  const std::uint64_t cap = f.cell_count();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] > cap)
      throw std::invalid_argument("lacunary_max: frequency above 2^M");
    if (i > 0 && seq[i] <= seq[i - 1])
      throw std::invalid_argument("lacunary_max: sequence not increasing");
  }
  const int M = f.resolution;
  const WalshSpectrum spec = fwht(f);
  std::vector<double> partial(cap, 0.0);
  std::vector<double> best(cap, 0.0);
  std::uint64_t n = 0;
  std::size_t next = 0;
  while (next < seq.size()) {
    while (n < seq[next]) {
      const double coef = spec.coefficients[n];
      const std::uint64_t rev = detail::bit_reverse(n, M);
      for (std::uint64_t c = 0; c < cap; ++c)
        partial[c] += coef * detail::character_sign(rev, c);
      ++n;
    }
    for (std::uint64_t c = 0; c < cap; ++c)
      best[c] = std::max(best[c], std::abs(partial[c]));
    ++next;
  }
  return Signal(M, std::move(best));
}

}  // namespace walsh
