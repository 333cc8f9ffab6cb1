#pragma once

// Exact dyadic geometry on the unit torus: intervals, tiles, bitiles,
// the Fefferman order and convexity of bitile collections.
//
// Every endpoint is a (scale, index) pair of integers, so containment,
// disjointness and the order relation are bit operations with no
// floating-point ambiguity.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace walsh {

enum class Axis : std::uint8_t { Time, Frequency };

/// Half-open interval [index*2^scale, (index+1)*2^scale).
struct DyadicInterval {
  Axis axis = Axis::Time;
  int scale = 0;
  std::uint64_t index = 0;

  double length() const noexcept { return std::ldexp(1.0, scale); }
  double lower() const noexcept {
    return std::ldexp(static_cast<double>(index), scale);
  }
  double upper() const noexcept {
    return std::ldexp(static_cast<double>(index) + 1.0, scale);
  }

  bool contains(const DyadicInterval& inner) const noexcept {
    if (axis != inner.axis || scale < inner.scale) return false;
    return (inner.index >> (scale - inner.scale)) == index;
  }
  bool disjoint_from(const DyadicInterval& other) const noexcept {
    return !contains(other) && !other.contains(*this);
  }

  // Grid-cell range of a time interval at resolution 2^-M.
  std::uint64_t first_cell(int resolution) const noexcept {
    return index << (scale + resolution);
  }
  std::uint64_t cell_count(int resolution) const noexcept {
    return std::uint64_t{1} << (scale + resolution);
  }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const DyadicInterval& I) {
  return os << "[" << I.lower() << "," << I.upper() << ")";
}

/// Area-one tile I x w: I = [k*2^j, (k+1)*2^j), w = [n*2^-j, (n+1)*2^-j).
/// The frequency index n equals |I| * inf w.
struct Tile {
  int scale = 0;
  std::uint64_t time_index = 0;
  std::uint64_t freq_index = 0;

  DyadicInterval time() const noexcept {
    return {Axis::Time, scale, time_index};
  }
  DyadicInterval freq() const noexcept {
    return {Axis::Frequency, -scale, freq_index};
  }

  auto operator<=>(const Tile&) const = default;
};

/// Area-two bitile: I = [k*2^j, (k+1)*2^j), w = [2n*2^-j, (2n+2)*2^-j),
/// split into the lower-frequency child s1 and upper child s2.
struct Bitile {
  int scale = 0;
  std::uint64_t time_index = 0;
  std::uint64_t freq_index = 0;

  DyadicInterval time() const noexcept {
    return {Axis::Time, scale, time_index};
  }
  DyadicInterval freq() const noexcept {
    return {Axis::Frequency, 1 - scale, freq_index};
  }
  Tile lower_child() const noexcept {
    return {scale, time_index, 2 * freq_index};
  }
  Tile upper_child() const noexcept {
    return {scale, time_index, 2 * freq_index + 1};
  }

  // Canonical total order: (time scale, time index, frequency index).
  auto operator<=>(const Bitile&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Bitile& s) {
  return os << "(" << s.scale << "," << s.time_index << "," << s.freq_index
            << ")";
}

// Fefferman order a << b: I_a inside I_b and w_a containing w_b.  The
// index arithmetic is the same for tiles and bitiles because both carry
// their frequency band as (scale-linked index, fixed multiple of |I|^-1).
inline bool fefferman_leq(const Tile& a, const Tile& b) noexcept {
  if (a.scale > b.scale) return false;
  const int d = b.scale - a.scale;
  return (a.time_index >> d) == b.time_index &&
         (b.freq_index >> d) == a.freq_index;
}

inline bool fefferman_leq(const Bitile& a, const Bitile& b) noexcept {
  if (a.scale > b.scale) return false;
  const int d = b.scale - a.scale;
  return (a.time_index >> d) == b.time_index &&
         (b.freq_index >> d) == a.freq_index;
}

/// Mixed comparison: tile t below bitile s (I_t inside I_s, w_t containing
/// the full band w_s).  Needs |w_t| >= |w_s|, i.e. at least one scale gap.
inline bool fefferman_leq(const Tile& t, const Bitile& s) noexcept {
  if (t.scale >= s.scale) return false;
  const int d = s.scale - t.scale;
  if ((t.time_index >> d) != s.time_index) return false;
  return (s.freq_index >> (d - 1)) == t.freq_index;
}

/// Union of grid cells at resolution 2^-M, the measurable sets of the
/// desk-scale model.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(int resolution)
      : resolution_(resolution), mask_(std::uint64_t{1} << resolution, 0) {}

  static CellSet full(int resolution) {
    CellSet e(resolution);
    std::fill(e.mask_.begin(), e.mask_.end(), std::uint8_t{1});
    return e;
  }

  int resolution() const noexcept { return resolution_; }
  std::uint64_t cell_total() const noexcept { return mask_.size(); }

  bool test(std::uint64_t cell) const { return mask_[cell] != 0; }
  void set(std::uint64_t cell, bool value = true) {
    mask_[cell] = value ? 1 : 0;
  }

  std::uint64_t count() const noexcept {
    std::uint64_t c = 0;
    for (auto b : mask_) c += b;
    return c;
  }
  double measure() const noexcept {
    return std::ldexp(static_cast<double>(count()), -resolution_);
  }
  bool empty() const noexcept { return count() == 0; }

  CellSet complement() const {
    CellSet out(resolution_);
    for (std::size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = !mask_[i];
    return out;
  }
  /// Cells of *this not in other.
  CellSet minus(const CellSet& other) const {
    CellSet out(resolution_);
    for (std::size_t i = 0; i < mask_.size(); ++i)
      out.mask_[i] = mask_[i] && !other.mask_[i];
    return out;
  }

  bool contains_interval(const DyadicInterval& I) const {
    const std::uint64_t begin = I.first_cell(resolution_);
    const std::uint64_t end = begin + I.cell_count(resolution_);
    for (std::uint64_t c = begin; c < end; ++c)
      if (!mask_[c]) return false;
    return true;
  }
  bool meets_interval(const DyadicInterval& I) const {
    const std::uint64_t begin = I.first_cell(resolution_);
    const std::uint64_t end = begin + I.cell_count(resolution_);
    for (std::uint64_t c = begin; c < end; ++c)
      if (mask_[c]) return true;
    return false;
  }

  std::vector<std::uint64_t> cells() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 0; c < mask_.size(); ++c)
      if (mask_[c]) out.push_back(c);
    return out;
  }

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  int resolution_ = 0;
  std::vector<std::uint8_t> mask_;
};

/// True when the bitile fits the resolution box: time inside [0,1) no
/// finer than 2^-M, and the lower-child wave packet representable on the
/// 2^M grid (2n < 2^{M+j}).
inline bool bitile_in_resolution(const Bitile& s, int resolution) noexcept {
  if (s.scale > 0 || s.scale < -resolution) return false;
  if (s.time_index >= (std::uint64_t{1} << -s.scale)) return false;
  return 2 * s.freq_index < (std::uint64_t{1} << (resolution + s.scale));
}

/// Finite duplicate-free set of bitiles inside one resolution box, kept
/// in canonical order.
class BitileCollection {
 public:
  BitileCollection() = default;

  BitileCollection(int resolution, std::vector<Bitile> tiles)
      : resolution_(resolution), tiles_(std::move(tiles)) {
    if (resolution < 0 || resolution > 24)
      throw std::invalid_argument("BitileCollection: resolution out of range");
    for (const Bitile& s : tiles_)
      if (!bitile_in_resolution(s, resolution))
        throw std::invalid_argument(
            "BitileCollection: bitile outside the resolution box");
    std::sort(tiles_.begin(), tiles_.end());
    tiles_.erase(std::unique(tiles_.begin(), tiles_.end()), tiles_.end());
  }

  /// Every bitile of the resolution box.  At the finest time scale only
  /// the band [0, 2^{M+1}) survives; its upper child covers frequencies
  /// [2^M, 2^{M+1}), which is what makes the partial-sum identity hold
  /// up to n = 2^M.
  static BitileCollection all(int resolution) {
    std::vector<Bitile> tiles;
    for (int j = -resolution; j <= 0; ++j) {
      const std::uint64_t k_count = std::uint64_t{1} << -j;
      const std::uint64_t band = std::uint64_t{1} << (resolution + j);
      const std::uint64_t n_count = band > 1 ? band / 2 : 1;
      for (std::uint64_t k = 0; k < k_count; ++k)
        for (std::uint64_t n = 0; n < n_count; ++n)
          tiles.push_back({j, k, n});
    }
    return BitileCollection(resolution, std::move(tiles));
  }

  int resolution() const noexcept { return resolution_; }
  const std::vector<Bitile>& items() const noexcept { return tiles_; }
  std::size_t size() const noexcept { return tiles_.size(); }
  bool empty() const noexcept { return tiles_.empty(); }

  bool contains(const Bitile& s) const {
    return std::binary_search(tiles_.begin(), tiles_.end(), s);
  }

  friend bool operator==(const BitileCollection&, const BitileCollection&) =
      default;

 private:
  int resolution_ = 0;
  std::vector<Bitile> tiles_;  // canonical order, unique
};

namespace detail {

// The bitiles strictly between s and s' (s << s') form a chain, one per
// intermediate scale: the time interval is forced, and the frequency
// band is the unique dyadic band of its length containing w_{s'}.
inline Bitile between_at_scale(const Bitile& s, const Bitile& s_prime,
                               int scale) {
  return {scale, s.time_index >> (scale - s.scale),
          s_prime.freq_index >> (s_prime.scale - scale)};
}

}  // namespace detail

inline bool is_convex(const BitileCollection& S) {
  const auto& v = S.items();
  for (const Bitile& s : v)
    for (const Bitile& t : v) {
      if (t.scale - s.scale < 2 || !fefferman_leq(s, t)) continue;
      for (int j = s.scale + 1; j < t.scale; ++j)
        if (!S.contains(detail::between_at_scale(s, t, j))) return false;
    }
  return true;
}

/// Smallest convex superset within the resolution box.  A single pass
/// over comparable pairs suffices: anything between two fill-ins is
/// between two original members.
inline BitileCollection convex_hull(const BitileCollection& S) {
  std::vector<Bitile> out = S.items();
  const auto& v = S.items();
  for (const Bitile& s : v)
    for (const Bitile& t : v) {
      if (t.scale - s.scale < 2 || !fefferman_leq(s, t)) continue;
      for (int j = s.scale + 1; j < t.scale; ++j)
        out.push_back(detail::between_at_scale(s, t, j));
    }
  return BitileCollection(S.resolution(), std::move(out));
}

/// Maximal dyadic intervals of a union of grid cells: pairwise disjoint,
/// each inside E and maximal under inclusion, together covering E.
inline std::vector<DyadicInterval> maximal_dyadic_intervals(const CellSet& E) {
  const int M = E.resolution();
  const std::uint64_t total = E.cell_total();
  std::vector<DyadicInterval> out;
  std::uint64_t c = 0;
  while (c < total) {
    if (!E.test(c)) {
      ++c;
      continue;
    }
    // Largest aligned dyadic block starting at c and fully inside E.
    int best = 0;
    for (int b = 1; b <= M; ++b) {
      const std::uint64_t len = std::uint64_t{1} << b;
      if (c % len != 0 || c + len > total) break;
      DyadicInterval cand{Axis::Time, b - M, c >> b};
      if (!E.contains_interval(cand)) break;
      best = b;
    }
    out.push_back({Axis::Time, best - M, c >> best});
    c += std::uint64_t{1} << best;
  }
  return out;
}

}  // namespace walsh
