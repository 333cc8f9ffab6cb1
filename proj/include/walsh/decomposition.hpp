#pragma once

// The proof pipeline as executable constructions: good-tile restriction,
// density decomposition into forests, the multi-frequency
// Calderon-Zygmund function h_delta, and numerical certificates for the
// tree and single-forest estimates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/maximal.hpp"
#include "walsh/model_sum.hpp"
#include "walsh/signal.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// Raised when an exact structural identity fails; indicates a bug, not
/// a data problem.
struct HardInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// S_good = {s : I_s meets the complement of E}.  Preserves convexity,
/// and guarantees that any maximal interval I of E meeting I_s satisfies
/// I strictly inside I_s.
inline BitileCollection good_tiles(const BitileCollection& S,
                                   const CellSet& E) {
  std::vector<Bitile> keep;
  keep.reserve(S.size());
  for (const Bitile& s : S.items())
    if (!E.contains_interval(s.time())) keep.push_back(s);
  return BitileCollection(S.resolution(), std::move(keep));
}

struct DensityDecomposition {
  std::vector<double> delta_levels;  // 2^-k, k = 0..K
  std::vector<Forest> forests;       // parallel to delta_levels
  BitileCollection zero_bucket;      // dense exactly 0
};

namespace detail {

// Bucket of a density value: the k with 2^{-k-1} < d <= 2^{-k}.  Density
// values are exact dyadic doubles (cell count over a power of two), so
// frexp decides the bucket with no rounding ambiguity.
inline int density_level(double d) noexcept {
  int e = 0;
  const double m = std::frexp(d, &e);
  return m == 0.5 ? 1 - e : -e;
}

}  // namespace detail

/// Bucket every bitile at the level holding its dense value, then
/// tree-partition each bucket.  Buckets of a convex collection are
/// convex, so the partition trees are well formed.
inline DensityDecomposition density_decomposition(const BitileCollection& S,
                                                  const CellSet& G,
                                                  const ChoiceFunction& N,
                                                  int max_level = -1,
                                                  bool verify_convex = true) {
  if (verify_convex && !is_convex(S))
    throw std::invalid_argument("density_decomposition: input not convex");
  const int M = S.resolution();
  const int K = max_level < 0 ? M + 2 : max_level;

  const std::vector<double> dense = dense_map(S, G, N);
  std::vector<std::vector<Bitile>> buckets(K + 1);
  std::vector<Bitile> zeros;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (dense[i] == 0.0) {
      zeros.push_back(S.items()[i]);
      continue;
    }
    const int k = detail::density_level(dense[i]);
    if (k < 0 || k > K)
      throw std::invalid_argument(
          "density_decomposition: level " + std::to_string(k) +
          " outside [0, K]; raise max_level");
    buckets[k].push_back(S.items()[i]);
  }

  DensityDecomposition out;
  out.zero_bucket = BitileCollection(M, std::move(zeros));
  for (int k = 0; k <= K; ++k) {
    BitileCollection bucket(M, std::move(buckets[k]));
    Forest forest;
    forest.delta = std::ldexp(1.0, -k);
    forest.trees = tree_partition(bucket, /*verify_convex=*/false);
    out.delta_levels.push_back(forest.delta);
    out.forests.push_back(std::move(forest));
  }
  return out;
}

/// tops(F) * delta / |G|; zero when G is empty.
inline double tops_ratio(const Forest& F, const CellSet& G) {
  const double g = G.measure();
  return g > 0.0 ? F.tops() * F.delta / g : 0.0;
}

struct CZResult {
  Signal h_delta;
  std::vector<DyadicInterval> intervals;          // maximal intervals of E
  std::vector<std::vector<Tile>> interval_tiles;  // T_I, pairwise disjoint
  std::vector<std::size_t> tree_counts;           // N_I
  double l2 = 0.0;
};

/// Multi-frequency Calderon-Zygmund replacement: on the complement of E
/// keep f; on each maximal interval I of E substitute the projection of
/// f 1_I onto the span of the packets {w_t : t in T_I}.  Reproduces
/// every forest coefficient <f, w_{s1}> (and <f, w_{s2}>) exactly.
inline CZResult multi_frequency_cz(const Forest& F, const Signal& f,
                                   const CellSet& E) {
  const int M = f.resolution;
  const BitileCollection members = F.all_members(M);
  for (const Bitile& s : members.items())
    if (E.contains_interval(s.time()))
      throw HardInvariantError(
          "multi_frequency_cz: forest bitile buried inside E; caller "
          "skipped good_tiles");

  CZResult out;
  out.intervals = maximal_dyadic_intervals(E);
  out.h_delta = restrict_to(f, E.complement());

  for (const DyadicInterval& I : out.intervals) {
    // T_I: one candidate tile per forest bitile over I; the band is the
    // unique dyadic band of length 1/|I| containing w_{s1}.
    std::vector<std::uint64_t> freqs;
    for (const Bitile& s : members.items()) {
      if (!s.time().contains(I)) continue;
      const int d = s.scale - I.scale;  // >= 1 by the good-tile geometry
      freqs.push_back((2 * s.freq_index) >> d);
    }
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());

    std::vector<Tile> tiles;
    tiles.reserve(freqs.size());
    for (std::uint64_t n : freqs) tiles.push_back({I.scale, I.index, n});

    std::size_t n_trees = 0;
    for (const Tree& t : F.trees) n_trees += t.time().contains(I);
    if (tiles.size() > n_trees)
      throw HardInvariantError("multi_frequency_cz: #T_I exceeds N_I");

    // Orthonormal projection: the T_I packets share the support I and
    // have pairwise disjoint bands.
    for (const Tile& t : tiles) {
      const double coef = tile_coefficient(f, t);
      const Signal w = wave_packet(t, M);
      const std::uint64_t first = I.first_cell(M);
      const std::uint64_t cells = I.cell_count(M);
      for (std::uint64_t c = first; c < first + cells; ++c)
        out.h_delta.values[c] += coef * w.values[c];
    }
    out.interval_tiles.push_back(std::move(tiles));
    out.tree_counts.push_back(n_trees);
  }
  out.l2 = l2_norm(out.h_delta);
  return out;
}

struct CZCertificate {
  double ratio = 0.0;        // ||h_delta||_2 / delta^{-1/2+1/p'}
  double h_l2 = 0.0;
  double delta_power = 0.0;  // delta^{-1/2+1/p'}
  double sum_interval_lengths = 0.0;
  double tops = 0.0;
  double tops_ratio = 0.0;
  double chain_lhs = 0.0;  // sum |I| N_I^{1-2/p'} over intervals with tiles
  double chain_rhs = 0.0;  // tops^{1-2/p'} (sum |I|)^{2/p'}
};

inline CZCertificate cz_norm_certificate(const CZResult& cz, const Forest& F,
                                         const CellSet& G, double p) {
  if (!(p > 1.0 && p <= 2.0))
    throw std::invalid_argument("cz_norm_certificate: p outside (1,2]");
  const double p_dual = p / (p - 1.0);
  CZCertificate cert;
  cert.h_l2 = cz.l2;
  cert.delta_power = std::pow(F.delta, -0.5 + 1.0 / p_dual);
  cert.ratio = cz.l2 / cert.delta_power;
  cert.tops = F.tops();
  cert.tops_ratio = tops_ratio(F, G);

  const double theta = 1.0 - 2.0 / p_dual;  // in [0,1) for p in (1,2]
  for (std::size_t i = 0; i < cz.intervals.size(); ++i) {
    const double len = cz.intervals[i].length();
    cert.sum_interval_lengths += len;
    if (cz.tree_counts[i] > 0)
      cert.chain_lhs += len * std::pow(double(cz.tree_counts[i]), theta);
  }
  cert.chain_rhs = std::pow(cert.tops, theta) *
                   std::pow(cert.sum_interval_lengths, 1.0 - theta);
  if (cert.chain_lhs > cert.chain_rhs * (1.0 + 1e-12))
    throw HardInvariantError("cz_norm_certificate: Holder chain violated");
  return cert;
}

struct TreeEstimate {
  double lhs = 0.0;       // |<W_F h, g>|
  double size_bound = 0.0;  // size_h(F) |G|
  double l2_bound = 0.0;    // delta^{1/2} sqrt(|G|) ||h||_2
  double ratio() const {
    const double b = std::min(size_bound, l2_bound);
    return b > 0.0 ? lhs / b : 0.0;
  }
};

/// Both sides of the forest L2 tree estimate.  Preconditions (g below
/// the indicator of G, forest density at most delta) are verified and
/// reported, never silently ignored.
inline TreeEstimate tree_estimate_check(const Forest& F, const Signal& h,
                                        const Signal& g, const CellSet& G,
                                        const ChoiceFunction& N, double delta,
                                        const SignPattern* eps = nullptr) {
  for (std::uint64_t c = 0; c < g.cell_count(); ++c)
    if (std::abs(g.values[c]) > (G.test(c) ? 1.0 : 0.0) + 1e-12)
      throw std::invalid_argument("tree_estimate_check: |g| > 1_G");
  const BitileCollection members = F.all_members(h.resolution);
  if (dense_of_collection(members, G, N) > delta)
    throw std::invalid_argument("tree_estimate_check: dense_G(F) > delta");

  const SignPattern ones = eps ? SignPattern() : SignPattern::ones(members);
  const Signal wf = model_sum(members, eps ? *eps : ones, N, h);
  TreeEstimate out;
  out.lhs = std::abs(inner(wf, g));
  out.size_bound = size_of(members, h) * G.measure();
  out.l2_bound = std::sqrt(delta) * std::sqrt(G.measure()) * l2_norm(h);
  return out;
}

struct ForestPairing {
  double pairing = 0.0;     // <W_F f, g>
  double normalized = 0.0;  // |pairing| / delta^{1/p'}
};

/// The single-forest pairing with its delta^{1/p'} normalization.  The
/// identity <W_F f, g> = <W_F h_delta, g> is asserted as a hard check:
/// its failure indicates a Calderon-Zygmund bug.
inline ForestPairing single_forest_pairing(const Forest& F, const Signal& f,
                                           const Signal& g, const CellSet& G,
                                           const ChoiceFunction& N, double p,
                                           const CZResult& cz,
                                           const SignPattern* eps = nullptr,
                                           double tol = 1e-9) {
  if (!(p > 1.0 && p <= 2.0))
    throw std::invalid_argument("single_forest_pairing: p outside (1,2]");
  for (std::uint64_t c = 0; c < g.cell_count(); ++c)
    if (std::abs(g.values[c]) > (G.test(c) ? 1.0 : 0.0) + 1e-12)
      throw std::invalid_argument("single_forest_pairing: |g| > 1_G");
  const BitileCollection members = F.all_members(f.resolution);
  const SignPattern ones = eps ? SignPattern() : SignPattern::ones(members);
  const SignPattern& pattern = eps ? *eps : ones;

  const double a = inner(model_sum(members, pattern, N, f), g);
  const double b = inner(model_sum(members, pattern, N, cz.h_delta), g);
  if (std::abs(a - b) > tol)
    throw HardInvariantError(
        "single_forest_pairing: pairing identity broken by " +
        std::to_string(std::abs(a - b)));

  const double p_dual = p / (p - 1.0);
  return {a, std::abs(a) / std::pow(F.delta, 1.0 / p_dual)};
}

}  // namespace walsh
