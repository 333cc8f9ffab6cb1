#pragma once

// Phase-plane model operator W_S, the size and density functionals,
// trees, forests, and the greedy maximal-top tree partition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/signal.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// Signs {-1,0,+1} attached to the bitiles of one collection.  Lookups
/// for bitiles outside the domain throw: the pattern must cover the
/// collection it is used with.
class SignPattern {
 public:
  SignPattern() = default;
  SignPattern(BitileCollection domain, std::vector<int> signs)
      : domain_(std::move(domain)), signs_(std::move(signs)) {
    if (signs_.size() != domain_.size())
      throw std::invalid_argument("SignPattern: sign count != domain size");
    for (int e : signs_)
      if (e < -1 || e > 1)
        throw std::invalid_argument("SignPattern: sign outside {-1,0,1}");
  }

  static SignPattern ones(const BitileCollection& domain) {
    return SignPattern(domain, std::vector<int>(domain.size(), 1));
  }

  int sign_of(const Bitile& s) const {
    const auto& v = domain_.items();
    const auto it = std::lower_bound(v.begin(), v.end(), s);
    if (it == v.end() || *it != s)
      throw std::invalid_argument("SignPattern: bitile outside domain");
    return signs_[static_cast<std::size_t>(it - v.begin())];
  }

  const BitileCollection& domain() const noexcept { return domain_; }
  const std::vector<int>& signs() const noexcept { return signs_; }

 private:
  BitileCollection domain_;
  std::vector<int> signs_;
};

/// Convex set of bitiles all below one top.
struct Tree {
  Bitile top;
  BitileCollection members;

  DyadicInterval time() const noexcept { return top.time(); }
};

/// A list of trees at one density level.
struct Forest {
  std::vector<Tree> trees;
  double delta = 1.0;

  double tops() const noexcept {
    double s = 0.0;
    for (const Tree& t : trees) s += t.time().length();
    return s;
  }
  std::size_t member_count() const noexcept {
    std::size_t n = 0;
    for (const Tree& t : trees) n += t.members.size();
    return n;
  }
  BitileCollection all_members(int resolution) const {
    std::vector<Bitile> v;
    v.reserve(member_count());
    for (const Tree& t : trees)
      v.insert(v.end(), t.members.items().begin(), t.members.items().end());
    return BitileCollection(resolution, std::move(v));
  }
};

namespace detail {

inline bool frequency_hit(const Bitile& s, std::uint64_t n_value) noexcept {
  // N(x) in w_{s2} = [(2n+1) 2^-j, (2n+2) 2^-j); integer comparison since
  // j <= 0.
  const std::uint64_t unit = std::uint64_t{1} << -s.scale;
  return (2 * s.freq_index + 1) * unit <= n_value &&
         n_value < (2 * s.freq_index + 2) * unit;
}

inline std::uint64_t pack_bitile(const Bitile& s) noexcept {
  return (std::uint64_t(-s.scale) << 56) | (s.time_index << 28) | s.freq_index;
}

}  // namespace detail

/// W_S f(x) = sum_s eps_s <f, w_{s1}> w_{s1}(x) 1_{w_{s2}}(N(x)).
inline Signal model_sum(const BitileCollection& S, const SignPattern& eps,
                        const ChoiceFunction& N, const Signal& f) {
  const int M = S.resolution();
  if (f.resolution != M || N.resolution != M)
    throw std::invalid_argument("model_sum: resolution mismatch");
  Signal out = Signal::zero(M);
  for (const Bitile& s : S.items()) {
    const int e = eps.sign_of(s);
    if (e == 0) continue;
    const double coef = tile_coefficient(f, s.lower_child());
    if (coef == 0.0) continue;
    const int local_bits = M + s.scale;
    const std::uint64_t first = s.time_index << local_bits;
    const std::uint64_t cells = std::uint64_t{1} << local_bits;
    const std::uint64_t rev =
        detail::bit_reverse(2 * s.freq_index, local_bits);
    const double amp = e * coef * std::exp2(-0.5 * s.scale);
    for (std::uint64_t c = 0; c < cells; ++c) {
      if (!detail::frequency_hit(s, N.per_cell[first + c])) continue;
      out.values[first + c] += amp * detail::character_sign(rev, c);
    }
  }
  return out;
}

inline Signal model_sum(const Forest& F, const SignPattern& eps,
                        const ChoiceFunction& N, const Signal& f) {
  return model_sum(F.all_members(f.resolution), eps, N, f);
}

/// d(s') = |G and I_{s'} and N^-1(w_{s'2})| / |I_{s'}|, exact.
inline double density_of(const Bitile& s, const CellSet& G,
                         const ChoiceFunction& N) {
  const int M = G.resolution();
  const std::uint64_t first = s.time().first_cell(M);
  const std::uint64_t cells = s.time().cell_count(M);
  std::uint64_t hit = 0;
  for (std::uint64_t c = first; c < first + cells; ++c)
    hit += (G.test(c) && detail::frequency_hit(s, N.per_cell[c]));
  return double(hit) / double(cells);
}

/// dense(s) = max over ancestors s' of s inside S (s itself included) of
/// density_of(s'), returned parallel to S.items().
inline std::vector<double> dense_map(const BitileCollection& S,
                                     const CellSet& G,
                                     const ChoiceFunction& N) {
  const auto& v = S.items();
  std::unordered_map<std::uint64_t, double> den;
  den.reserve(v.size() * 2);
  for (const Bitile& s : v) den[detail::pack_bitile(s)] = density_of(s, G, N);

  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Bitile& s = v[i];
    double best = den[detail::pack_bitile(s)];
    for (int j = s.scale + 1; j <= 0; ++j) {
      const int d = j - s.scale;
      const std::uint64_t k = s.time_index >> d;
      const std::uint64_t n_first = s.freq_index << d;
      const std::uint64_t n_count = std::uint64_t{1} << d;
      for (std::uint64_t t = 0; t < n_count; ++t) {
        const auto it = den.find(detail::pack_bitile({j, k, n_first + t}));
        if (it != den.end()) best = std::max(best, it->second);
      }
    }
    out[i] = best;
  }
  return out;
}

/// Collection-level dense_G(S): the maximum of dense over members.
inline double dense_of_collection(const BitileCollection& S, const CellSet& G,
                                  const ChoiceFunction& N) {
  double best = 0.0;
  for (const Bitile& s : S.items()) best = std::max(best, density_of(s, G, N));
  return best;
}

/// size_f(S) = sup_s max_{j=1,2} |<f, w_{s_j}>| / |I_s|^{1/2}.
inline double size_of(const BitileCollection& S, const Signal& f) {
  double best = 0.0;
  for (const Bitile& s : S.items()) {
    const double inv_sqrt_len = std::exp2(-0.5 * s.scale);
    const double a = std::abs(tile_coefficient(f, s.lower_child()));
    const double b = std::abs(tile_coefficient(f, s.upper_child()));
    best = std::max(best, std::max(a, b) * inv_sqrt_len);
  }
  return best;
}

inline double size_of(const Forest& F, const Signal& f) {
  return size_of(F.all_members(f.resolution), f);
}

/// Greedy partition into trees with pairwise distinct, pairwise
/// incomparable maximal tops.  Selection order: coarsest time scale
/// first, then time index, then frequency index.  Requires convex input
/// so that every tree is itself convex.
inline std::vector<Tree> tree_partition(const BitileCollection& S,
                                        bool verify_convex = true) {
  if (verify_convex && !is_convex(S))
    throw std::invalid_argument("tree_partition: collection not convex");
  std::vector<std::size_t> order(S.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& v = S.items();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[a].scale != v[b].scale) return v[a].scale > v[b].scale;
    if (v[a].time_index != v[b].time_index)
      return v[a].time_index < v[b].time_index;
    return v[a].freq_index < v[b].freq_index;
  });

  std::vector<char> assigned(S.size(), 0);
  std::vector<Tree> out;
  for (std::size_t oi : order) {
    if (assigned[oi]) continue;
    const Bitile top = v[oi];
    std::vector<Bitile> members;
    for (std::size_t u = 0; u < v.size(); ++u) {
      if (assigned[u] || !fefferman_leq(v[u], top)) continue;
      assigned[u] = 1;
      members.push_back(v[u]);
    }
    out.push_back({top, BitileCollection(S.resolution(), std::move(members))});
  }
  return out;
}

}  // namespace walsh
