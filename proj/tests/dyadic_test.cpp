#include "walsh/dyadic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace walsh;

namespace {

std::vector<Bitile> random_bitiles(int M, Rng& rng, int count) {
  std::vector<Bitile> out;
  while (int(out.size()) < count) {
    const int j = -int(rng.below(M + 1));
    const std::uint64_t k = rng.below(std::uint64_t{1} << -j);
    const std::uint64_t band = std::uint64_t{1} << (M + j);
    const std::uint64_t n = band > 1 ? rng.below(band / 2) : 0;
    out.push_back({j, k, n});
  }
  return out;
}

}  // namespace

TEST_CASE("dyadic interval containment is exact") {
  DyadicInterval half{Axis::Time, -1, 0};    // [0, 1/2)
  DyadicInterval quarter{Axis::Time, -2, 1};  // [1/4, 1/2)
  DyadicInterval upper{Axis::Time, -1, 1};    // [1/2, 1)
  CHECK(half.contains(quarter));
  CHECK_FALSE(quarter.contains(half));
  CHECK(half.contains(half));
  CHECK(half.disjoint_from(upper));
  CHECK_FALSE(half.disjoint_from(quarter));
  CHECK(quarter.length() == 0.25);
  CHECK(quarter.lower() == 0.25);
  CHECK(quarter.upper() == 0.5);
}

TEST_CASE("Fefferman order on the worked instances") {
  // a = [0,1/2) x [0,4), b = [0,1) x [0,2): nested by definition.
  Bitile a{-1, 0, 0};
  Bitile b{0, 0, 0};
  CHECK(fefferman_leq(a, b));
  CHECK_FALSE(fefferman_leq(b, a));
  CHECK(fefferman_leq(a, a));  // reflexive

  // b' = [1/2,1) x [0,2): time intervals disjoint.
  Bitile b_shift{0, 1, 0};
  CHECK_FALSE(fefferman_leq(a, b_shift));
}

TEST_CASE("Fefferman order is a partial order on random samples") {
  Rng rng(11);
  const auto sample = random_bitiles(6, rng, 60);
  for (const Bitile& x : sample)
    for (const Bitile& y : sample) {
      if (fefferman_leq(x, y) && fefferman_leq(y, x)) CHECK(x == y);
      for (const Bitile& z : sample)
        if (fefferman_leq(x, y) && fefferman_leq(y, z))
          CHECK(fefferman_leq(x, z));
    }
}

TEST_CASE("distinct tiles over one time interval have disjoint bands") {
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int j = -int(rng.below(5));
    const std::uint64_t k = rng.below(std::uint64_t{1} << -j);
    Tile t{j, k, rng.below(16)};
    Tile u{j, k, rng.below(16)};
    if (t == u) continue;
    CHECK(t.freq().disjoint_from(u.freq()));
  }
}

TEST_CASE("tile below bitile comparison") {
  Bitile s{0, 0, 1};  // [0,1) x [2,4)
  Tile t{-1, 0, 1};   // [0,1/2) x [2,4)
  CHECK(fefferman_leq(t, s));
  Tile t_wrong_band{-1, 0, 0};  // [0,1/2) x [0,2)
  CHECK_FALSE(fefferman_leq(t_wrong_band, s));
  Tile same_scale{0, 0, 2};  // band too short to contain w_s
  CHECK_FALSE(fefferman_leq(same_scale, s));
}

TEST_CASE("full collection size and membership") {
  for (int M = 0; M <= 6; ++M) {
    const auto S = BitileCollection::all(M);
    const std::size_t expected =
        M == 0 ? 1
               : (std::size_t{1} << M) + std::size_t(M) * (std::size_t{1} << (M - 1));
    CHECK(S.size() == expected);
    for (const Bitile& s : S.items()) CHECK(bitile_in_resolution(s, M));
    CHECK(std::is_sorted(S.items().begin(), S.items().end()));
  }
  CHECK(is_convex(BitileCollection::all(5)));
}

TEST_CASE("collection rejects out-of-box bitiles and deduplicates") {
  CHECK_THROWS_AS(BitileCollection(3, {Bitile{1, 0, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BitileCollection(3, {Bitile{0, 1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BitileCollection(3, {Bitile{0, 0, 4}}),
                  std::invalid_argument);
  BitileCollection S(3, {Bitile{0, 0, 0}, Bitile{0, 0, 0}});
  CHECK(S.size() == 1);
}

TEST_CASE("convexity detects a missing middle") {
  CHECK(is_convex(BitileCollection(4, {})));  // vacuous

  // Chain s << s'' << s' at scale gap 2; omitting the forced middle
  // breaks convexity.
  Bitile s{-2, 0, 1};
  Bitile top{0, 0, 4};
  REQUIRE(fefferman_leq(s, top));
  const Bitile mid = detail::between_at_scale(s, top, -1);
  CHECK(fefferman_leq(s, mid));
  CHECK(fefferman_leq(mid, top));

  CHECK(is_convex(BitileCollection(4, {s, mid, top})));
  CHECK_FALSE(is_convex(BitileCollection(4, {s, top})));
}

TEST_CASE("convex hull closes gaps, is idempotent and monotone") {
  Bitile s{-2, 0, 1};
  Bitile top{0, 0, 4};
  REQUIRE(fefferman_leq(s, top));
  const BitileCollection gap(4, {s, top});
  const BitileCollection hull = convex_hull(gap);
  CHECK(hull.size() == 3);
  CHECK(is_convex(hull));
  CHECK(convex_hull(hull) == hull);  // idempotent

  CHECK(convex_hull(BitileCollection(4, {})).empty());

  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    auto a = random_bitiles(5, rng, 6);
    auto b = a;
    auto extra = random_bitiles(5, rng, 3);
    b.insert(b.end(), extra.begin(), extra.end());
    const BitileCollection ca(5, a);
    const auto ha = convex_hull(ca);
    const auto hb = convex_hull(BitileCollection(5, b));
    CHECK(is_convex(ha));
    for (const Bitile& x : ca.items()) CHECK(ha.contains(x));  // superset
    for (const Bitile& x : ha.items()) CHECK(hb.contains(x));  // monotone
  }
}

TEST_CASE("maximal dyadic intervals on worked instances") {
  CHECK(maximal_dyadic_intervals(CellSet(3)).empty());

  const auto whole = maximal_dyadic_intervals(CellSet::full(3));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0] == DyadicInterval{Axis::Time, 0, 0});

  // E = [0,1/4) u [1/4,1/2) u [3/4,1) at M=2 -> {[0,1/2), [3/4,1)}.
  CellSet e(2);
  e.set(0);
  e.set(1);
  e.set(3);
  const auto parts = maximal_dyadic_intervals(e);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == DyadicInterval{Axis::Time, -1, 0});
  CHECK(parts[1] == DyadicInterval{Axis::Time, -2, 3});
}

TEST_CASE("maximal dyadic intervals match the brute-force oracle") {
  Rng rng(31);
  const int M = 5;
  for (int rep = 0; rep < 40; ++rep) {
    const CellSet e = testing::random_cell_set(M, rng, 0.4);
    const auto got = maximal_dyadic_intervals(e);

    // Oracle: every dyadic interval inside E whose parent is not.
    std::vector<DyadicInterval> expected;
    for (int b = M; b >= 0; --b) {
      const std::uint64_t blocks = std::uint64_t{1} << (M - b);
      for (std::uint64_t k = 0; k < blocks; ++k) {
        DyadicInterval cand{Axis::Time, b - M, k};
        if (!e.contains_interval(cand)) continue;
        DyadicInterval parent{Axis::Time, b - M + 1, k >> 1};
        if (b < M && e.contains_interval(parent)) continue;
        expected.push_back(cand);
      }
    }
    std::sort(expected.begin(), expected.end(),
              [](const DyadicInterval& a, const DyadicInterval& b) {
                return a.lower() < b.lower();
              });
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expected[i]);

    // Disjoint, and lengths add up to |E|.
    double total = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      total += got[i].length();
      for (std::size_t j = i + 1; j < got.size(); ++j)
        CHECK(got[i].disjoint_from(got[j]));
    }
    CHECK(total == Catch::Approx(e.measure()).margin(1e-15));
  }
}

TEST_CASE("cell set algebra") {
  CellSet a(3);
  a.set(0);
  a.set(5);
  CHECK(a.count() == 2);
  CHECK(a.measure() == 0.25);
  CHECK(a.complement().count() == 6);
  CellSet b(3);
  b.set(5);
  CHECK(a.minus(b).cells() == std::vector<std::uint64_t>{0});
  CHECK(a.contains_interval(DyadicInterval{Axis::Time, -3, 5}));
  CHECK_FALSE(a.contains_interval(DyadicInterval{Axis::Time, -2, 0}));
  CHECK(a.meets_interval(DyadicInterval{Axis::Time, -2, 0}));
}
