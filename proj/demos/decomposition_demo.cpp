// One pass through the decomposition machinery: exceptional set,
// good-tile restriction, density levels, and the CZ replacement, with
// the per-level report printed as CSV.

#include <cstdio>

#include "walsh/decomposition.hpp"
#include "walsh/harness.hpp"

int main() {
  using namespace walsh;
  const int M = 7;
  Rng rng(2024);

  // Signs with a tall narrow bump, so the exceptional set is nonempty.
  Signal f = Signal::zero(M);
  for (auto& v : f.values) v = rng.sign();
  for (std::uint64_t c = 40; c < 44; ++c) f.values[c] *= 24.0;
  const double p = 1.25;
  f *= 1.0 / lp_norm(f, p);

  const ChoiceFunction N = argmax_choice(f);
  CellSet G = CellSet::full(M);
  const ExceptionalSet ex = exceptional_set(f, p, 0.25);
  std::printf("|E| = %.4f at threshold c = %.4f\n", ex.cells.measure(),
              ex.threshold);

  const BitileCollection S = BitileCollection::all(M);
  const BitileCollection good = good_tiles(S, ex.cells);
  std::printf("bitiles: %zu total, %zu good\n", S.size(), good.size());

  const DensityDecomposition dd =
      density_decomposition(good, G, N, M + 2, /*verify_convex=*/false);
  std::printf("delta,numTrees,tops,topsRatio,czL2,czRatio\n");
  for (const Forest& forest : dd.forests) {
    if (forest.trees.empty()) continue;
    const CZResult cz = multi_frequency_cz(forest, f, ex.cells);
    const CZCertificate cert = cz_norm_certificate(cz, forest, G, p);
    std::printf("%g,%zu,%g,%.4f,%.4f,%.4f\n", forest.delta,
                forest.trees.size(), forest.tops(), tops_ratio(forest, G),
                cz.l2, cert.ratio);
  }
  std::printf("zero-density bitiles: %zu\n", dd.zero_bucket.size());
  return 0;
}
