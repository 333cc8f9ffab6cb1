// Minimal tour: build a signal, expand it in the Walsh basis, apply the
// Carleson maximal operator, and print weak-norm ratios.

#include <cstdio>

#include "walsh/maximal.hpp"
#include "walsh/transform.hpp"

int main() {
  using namespace walsh;
  const int M = 8;

  // A two-bump step function.
  Signal f = Signal::zero(M);
  for (std::uint64_t c = 16; c < 48; ++c) f.values[c] = 1.0;
  for (std::uint64_t c = 192; c < 200; ++c) f.values[c] = -4.0;

  const WalshSpectrum spec = fwht(f);
  std::printf("first coefficients:");
  for (int n = 0; n < 8; ++n) std::printf(" %.4f", spec.coefficients[n]);
  std::printf("\n");

  const CarlesonScan scan = carleson_scan(f);
  std::printf("||f||_inf = %.4f, ||Wf||_inf = %.4f\n", sup_norm(f),
              sup_norm(scan.max));
  for (double p : {1.1, 1.5, 2.0})
    std::printf("p=%.2f  ||Wf||_{p,inf}/||f||_p = %.4f\n", p,
                weak_lp_norm(scan.max, p) / lp_norm(f, p));

  // Where the supremum is attained, per cell (first few cells).
  std::printf("argmax frequencies:");
  for (int c = 0; c < 8; ++c)
    std::printf(" %llu",
                static_cast<unsigned long long>(scan.argmax.per_cell[c]));
  std::printf("\n");
  return 0;
}
