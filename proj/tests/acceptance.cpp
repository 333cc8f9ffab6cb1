// Acceptance suite: ten numbered criteria, one pass/fail line each.
// Tolerances, budgets and runtime ceilings are pinned here; the binary
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "walsh/harness.hpp"

using namespace walsh;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

// 1. Model-sum/partial-sum identity, every n <= 2^M, 1e-9 cellwise.
void criterion_1() {
  Timer timer;
  double worst = 0.0;
  int signals = 0;
  for (int M = 3; M <= 8; ++M) {
    const auto S = BitileCollection::all(M);
    const auto eps = SignPattern::ones(S);
    for (int rep = 0; rep < 17; ++rep) {
      Rng rng = Rng::fork(1000 + M, rep);
      Signal f = Signal::zero(M);
      for (auto& v : f.values) v = 2.0 * rng.unit() - 1.0;
      ++signals;
      for (std::uint64_t n = 0; n <= f.cell_count(); ++n) {
        const Signal lhs =
            model_sum(S, eps, ChoiceFunction::constant(M, n), f);
        worst = std::max(worst, max_abs_diff(lhs, partial_sum(f, n)));
      }
    }
  }
  const double elapsed = timer.seconds();
  report(1, "model sum equals partial sums over the full collection",
         worst <= 1e-9 && signals >= 100 && elapsed <= 60.0,
         std::to_string(signals) + " signals, worst " + fmt(worst) + ", " +
             fmt(elapsed) + " s");
}

// 2-4. The randomized pipeline: exact CZ identities (2), quantitative CZ
// budgets (3), density decomposition bounds (4).
void criteria_2_3_4() {
  Timer timer;
  Budgets budgets;  // spec defaults: tops 8, cz 100, tree 50, aggregate 50
  PipelineObserved observed;
  std::uint64_t checks = 0;
  std::size_t trials = 0;
  std::string failure;

  try {
    for (int M = 6; M <= 8; ++M) {
      ExperimentConfig cfg;
      cfg.resolution = M;
      cfg.trials = 336;
      cfg.p_grid = {1.1, 1.25, 1.5, 2.0};
      cfg.family = "indicator,random-sign,spike,single-packet";
      cfg.seed = 40 + std::uint64_t(M);
      cfg.dump_dir = ".";
      const PipelineReport r = pipeline_verify(cfg);
      checks += r.hard_checks;
      trials += r.trials.size();
      observed.tops_ratio = std::max(observed.tops_ratio, r.observed.tops_ratio);
      observed.cz_ratio = std::max(observed.cz_ratio, r.observed.cz_ratio);
      observed.tree_ratio = std::max(observed.tree_ratio, r.observed.tree_ratio);
      observed.aggregate = std::max(observed.aggregate, r.observed.aggregate);
    }
  } catch (const HardInvariantError& err) {
    failure = err.what();
  }
  const double elapsed = timer.seconds();

  report(2, "CZ coefficient and pairing identities hold to 1e-9",
         failure.empty() && trials >= 1000 && elapsed <= 600.0,
         failure.empty()
             ? std::to_string(trials) + " trials, " + std::to_string(checks) +
                   " hard checks, " + fmt(elapsed) + " s"
             : failure);
  report(3, "CZ quantitative bounds within budget",
         failure.empty() && observed.cz_ratio <= budgets.cz,
         "max ||h||_2 / delta^{-1/2+1/p'} = " + fmt(observed.cz_ratio) +
             " (budget " + fmt(budgets.cz) +
             "); #T_I <= N_I and local Lp bounds enforced per trial");
  report(4, "density decomposition: dense <= delta exact, tops within budget",
         failure.empty() && observed.tops_ratio <= budgets.tops,
         "max tops ratio " + fmt(observed.tops_ratio) + " (budget " +
             fmt(budgets.tops) + "), max tree-estimate ratio " +
             fmt(observed.tree_ratio) + ", max aggregate C " +
             fmt(observed.aggregate));
}

// 5-6. Carleson sweep at M = 10: growth fit and restricted weak type.
void criteria_5_6() {
  Timer timer;
  ExperimentConfig cfg;
  cfg.resolution = 10;
  cfg.trials = 20;  // per family
  cfg.family = "spike,indicator";
  cfg.p_grid = {1.05, 1.1, 1.2, 1.35, 1.5, 1.75, 2.0};
  cfg.seed = 5;
  const SweepResult r = carleson_sweep(cfg);
  const double elapsed = timer.seconds();

  bool finite = true;
  for (double m : r.per_p_max) finite = finite && std::isfinite(m) && m > 0;
  const bool fit_ok = !r.fit.degenerate && r.fit.beta <= 1.1;
  report(5, "weak-Lp maxima finite, monotone toward p=1, growth below "
            "(p-1)^{-1.1}",
         finite && r.monotone_toward_1 && fit_ok && elapsed <= 300.0,
         "maxima " + fmt(r.per_p_max.front()) + " .. " +
             fmt(r.per_p_max.back()) + ", beta " + fmt(r.fit.beta) + ", a " +
             fmt(r.fit.a) + ", " + fmt(elapsed) + " s");

  Budgets budgets;
  report(6, "restricted weak type within p^2/(p-1) budget",
         r.restricted_constant <= budgets.restricted,
         "constant " + fmt(r.restricted_constant) + " (budget " +
             fmt(budgets.restricted) + ")");
}

// 7. Mixed bound over spike heights 2^0..2^M at M = 10.
void criterion_7() {
  ExperimentConfig cfg;
  cfg.resolution = 10;
  const MixedResult r = mixed_bound_check(cfg);
  Budgets budgets;
  report(7, "mixed L1 log(e + |f|_inf/|f|_1) bound within budget",
         std::isfinite(r.max_ratio) && r.max_ratio <= budgets.mixed &&
             r.chain_ok && r.monotone_in_height,
         "suite max " + fmt(r.max_ratio) + " (budget " + fmt(budgets.mixed) +
             "), derivation chain ok, monotone in height");
}

// 8. Transform correctness and speed.
void criterion_8() {
  double worst_naive = 0.0;
  for (int M = 2; M <= 8; ++M) {
    Rng rng = Rng::fork(800, M);
    Signal f = Signal::zero(M);
    for (auto& v : f.values) v = 2.0 * rng.unit() - 1.0;
    const WalshSpectrum spec = fwht(f);
    // Independent oracle: digit-product characters, quadratic pairing.
    for (std::uint64_t n = 0; n < f.cell_count(); ++n) {
      double coef = 0.0;
      for (std::uint64_t c = 0; c < f.cell_count(); ++c) {
        double x = (double(c) + 0.5) * f.cell_measure();
        double w = 1.0;
        for (int i = 0; (n >> i) != 0; ++i)
          if ((n >> i) & 1)
            w *= (std::uint64_t(std::floor(std::ldexp(x, i + 1))) & 1) ? -1.0
                                                                       : 1.0;
        coef += f.values[c] * w;
      }
      coef *= f.cell_measure();
      worst_naive = std::max(worst_naive,
                             std::abs(coef - spec.coefficients[n]));
    }
  }

  Timer big;
  Rng rng = Rng::fork(801, 0);
  Signal f20 = Signal::zero(20);
  for (auto& v : f20.values) v = 2.0 * rng.unit() - 1.0;
  const WalshSpectrum spec20 = fwht(f20);
  const double t20 = big.seconds();
  const double parseval_guard = spec20.coefficients[0];  // keep it alive

  double worst_gram = 0.0;
  const int M = 8;
  for (int j : {0, -3, -6}) {
    const std::uint64_t count = std::uint64_t{1} << (M + j);
    const std::uint64_t k = j == 0 ? 0 : (std::uint64_t{1} << -j) - 1;
    std::vector<Signal> packets;
    for (std::uint64_t n = 0; n < count; ++n)
      packets.push_back(wave_packet(Tile{j, k, n}, M));
    for (std::uint64_t a = 0; a < count; ++a)
      for (std::uint64_t b = 0; b < count; ++b)
        worst_gram = std::max(worst_gram,
                              std::abs(inner(packets[a], packets[b]) -
                                       (a == b ? 1.0 : 0.0)));
  }

  report(8, "fwht matches the naive transform, M=20 under 1 s, Gram identity",
         worst_naive <= 1e-12 && t20 <= 1.0 && worst_gram <= 1e-12,
         "naive diff " + fmt(worst_naive) + ", M=20 in " + fmt(t20) +
             " s, Gram diff " + fmt(worst_gram) +
             (std::isfinite(parseval_guard) ? "" : "?"));
}

// 9. Zygmund inequality scan.
void criterion_9() {
  ExperimentConfig cfg;
  cfg.resolution = 7;
  cfg.trials = 100;  // per family; x2 families x3 thetas = 600 pairs
  cfg.family = "random-sign,indicator";
  cfg.p_grid = {1.05, 1.25, 1.5, 2.0};
  cfg.seed = 9;
  const ZygmundResult r = zygmund_scan(cfg);
  report(9, "Zygmund ratios bounded, single-frequency Holder bound never fails",
         r.single_frequency_ok && std::isfinite(r.max_ratio) &&
             r.rows.size() >= 500,
         "suite max " + fmt(r.max_ratio) + " over " +
             std::to_string(r.rows.size()) + " rows");
}

// 10. Lacunary scaling law.
void criterion_10() {
  const int M = 9;
  LacunarySequence seq = make_lacunary(2.0, 1.0, M + 1);  // 1,2,...,2^M
  std::vector<std::pair<std::string, Signal>> family;
  for (const std::string& fam : {std::string("indicator"),
                                 std::string("random-sign"),
                                 std::string("spike")})
    for (auto& member : generate_family(fam, M, 10, 12))
      family.emplace_back(member.id, std::move(member.signal));
  const std::vector<double> grid = {1.05, 1.1, 1.2, 1.35, 1.5, 1.75, 2.0};
  const LacunaryScan scan = lacunary_norm_scan(seq, grid, family);

  bool slack_ok = true;
  for (const auto& s : scan.summaries) slack_ok = slack_ok && s.slack >= -1e-9;
  report(10, "lacunary maxima below b log(e + 1/(p-1)) with finite b",
         slack_ok && std::isfinite(scan.envelope_b) && scan.envelope_b > 0,
         "fitted b " + fmt(scan.envelope_b) + ", least-squares a " +
             fmt(scan.lsq_log_coeff));
}

}  // namespace

int main() {
  Timer total;
  criterion_1();
  criteria_2_3_4();
  criteria_5_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed in %.1f s\n", 10 - g_failures,
              total.seconds());
  return g_failures == 0 ? 0 : 1;
}
