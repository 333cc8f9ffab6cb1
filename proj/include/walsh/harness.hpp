#pragma once

// Experiment driver: input families, adversarial choice functions,
// weak-Lp sweeps, the mixed-bound check, the end-to-end decomposition
// pipeline with hard invariants, and deterministic CSV emission.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "walsh/decomposition.hpp"
#include "walsh/dyadic.hpp"
#include "walsh/io.hpp"
#include "walsh/lacunary.hpp"
#include "walsh/maximal.hpp"
#include "walsh/model_sum.hpp"
#include "walsh/rng.hpp"
#include "walsh/signal.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// Regression tripwires for the measured constants.  Configured, not
/// hard-coded; every run reports observed maxima so these can be
/// tightened empirically.
struct Budgets {
  double tops = 8.0;        // tops(F_delta) * delta / |G|
  double cz = 100.0;        // ||h_delta||_2 / delta^{-1/2+1/p'}
  double tree = 50.0;       // tree-estimate lhs / min(bounds)
  double aggregate = 50.0;  // sum_delta |<W f, g>| / (p' |G|^{1/p'})
  double restricted = 10.0;  // ||W 1_E||_{p,infty} / (|E|^{1/p} p^2/(p-1))
  double mixed = 10.0;      // ||W f||_{1,infty} / (||f||_1 log(e+R))

  bool set(const std::string& name, double value) {
    if (name == "tops") tops = value;
    else if (name == "cz") cz = value;
    else if (name == "tree") tree = value;
    else if (name == "aggregate") aggregate = value;
    else if (name == "restricted") restricted = value;
    else if (name == "mixed") mixed = value;
    else return false;
    return true;
  }
};

struct ExperimentConfig {
  int resolution = 8;
  std::vector<double> p_grid = {1.1, 1.25, 1.5, 2.0};
  std::string family = "indicator";  // comma-separated list
  int trials = 16;                   // members per family / pipeline trials
  std::uint64_t seed = 1;
  Budgets budgets;
  double target_measure = 0.25;
  bool adversarial_choice = true;  // N = argmax of the Carleson scan
  bool mixed_signs = true;         // odd trials use random +-1 patterns
  std::string dump_dir = ".";     // reproducer dumps on hard failure
};

struct FamilyMember {
  std::string id;
  Signal signal;
};

namespace detail {

inline void require_p_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty p grid");
  for (double p : grid)
    if (!(p > 1.0 && p <= 2.0))
      throw std::invalid_argument("p grid must lie in (1, 2]");
}

inline std::vector<std::string> split_list(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : spec) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  if (out.empty()) throw std::invalid_argument("empty family spec");
  return out;
}

inline CellSet random_cells(int M, std::uint64_t how_many, Rng& rng) {
  const std::uint64_t total = std::uint64_t{1} << M;
  std::vector<std::uint64_t> idx(total);
  for (std::uint64_t i = 0; i < total; ++i) idx[i] = i;
  CellSet out(M);
  for (std::uint64_t i = 0; i < how_many; ++i) {
    const std::uint64_t j = i + rng.below(total - i);
    std::swap(idx[i], idx[j]);
    out.set(idx[i]);
  }
  return out;
}

}  // namespace detail

/// One family member.  Families: indicator (random unions of cells at
/// dyadic measures), random-sign, spike (extremizer candidates
/// 2^M 1_cell), single-packet (full-interval Walsh characters), and
/// custom:<path>.
inline FamilyMember generate_member(const std::string& spec, int M, Rng& rng,
                                    std::uint64_t ordinal) {
  const std::uint64_t total = std::uint64_t{1} << M;
  if (spec == "indicator") {
    const int m = 1 + int(ordinal % std::uint64_t(M));
    const CellSet cells = detail::random_cells(M, total >> m, rng);
    return {"indicator:2^-" + std::to_string(m) + ":" + std::to_string(ordinal),
            Signal::indicator(M, cells)};
  }
  if (spec == "random-sign") {
    Signal f = Signal::zero(M);
    for (auto& v : f.values) v = rng.sign();
    return {"random-sign:" + std::to_string(ordinal), std::move(f)};
  }
  if (spec == "spike") {
    Signal f = Signal::zero(M);
    f.values[rng.below(total)] = double(total);
    return {"spike:" + std::to_string(ordinal), std::move(f)};
  }
  if (spec == "single-packet") {
    const std::uint64_t n = rng.below(total);
    return {"packet:" + std::to_string(n) + ":" + std::to_string(ordinal),
            walsh_character(n, M)};
  }
  if (spec.rfind("custom:", 0) == 0)
    return {spec, read_signal(spec.substr(7))};
  throw std::invalid_argument("unknown family spec '" + spec + "'");
}

inline std::vector<FamilyMember> generate_family(const std::string& spec,
                                                 int M, std::uint64_t seed,
                                                 int count) {
  std::vector<FamilyMember> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::fork(seed, std::uint64_t(i));
    out.push_back(generate_member(spec, M, rng, std::uint64_t(i)));
  }
  return out;
}

struct PowerFit {
  double a = 0.0;
  double beta = 0.0;
  bool degenerate = false;
};

/// Least squares of log y against log(p-1): y ~ a (p-1)^{-beta}.
inline PowerFit fit_inverse_power(const std::vector<double>& p,
                                  const std::vector<double>& y) {
  PowerFit fit;
  std::vector<double> xs, zs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (y[i] <= 0.0) {
      fit.degenerate = true;
      return fit;
    }
    xs.push_back(std::log(p[i] - 1.0));
    zs.push_back(std::log(y[i]));
  }
  const double n = double(xs.size());
  double sx = 0, sz = 0, sxx = 0, sxz = 0, szz = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sz += zs[i];
    sxx += xs[i] * xs[i];
    sxz += xs[i] * zs[i];
    szz += zs[i] * zs[i];
  }
  const double var_z = szz / n - (sz / n) * (sz / n);
  const double var_x = sxx / n - (sx / n) * (sx / n);
  if (var_z < 1e-12 || var_x < 1e-12) {
    fit.degenerate = true;
    fit.a = std::exp(sz / n);
    return fit;
  }
  const double slope = (sxz - sx * sz / n) / (sxx - sx * sx / n);
  fit.beta = -slope;
  fit.a = std::exp((sz - slope * sx) / n);
  return fit;
}

struct SweepRow {
  double p = 0.0;
  std::string family_id;
  double input_norm = 0.0;  // ||f||_p (equals |E|^{1/p} for indicators)
  double weak_norm = 0.0;   // ||W f||_{p,infty}
  double ratio = 0.0;
  double growth_predicted = 0.0;  // envelope c / (p-1)
  double slack = 0.0;             // growth_predicted - ratio
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<double> p_grid;
  std::vector<double> per_p_max;
  PowerFit fit;              // per-p maxima ~ a (p-1)^{-beta}
  double fit_residual_rms = 0.0;   // on log-log axes
  double envelope_c = 0.0;   // max_p per_p_max * (p-1)
  bool monotone_toward_1 = true;  // maxima non-decreasing as p decreases
  double restricted_constant = 0.0;  // vs p^2/(p-1), indicator rows only
};

/// Weak-Lp ratios of the Carleson operator over the configured families.
inline SweepResult carleson_sweep(const ExperimentConfig& cfg) {
  detail::require_p_grid(cfg.p_grid);
  const int M = cfg.resolution;
  std::vector<FamilyMember> members;
  for (const std::string& fam : detail::split_list(cfg.family)) {
    auto part = generate_family(fam, M, cfg.seed, cfg.trials);
    members.insert(members.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }

  std::vector<Signal> wf;
  wf.reserve(members.size());
  for (const auto& m : members) wf.push_back(carleson_max(m.signal));

  SweepResult result;
  result.p_grid.assign(cfg.p_grid.begin(), cfg.p_grid.end());
  std::sort(result.p_grid.begin(), result.p_grid.end());
  for (double p : result.p_grid) {
    double best = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      SweepRow row;
      row.p = p;
      row.family_id = members[i].id;
      row.input_norm = lp_norm(members[i].signal, p);
      row.weak_norm = weak_lp_norm(wf[i], p);
      row.ratio = row.input_norm > 0.0 ? row.weak_norm / row.input_norm : 0.0;
      best = std::max(best, row.ratio);
      if (members[i].id.rfind("indicator", 0) == 0 && row.input_norm > 0.0) {
        const double hunt = p * p / (p - 1.0);
        result.restricted_constant =
            std::max(result.restricted_constant, row.ratio / hunt);
      }
      result.rows.push_back(std::move(row));
    }
    result.per_p_max.push_back(best);
  }

  for (std::size_t i = 0; i + 1 < result.p_grid.size(); ++i)
    if (result.per_p_max[i] + 1e-9 < result.per_p_max[i + 1])
      result.monotone_toward_1 = false;

  result.fit = fit_inverse_power(result.p_grid, result.per_p_max);
  if (!result.fit.degenerate) {
    double ss = 0.0;
    for (std::size_t i = 0; i < result.p_grid.size(); ++i) {
      const double predicted = std::log(result.fit.a) -
                               result.fit.beta * std::log(result.p_grid[i] - 1.0);
      const double res = std::log(result.per_p_max[i]) - predicted;
      ss += res * res;
    }
    result.fit_residual_rms = std::sqrt(ss / double(result.p_grid.size()));
  }
  for (std::size_t i = 0; i < result.p_grid.size(); ++i)
    result.envelope_c = std::max(
        result.envelope_c, result.per_p_max[i] * (result.p_grid[i] - 1.0));
  for (auto& row : result.rows) {
    row.growth_predicted = result.envelope_c / (row.p - 1.0);
    row.slack = row.growth_predicted - row.ratio;
  }
  return result;
}

struct MixedRow {
  double height = 0.0;  // ||f||_inf at ||f||_1 = 1
  double l1 = 0.0;
  double linf = 0.0;
  double weak1 = 0.0;        // ||W f||_{1,infty}
  double mixed_ratio = 0.0;  // weak1 / (l1 log(e + linf/l1))
  double p_star = 0.0;       // 1 + 1/log(e + linf/l1)
  double weak_pstar = 0.0;
  double chain_c = 0.0;  // weak_pstar (p*-1) / ||f||_{p*}
};

struct MixedResult {
  std::vector<MixedRow> rows;
  double max_ratio = 0.0;
  bool monotone_in_height = true;  // weak1 never decreases as linf doubles
  bool chain_ok = true;            // mixed bound implied by the weak-Lp bound
};

/// Mixed-bound suite over the block family 2^m 1_{[0,2^-m)}, m = 0..M:
/// unit L1 mass, doubling sup norm.  Also reruns the derivation through
/// the weak-Lp bound at p* = 1 + 1/log(e + ||f||_inf/||f||_1).
inline MixedResult mixed_bound_check(const ExperimentConfig& cfg) {
  const int M = cfg.resolution;
  MixedResult result;
  double prev_weak1 = 0.0;
  for (int m = 0; m <= M; ++m) {
    Signal f = Signal::zero(M);
    const std::uint64_t cells = std::uint64_t{1} << (M - m);
    for (std::uint64_t c = 0; c < cells; ++c)
      f.values[c] = std::ldexp(1.0, m);
    const Signal wf = carleson_max(f);

    MixedRow row;
    row.l1 = l1_norm(f);
    row.linf = sup_norm(f);
    row.height = row.linf;
    const double r = row.linf / row.l1;
    const double log_term = std::log(std::exp(1.0) + r);
    row.weak1 = weak_lp_norm(wf, 1.0);
    row.mixed_ratio = row.weak1 / (row.l1 * log_term);
    row.p_star = 1.0 + 1.0 / log_term;
    row.weak_pstar = weak_lp_norm(wf, row.p_star);
    const double f_pstar = lp_norm(f, row.p_star);
    row.chain_c = row.weak_pstar * (row.p_star - 1.0) / f_pstar;

    // Derivation path, each step an exact inequality at desk scale:
    // weak1 <= weak_pstar, ||f||_{p*} <= e ||f||_1, so
    // mixed_ratio <= e * chain_c.
    if (row.weak1 > row.weak_pstar * (1.0 + 1e-9)) result.chain_ok = false;
    if (f_pstar > std::exp(1.0) * row.l1 * (1.0 + 1e-9))
      result.chain_ok = false;
    if (row.mixed_ratio > std::exp(1.0) * row.chain_c * (1.0 + 1e-9))
      result.chain_ok = false;

    if (row.weak1 + 1e-12 < prev_weak1) result.monotone_in_height = false;
    prev_weak1 = row.weak1;
    result.max_ratio = std::max(result.max_ratio, row.mixed_ratio);
    result.rows.push_back(row);
  }
  return result;
}

struct PipelineRow {
  std::uint64_t trial = 0;
  double p = 0.0;
  double delta = 0.0;
  std::size_t num_trees = 0;
  double tops = 0.0;
  double tops_ratio = 0.0;
  double cz_l2 = 0.0;
  double cz_ratio = 0.0;
  double tree_ratio = 0.0;
  double pairing_ratio = 0.0;
};

struct PipelineTrial {
  std::uint64_t trial = 0;
  std::string family_id;
  double p = 0.0;
  double g_measure = 0.0;
  double g_prime_measure = 0.0;
  double threshold = 0.0;      // exceptional-set level c
  double aggregate_c = 0.0;    // sum_delta |pairing| / (p' |G|^{1/p'})
  std::size_t good_count = 0;
  std::size_t zero_count = 0;
};

struct PipelineObserved {
  double tops_ratio = 0.0;
  double cz_ratio = 0.0;
  double tree_ratio = 0.0;
  double aggregate = 0.0;
};

struct PipelineReport {
  std::vector<PipelineRow> rows;
  std::vector<PipelineTrial> trials;
  PipelineObserved observed;
  std::uint64_t hard_checks = 0;  // exact identities verified

  bool within(const Budgets& b) const {
    return observed.tops_ratio <= b.tops && observed.cz_ratio <= b.cz &&
           observed.tree_ratio <= b.tree && observed.aggregate <= b.aggregate;
  }
};

namespace detail {

inline std::string dump_reproducer(const ExperimentConfig& cfg,
                                   std::uint64_t trial, const Signal& f,
                                   const ChoiceFunction& N, const CellSet& G,
                                   double p) {
  const std::string base =
      cfg.dump_dir + "/pipeline-failure-" + std::to_string(trial);
  write_signal(f, base + ".sig");
  write_choice(N, base + ".cf");
  Scenario sc;
  sc.signal_path = base + ".sig";
  sc.choice_path = base + ".cf";
  sc.g_cells = G.cells();
  sc.p = p;
  sc.seed = cfg.seed;
  write_scenario(sc, base + ".scn");
  return base + ".scn";
}

}  // namespace detail

/// End-to-end verification of one instance: exceptional set, good-tile
/// restriction, density decomposition, multi-frequency CZ, and the
/// tree/forest estimates.  Exact structural identities throw
/// HardInvariantError on failure; measured constants land in `report`.
/// Used by both pipeline_verify (generated trials) and the verify-cz
/// subcommand (scenario files).
inline void run_pipeline_instance(const ExperimentConfig& cfg,
                                  std::uint64_t trial,
                                  const std::string& family_id, Signal f,
                                  const ChoiceFunction& N, const CellSet& G,
                                  double p, const SignPattern& eps,
                                  PipelineReport& report) {
  const int M = cfg.resolution;
  if (f.resolution != M || N.resolution != M || G.resolution() != M)
    throw std::invalid_argument("pipeline: resolution mismatch");
  const double p_dual = p / (p - 1.0);
  std::uint64_t checks = 0;

  const double fp = lp_norm(f, p);
  if (fp > 0.0) f *= 1.0 / fp;

  const ExceptionalSet ex = exceptional_set(f, p, cfg.target_measure);
  const CellSet g_prime = G.minus(ex.cells);

  const BitileCollection S = BitileCollection::all(M);
  const Signal wf_full = model_sum(S, eps, N, f);
  Signal g = Signal::zero(M);
  for (std::uint64_t c = 0; c < g.cell_count(); ++c)
    if (g_prime.test(c) && wf_full.values[c] != 0.0)
      g.values[c] = wf_full.values[c] > 0.0 ? 1.0 : -1.0;

  const BitileCollection s_good = good_tiles(S, ex.cells);
  const DensityDecomposition dd = density_decomposition(
      s_good, G, N, M + 2, /*verify_convex=*/false);

  // Forests plus the zero bucket must partition S_good exactly.
  {
    std::vector<Bitile> merged = dd.zero_bucket.items();
    for (const Forest& fr : dd.forests)
      for (const Tree& t : fr.trees)
        merged.insert(merged.end(), t.members.items().begin(),
                      t.members.items().end());
    std::sort(merged.begin(), merged.end());
    if (merged != s_good.items())
      throw HardInvariantError("pipeline: decomposition does not partition");
    ++checks;
  }

  // Zero-density bitiles never meet g: their pairing vanishes exactly.
  if (!dd.zero_bucket.empty()) {
    const double zp = inner(model_sum(dd.zero_bucket, eps, N, f), g);
    if (zp != 0.0)
      throw HardInvariantError("pipeline: zero bucket pairs nontrivially");
    ++checks;
  }

  PipelineTrial summary;
  summary.trial = trial;
  summary.family_id = family_id;
  summary.p = p;
  summary.g_measure = G.measure();
  summary.g_prime_measure = g_prime.measure();
  summary.threshold = ex.threshold;
  summary.good_count = s_good.size();
  summary.zero_count = dd.zero_bucket.size();

  double sum_pairings = 0.0;
  double sum_abs_pairings = 0.0;
  const double two_pow_p = std::pow(2.0, p);
  for (const Forest& forest : dd.forests) {
    if (forest.trees.empty()) continue;
    const BitileCollection members = forest.all_members(M);

    if (dense_of_collection(members, G, N) > forest.delta)
      throw HardInvariantError("pipeline: dense_G(F_delta) > delta");
    ++checks;

    const CZResult cz = multi_frequency_cz(forest, f, ex.cells);
    for (const Bitile& s : members.items()) {
      const double a = tile_coefficient(f, s.lower_child());
      const double b = tile_coefficient(cz.h_delta, s.lower_child());
      if (std::abs(a - b) > 1e-9)
        throw HardInvariantError("pipeline: CZ coefficient identity broken");
    }
    checks += members.size();

    for (const auto& tiles : cz.interval_tiles)
      for (std::size_t i = 1; i < tiles.size(); ++i)
        if (tiles[i].freq_index <= tiles[i - 1].freq_index)
          throw HardInvariantError("pipeline: T_I tiles not disjoint");

    if (!ex.cells.empty())
      for (const DyadicInterval& I : cz.intervals)
        if (local_lp_norm(f, I, p) > two_pow_p * ex.threshold * (1.0 + 1e-12))
          throw HardInvariantError("pipeline: local norm bound broken");
    ++checks;

    const CZCertificate cert = cz_norm_certificate(cz, forest, G, p);
    const TreeEstimate te =
        tree_estimate_check(forest, cz.h_delta, g, G, N, forest.delta, &eps);
    const ForestPairing fp_delta =
        single_forest_pairing(forest, f, g, G, N, p, cz, &eps);
    sum_pairings += fp_delta.pairing;
    sum_abs_pairings += std::abs(fp_delta.pairing);
    ++checks;  // pairing identity inside single_forest_pairing

    PipelineRow row;
    row.trial = trial;
    row.p = p;
    row.delta = forest.delta;
    row.num_trees = forest.trees.size();
    row.tops = forest.tops();
    row.tops_ratio = tops_ratio(forest, G);
    row.cz_l2 = cz.l2;
    row.cz_ratio = cert.ratio;
    row.tree_ratio = te.ratio();
    row.pairing_ratio = fp_delta.normalized;
    report.observed.tops_ratio =
        std::max(report.observed.tops_ratio, row.tops_ratio);
    report.observed.cz_ratio = std::max(report.observed.cz_ratio, row.cz_ratio);
    report.observed.tree_ratio =
        std::max(report.observed.tree_ratio, row.tree_ratio);
    report.rows.push_back(row);
  }

  // Good-tile identity: dropped bitiles live inside E, where g vanishes.
  if (std::abs(inner(wf_full, g) - sum_pairings) > 1e-9)
    throw HardInvariantError("pipeline: good-tile pairing identity broken");
  ++checks;

  if (G.measure() > 0.0) {
    summary.aggregate_c =
        sum_abs_pairings / (p_dual * std::pow(G.measure(), 1.0 / p_dual));
    report.observed.aggregate =
        std::max(report.observed.aggregate, summary.aggregate_c);
  }
  report.trials.push_back(std::move(summary));
  report.hard_checks += checks;
}

/// Randomized end-to-end suite.  On a hard failure the offending trial
/// is dumped as a scenario file and the error rethrown with its path.
inline PipelineReport pipeline_verify(const ExperimentConfig& cfg) {
  detail::require_p_grid(cfg.p_grid);
  const int M = cfg.resolution;
  const auto families = detail::split_list(cfg.family);
  PipelineReport report;

  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = Rng::fork(cfg.seed, std::uint64_t(t));
    FamilyMember member = generate_member(
        families[t % families.size()], M, rng, std::uint64_t(t));
    const double p = cfg.p_grid[t % cfg.p_grid.size()];

    ChoiceFunction N =
        cfg.adversarial_choice
            ? argmax_choice(member.signal)
            : [&] {
                std::vector<std::uint64_t> vals(std::size_t{1} << M);
                for (auto& v : vals)
                  v = rng.below((std::uint64_t{1} << M) + 1);
                return ChoiceFunction(M, std::move(vals));
              }();

    const int g_exp = int(rng.below(4));
    const CellSet G =
        detail::random_cells(M, (std::uint64_t{1} << M) >> g_exp, rng);

    const BitileCollection S = BitileCollection::all(M);
    SignPattern eps = SignPattern::ones(S);
    if (cfg.mixed_signs && (t % 2) == 1) {
      std::vector<int> signs(S.size());
      for (auto& e : signs) e = rng.sign();
      eps = SignPattern(S, std::move(signs));
    }

    try {
      run_pipeline_instance(cfg, std::uint64_t(t), member.id, member.signal,
                            N, G, p, eps, report);
    } catch (const HardInvariantError& err) {
      const std::string dump = detail::dump_reproducer(
          cfg, std::uint64_t(t), member.signal, N, G, p);
      throw HardInvariantError(std::string(err.what()) +
                               " [reproducer: " + dump + "]");
    }
  }
  return report;
}

struct ZygmundRow {
  double theta = 0.0;
  double p = 0.0;
  std::string family_id;
  double ratio = 0.0;
};

struct ZygmundResult {
  std::vector<ZygmundRow> rows;
  double max_ratio = 0.0;
  bool single_frequency_ok = true;  // |f^(xi)|/(p'||f||_p) <= 1/p' always
};

/// Zygmund-inequality scan over theta-lacunary sequences (real and
/// integer mode) and the configured family.
inline ZygmundResult zygmund_scan(const ExperimentConfig& cfg) {
  detail::require_p_grid(cfg.p_grid);
  const int M = cfg.resolution;
  ZygmundResult result;
  const std::vector<double> thetas = {1.5, 2.0, 4.0};
  std::vector<FamilyMember> members;
  for (const std::string& fam : detail::split_list(cfg.family)) {
    auto part = generate_family(fam, M, cfg.seed, cfg.trials);
    members.insert(members.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }

  for (double theta : thetas) {
    std::uint64_t which = 0;
    for (const auto& member : members) {
      Rng rng = Rng::fork(cfg.seed ^ 0x5eedull, which++);
      const bool integer_mode = (which % 2) == 0;
      const double first = 4.0 / theta * (1.0 + rng.unit());
      const LacunarySequence seq =
          make_lacunary(theta, first, 10, integer_mode);
      for (double p : cfg.p_grid) {
        if (!(p > 1.0 && p <= 2.0)) continue;
        ZygmundRow row{theta, p, member.id,
                       zygmund_ratio(member.signal, seq, p)};
        result.max_ratio = std::max(result.max_ratio, row.ratio);
        result.rows.push_back(std::move(row));

        // Single-frequency sanity: reduces to the Holder bound.
        LacunarySequence single{theta, {seq.terms.front()}};
        const double one = zygmund_ratio(member.signal, single, p);
        const double p_dual = p / (p - 1.0);
        if (one > 1.0 / p_dual + 1e-9) result.single_frequency_ok = false;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------
// CSV emission.  Deterministic: fixed column order, format_double for
// every floating value, rows in computation order.

inline std::string sweep_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "p,familyId,inputNorm,weakNorm,ratio,growthPredicted,slack\n";
  for (const auto& row : r.rows)
    out << format_double(row.p) << "," << row.family_id << ","
        << format_double(row.input_norm) << "," << format_double(row.weak_norm)
        << "," << format_double(row.ratio) << ","
        << format_double(row.growth_predicted) << ","
        << format_double(row.slack) << "\n";
  return out.str();
}

inline std::string mixed_csv(const MixedResult& r) {
  std::ostringstream out;
  out << "height,l1,linf,weak1,mixedRatio,pStar,weakPstar,chainC\n";
  for (const auto& row : r.rows)
    out << format_double(row.height) << "," << format_double(row.l1) << ","
        << format_double(row.linf) << "," << format_double(row.weak1) << ","
        << format_double(row.mixed_ratio) << "," << format_double(row.p_star)
        << "," << format_double(row.weak_pstar) << ","
        << format_double(row.chain_c) << "\n";
  return out.str();
}

/// The per-delta report consumed by `decompose` and `verify-cz`.
inline std::string level_report_csv(const PipelineReport& r) {
  std::ostringstream out;
  out << "delta,numTrees,tops,topsRatio,czL2,czRatio,pairingRatio\n";
  for (const auto& row : r.rows)
    out << format_double(row.delta) << "," << row.num_trees << ","
        << format_double(row.tops) << "," << format_double(row.tops_ratio)
        << "," << format_double(row.cz_l2) << ","
        << format_double(row.cz_ratio) << ","
        << format_double(row.pairing_ratio) << "\n";
  return out.str();
}

inline std::string pipeline_csv(const PipelineReport& r) {
  std::ostringstream out;
  out << "trial,p,delta,numTrees,tops,topsRatio,czL2,czRatio,treeRatio,"
         "pairingRatio\n";
  for (const auto& row : r.rows)
    out << row.trial << "," << format_double(row.p) << ","
        << format_double(row.delta) << "," << row.num_trees << ","
        << format_double(row.tops) << "," << format_double(row.tops_ratio)
        << "," << format_double(row.cz_l2) << ","
        << format_double(row.cz_ratio) << "," << format_double(row.tree_ratio)
        << "," << format_double(row.pairing_ratio) << "\n";
  return out.str();
}

inline std::string lacunary_csv(const LacunaryScan& r) {
  std::ostringstream out;
  out << "p,familyId,strongNorm,weakNorm,ratio\n";
  for (const auto& row : r.rows)
    out << format_double(row.p) << "," << row.family_id << ","
        << format_double(row.strong_norm) << ","
        << format_double(row.weak_norm) << "," << format_double(row.ratio)
        << "\n";
  for (const auto& s : r.summaries)
    out << format_double(s.p) << ",summary," << format_double(s.max_ratio)
        << "," << format_double(r.envelope_b) << ","
        << format_double(s.slack) << "\n";
  return out.str();
}

inline std::string zygmund_csv(const ZygmundResult& r) {
  std::ostringstream out;
  out << "theta,p,familyId,ratio\n";
  for (const auto& row : r.rows)
    out << format_double(row.theta) << "," << format_double(row.p) << ","
        << row.family_id << "," << format_double(row.ratio) << "\n";
  return out.str();
}

/// Data-only plot companion: a gnuplot script for a two-column slice of
/// an emitted CSV.
inline std::string gnuplot_script(const std::string& csv_path,
                                  const std::string& title, int x_column,
                                  int y_column) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set key off\n";
  out << "set title '" << title << "'\n";
  out << "set logscale y\n";
  out << "plot '" << csv_path << "' every ::1 using " << x_column << ":"
      << y_column << " with linespoints\n";
  return out.str();
}

}  // namespace walsh
