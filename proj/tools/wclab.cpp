// wclab: command-line driver for the Walsh time-frequency laboratory.
//
// Subcommands: transform, carleson, sweep, mixed, decompose, verify-cz,
// pipeline, lacunary, zygmund.  Exit code 0 means every hard invariant
// passed and every configured budget held; 1 means a budget or sanity
// check failed; 2 means a hard invariant broke (a reproducer scenario
// is dumped).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "walsh/harness.hpp"

namespace {

using namespace walsh;

std::vector<double> parse_p_grid(const std::string& spec) {
  // "a:b:steps" inclusive linear grid, or a comma list.
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double a = 0, b = 0;
    int steps = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &steps) != 3 ||
        steps < 1)
      throw CLI::ValidationError("--p-grid", "expected a:b:steps");
    for (int i = 0; i < steps; ++i)
      out.push_back(steps == 1 ? a : a + (b - a) * double(i) / (steps - 1));
    return out;
  }
  std::string cur;
  for (char ch : spec + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (out.empty()) throw CLI::ValidationError("--p-grid", "empty grid");
  return out;
}

void apply_budgets(Budgets& budgets, const std::vector<std::string>& specs) {
  for (const std::string& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos ||
        !budgets.set(s.substr(0, eq), std::stod(s.substr(eq + 1))))
      throw CLI::ValidationError("--budget", "expected name=value with name "
                                 "in tops|cz|tree|aggregate|restricted|mixed");
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::string& out_path, const std::string& csv) {
  if (out_path.empty())
    std::cout << csv;
  else
    write_text(out_path, csv);
}

struct CommonFlags {
  ExperimentConfig cfg;
  std::string p_grid_spec;
  std::vector<std::string> budget_specs;
  std::string out_path;
  std::string gnuplot_path;

  void attach(CLI::App* app) {
    app->add_option("--resolution", cfg.resolution, "grid exponent M")
        ->check(CLI::Range(1, 14));
    app->add_option("--p-grid", p_grid_spec, "a:b:steps or comma list");
    app->add_option("--trials", cfg.trials, "members per family / trials")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", cfg.seed, "RNG seed");
    app->add_option("--family", cfg.family,
                    "comma list: indicator,random-sign,spike,single-packet,"
                    "custom:<path>");
    app->add_option("--budget", budget_specs, "name=value override")
        ->take_all();
    app->add_option("--out", out_path, "output CSV path (default stdout)");
    app->add_option("--gnuplot", gnuplot_path, "also write a plot script");
  }

  void finalize() {
    if (!p_grid_spec.empty()) cfg.p_grid = parse_p_grid(p_grid_spec);
    apply_budgets(cfg.budgets, budget_specs);
  }
};

int cmd_transform(const std::string& in_path, const std::string& out_path) {
  const Signal f = read_signal(in_path);
  const WalshSpectrum spec = fwht(f);
  if (!out_path.empty()) write_spectrum(spec, out_path);
  const double err = max_abs_diff(f, inverse_fwht(spec));
  std::printf("resolution %d, roundtrip max error %.3e\n", f.resolution, err);
  return err <= 1e-12 ? 0 : 1;
}

int cmd_carleson(const std::string& in_path, const std::string& out_path,
                 const std::vector<double>& p_grid) {
  const Signal f = read_signal(in_path);
  if (f.resolution > 14)
    throw std::runtime_error("carleson: resolution above the desk-scale cap");
  const Signal wf = carleson_max(f);
  if (!out_path.empty()) write_signal(wf, out_path);
  for (double p : p_grid) {
    const double fn = lp_norm(f, p);
    const double wn = weak_lp_norm(wf, p);
    std::printf("p=%g  ||f||_p=%s  ||Wf||_{p,inf}=%s  ratio=%s\n", p,
                format_double(fn).c_str(), format_double(wn).c_str(),
                format_double(fn > 0 ? wn / fn : 0).c_str());
  }
  return 0;
}

int cmd_sweep(CommonFlags& flags) {
  flags.finalize();
  if (!flags.gnuplot_path.empty() && flags.out_path.empty())
    throw CLI::ValidationError("--gnuplot", "needs --out for the CSV path");
  const SweepResult r = carleson_sweep(flags.cfg);
  emit(flags.out_path, sweep_csv(r));
  if (!flags.gnuplot_path.empty())
    write_text(flags.gnuplot_path,
               gnuplot_script(flags.out_path, "weak-Lp ratio vs p", 1, 5));
  for (std::size_t i = 0; i < r.p_grid.size(); ++i)
    std::fprintf(stderr, "p=%g max ratio %s\n", r.p_grid[i],
                 format_double(r.per_p_max[i]).c_str());
  if (r.fit.degenerate)
    std::fprintf(stderr, "fit: degenerate (flat maxima), a=%s\n",
                 format_double(r.fit.a).c_str());
  else
    std::fprintf(stderr, "fit: a=%s beta=%s residual rms %s\n",
                 format_double(r.fit.a).c_str(),
                 format_double(r.fit.beta).c_str(),
                 format_double(r.fit_residual_rms).c_str());
  std::fprintf(stderr, "monotone toward p=1: %s\n",
               r.monotone_toward_1 ? "yes" : "NO");
  std::fprintf(stderr, "restricted weak-type constant %s (budget %g)\n",
               format_double(r.restricted_constant).c_str(),
               flags.cfg.budgets.restricted);
  return r.restricted_constant <= flags.cfg.budgets.restricted ? 0 : 1;
}

int cmd_mixed(CommonFlags& flags) {
  flags.finalize();
  const MixedResult r = mixed_bound_check(flags.cfg);
  emit(flags.out_path, mixed_csv(r));
  std::fprintf(stderr, "mixed-bound suite max %s (budget %g), chain %s, "
               "monotone %s\n",
               format_double(r.max_ratio).c_str(), flags.cfg.budgets.mixed,
               r.chain_ok ? "ok" : "BROKEN",
               r.monotone_in_height ? "yes" : "NO");
  return (r.max_ratio <= flags.cfg.budgets.mixed && r.chain_ok) ? 0 : 1;
}

int run_scenario(CommonFlags& flags, const std::string& scenario_path,
                 const std::string& signs_path, bool print_levels) {
  flags.finalize();
  const Scenario sc = read_scenario(scenario_path);
  const Signal f = read_signal(sc.signal_path);
  const ChoiceFunction N = read_choice(sc.choice_path);
  ExperimentConfig cfg = flags.cfg;
  cfg.resolution = f.resolution;
  cfg.seed = sc.seed;
  CellSet G(f.resolution);
  for (auto c : sc.g_cells) G.set(c);
  const BitileCollection S = BitileCollection::all(f.resolution);
  const SignPattern eps = signs_path.empty()
                              ? SignPattern::ones(S)
                              : read_signs(signs_path, f.resolution);

  PipelineReport report;
  try {
    run_pipeline_instance(cfg, 0, "scenario", f, N, G, sc.p, eps, report);
  } catch (const HardInvariantError& err) {
    std::fprintf(stderr, "HARD INVARIANT FAILURE: %s\n", err.what());
    return 2;
  }
  emit(flags.out_path, level_report_csv(report));
  if (print_levels) {
    std::fprintf(stderr,
                 "hard checks passed: %llu\n"
                 "observed: tops %s (budget %g), cz %s (budget %g), tree %s "
                 "(budget %g), aggregate %s (budget %g)\n",
                 static_cast<unsigned long long>(report.hard_checks),
                 format_double(report.observed.tops_ratio).c_str(),
                 cfg.budgets.tops, format_double(report.observed.cz_ratio).c_str(),
                 cfg.budgets.cz, format_double(report.observed.tree_ratio).c_str(),
                 cfg.budgets.tree,
                 format_double(report.observed.aggregate).c_str(),
                 cfg.budgets.aggregate);
  }
  return report.within(cfg.budgets) ? 0 : 1;
}

int cmd_pipeline(CommonFlags& flags, bool random_choice) {
  flags.finalize();
  flags.cfg.adversarial_choice = !random_choice;
  PipelineReport report;
  try {
    report = pipeline_verify(flags.cfg);
  } catch (const HardInvariantError& err) {
    std::fprintf(stderr, "HARD INVARIANT FAILURE: %s\n", err.what());
    return 2;
  }
  emit(flags.out_path, pipeline_csv(report));
  std::fprintf(stderr,
               "%d trials, %llu hard checks, zero failures\n"
               "observed maxima: tops %s (budget %g), cz %s (budget %g), "
               "tree %s (budget %g), aggregate %s (budget %g)\n",
               flags.cfg.trials,
               static_cast<unsigned long long>(report.hard_checks),
               format_double(report.observed.tops_ratio).c_str(),
               flags.cfg.budgets.tops,
               format_double(report.observed.cz_ratio).c_str(),
               flags.cfg.budgets.cz,
               format_double(report.observed.tree_ratio).c_str(),
               flags.cfg.budgets.tree,
               format_double(report.observed.aggregate).c_str(),
               flags.cfg.budgets.aggregate);
  return report.within(flags.cfg.budgets) ? 0 : 1;
}

int cmd_lacunary(CommonFlags& flags, double theta, double first, int count) {
  flags.finalize();
  if (!flags.gnuplot_path.empty() && flags.out_path.empty())
    throw CLI::ValidationError("--gnuplot", "needs --out for the CSV path");
  const LacunarySequence seq = make_lacunary(theta, first, count, true);
  if (seq.terms.back() > std::ldexp(1.0, flags.cfg.resolution))
    throw CLI::ValidationError("--count",
                               "sequence exceeds 2^M; lower --count");
  std::vector<std::pair<std::string, Signal>> family;
  for (const std::string& fam : detail::split_list(flags.cfg.family))
    for (auto& member : generate_family(fam, flags.cfg.resolution,
                                        flags.cfg.seed, flags.cfg.trials))
      family.emplace_back(member.id, std::move(member.signal));

  const LacunaryScan scan =
      lacunary_norm_scan(seq, flags.cfg.p_grid, family);
  emit(flags.out_path, lacunary_csv(scan));
  if (!flags.gnuplot_path.empty())
    write_text(flags.gnuplot_path,
               gnuplot_script(flags.out_path, "lacunary weak-Lp ratio", 1, 5));
  std::fprintf(stderr, "envelope b=%s (law b log(e+1/(p-1))), lsq a=%s, "
               "lsq b'=%s (law b'/(p-1)), monotone toward p=1: %s\n",
               format_double(scan.envelope_b).c_str(),
               format_double(scan.lsq_log_coeff).c_str(),
               format_double(scan.lsq_inverse_coeff).c_str(),
               scan.monotone_toward_1 ? "yes" : "no (flagged)");
  return std::isfinite(scan.envelope_b) ? 0 : 1;
}

int cmd_zygmund(CommonFlags& flags) {
  flags.finalize();
  const ZygmundResult r = zygmund_scan(flags.cfg);
  emit(flags.out_path, zygmund_csv(r));
  std::fprintf(stderr, "suite max ratio %s, single-frequency bound %s\n",
               format_double(r.max_ratio).c_str(),
               r.single_frequency_ok ? "ok" : "BROKEN");
  return r.single_frequency_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh time-frequency laboratory"};
  app.require_subcommand(1);

  // transform
  auto* transform = app.add_subcommand("transform", "FWHT roundtrip");
  std::string t_in, t_out;
  transform->add_option("--in", t_in, "signal file")->required();
  transform->add_option("--out", t_out, "spectrum file");

  // carleson
  auto* carleson = app.add_subcommand("carleson", "compute Wf for a signal");
  std::string c_in, c_out, c_pgrid = "1.1,1.5,2";
  carleson->add_option("--in", c_in, "signal file")->required();
  carleson->add_option("--out", c_out, "output signal file");
  carleson->add_option("--p-grid", c_pgrid, "a:b:steps or comma list");

  auto* sweep = app.add_subcommand("sweep", "weak-Lp Carleson sweep");
  CommonFlags sweep_flags;
  sweep_flags.attach(sweep);

  auto* mixed = app.add_subcommand("mixed", "mixed L1 log bound check");
  CommonFlags mixed_flags;
  mixed_flags.attach(mixed);

  auto* decompose =
      app.add_subcommand("decompose", "density decomposition of a scenario");
  CommonFlags dec_flags;
  dec_flags.attach(decompose);
  std::string dec_scenario, dec_signs;
  decompose->add_option("--scenario", dec_scenario, "scenario file")
      ->required();
  decompose->add_option("--signs", dec_signs, "sign pattern file");

  auto* verify =
      app.add_subcommand("verify-cz", "hard CZ verification of a scenario");
  CommonFlags ver_flags;
  ver_flags.attach(verify);
  std::string ver_scenario, ver_signs;
  verify->add_option("--scenario", ver_scenario, "scenario file")->required();
  verify->add_option("--signs", ver_signs, "sign pattern file");

  auto* pipeline =
      app.add_subcommand("pipeline", "randomized end-to-end verification");
  CommonFlags pipe_flags;
  pipe_flags.attach(pipeline);
  bool random_choice = false;
  pipeline->add_flag("--random-choice", random_choice,
                     "random N instead of the Carleson argmax");

  auto* lacunary = app.add_subcommand("lacunary", "lacunary weak-Lp scan");
  CommonFlags lac_flags;
  lac_flags.attach(lacunary);
  double lac_theta = 2.0, lac_first = 1.0;
  int lac_count = 8;
  lacunary->add_option("--theta", lac_theta, "lacunarity constant > 1");
  lacunary->add_option("--first", lac_first, "first term");
  lacunary->add_option("--count", lac_count, "sequence length");

  auto* zygmund = app.add_subcommand("zygmund", "Zygmund inequality scan");
  CommonFlags zyg_flags;
  zyg_flags.attach(zygmund);

  CLI11_PARSE(app, argc, argv);

  try {
    if (transform->parsed()) return cmd_transform(t_in, t_out);
    if (carleson->parsed())
      return cmd_carleson(c_in, c_out, parse_p_grid(c_pgrid));
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
    if (mixed->parsed()) return cmd_mixed(mixed_flags);
    if (decompose->parsed())
      return run_scenario(dec_flags, dec_scenario, dec_signs, false);
    if (verify->parsed())
      return run_scenario(ver_flags, ver_scenario, ver_signs, true);
    if (pipeline->parsed()) return cmd_pipeline(pipe_flags, random_choice);
    if (lacunary->parsed())
      return cmd_lacunary(lac_flags, lac_theta, lac_first, lac_count);
    if (zygmund->parsed()) return cmd_zygmund(zyg_flags);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
