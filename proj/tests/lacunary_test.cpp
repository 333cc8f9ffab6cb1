#include "walsh/lacunary.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace walsh;

TEST_CASE("lacunary sequence construction") {
  const LacunarySequence a = make_lacunary(2.0, 1.0, 4);
  CHECK(a.terms == std::vector<double>{1, 2, 4, 8});

  const LacunarySequence b = make_lacunary(1.5, 2.0, 3);
  CHECK(b.terms == std::vector<double>{2, 3, 5});

  Rng rng(401);
  for (int rep = 0; rep < 40; ++rep) {
    const double theta = 1.0 + rng.unit() * 3.0 + 1e-3;
    const LacunarySequence s =
        make_lacunary(theta, 1.0 + rng.unit() * 5.0, 8, rep % 2 == 0);
    for (std::size_t j = 0; j + 1 < s.terms.size(); ++j)
      CHECK(s.terms[j + 1] >= theta * s.terms[j] - 1e-12);
  }

  CHECK_THROWS_AS(make_lacunary(1.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_lacunary(2.0, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_lacunary(2.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("closed-form oscillatory integrals match quadrature") {
  const int M = 6;
  Rng rng(409);
  for (int rep = 0; rep < 20; ++rep) {
    Signal f = Signal::zero(M);
    f.values[rng.below(f.cell_count())] = 1.0;  // single-cell indicator
    const double xi = 0.5 + rng.unit() * 200.0;
    const auto exact = oscillatory_coefficient(f, xi);
    const auto quad = testing::quadrature_coefficient(f, xi, 512);
    CHECK(std::abs(exact - quad) < 1e-10);
  }
}

TEST_CASE("Zygmund ratio on worked instances") {
  const int M = 5;
  const LacunarySequence seq = make_lacunary(2.0, 2.0, 5);

  CHECK(zygmund_ratio(Signal::zero(M), seq, 1.5) == 0.0);

  // Constant signal against full-period frequencies: exact cancellation.
  const double two_pi = 2.0 * std::acos(-1.0);
  LacunarySequence full_period{2.0, {two_pi, 2 * two_pi, 4 * two_pi}};
  CHECK(zygmund_ratio(Signal::constant(M, 1.0), full_period, 1.5) <
        1e-12);

  // Precondition xi_1 >= 4/theta.
  LacunarySequence low{2.0, {1.0, 2.0, 4.0}};
  CHECK_THROWS_AS(zygmund_ratio(Signal::constant(M, 1.0), low, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(zygmund_ratio(Signal::constant(M, 1.0), seq, 2.5),
                  std::invalid_argument);
}

TEST_CASE("single-frequency Zygmund ratio obeys the Holder bound") {
  Rng rng(419);
  for (int rep = 0; rep < 60; ++rep) {
    const Signal f = testing::random_sign_signal(5, rng);
    const double theta = 1.5 + rng.unit() * 2.5;
    const double xi = 4.0 / theta + rng.unit() * 50.0;
    for (double p : {1.05, 1.25, 1.5, 2.0}) {
      const double p_dual = p / (p - 1.0);
      const double r = zygmund_ratio(f, LacunarySequence{theta, {xi}}, p);
      CHECK(r <= 1.0 / p_dual + 1e-9);
    }
  }
}

TEST_CASE("Zygmund suite constant over the theta grid is bounded") {
  Rng rng(421);
  double worst = 0.0;
  for (double theta : {1.5, 2.0, 4.0}) {
    for (int rep = 0; rep < 25; ++rep) {
      const Signal f = testing::random_sign_signal(6, rng);
      const LacunarySequence seq =
          make_lacunary(theta, 4.0 / theta * (1 + rng.unit()), 10,
                        rep % 2 == 0);
      for (double p : {1.1, 1.5, 2.0})
        worst = std::max(worst, zygmund_ratio(f, seq, p));
    }
  }
  INFO("Zygmund suite max " << worst);
  CHECK(worst < 10.0);
  CHECK(worst > 0.0);
}

TEST_CASE("lacunary norm scan on a constant family") {
  const int M = 5;
  const LacunarySequence seq = make_lacunary(2.0, 1.0, M + 1);
  std::vector<std::pair<std::string, Signal>> family;
  family.emplace_back("const", Signal::constant(M, 3.0));
  const std::vector<double> grid = {1.1, 1.5, 2.0};
  const LacunaryScan scan = lacunary_norm_scan(seq, grid, family);
  for (const auto& row : scan.rows)
    CHECK(row.ratio == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("lacunary norm scan against the martingale oracle") {
  const int M = 6;
  Rng rng(431);
  // Dyadic powers: lacunary max is the martingale maximal function.
  LacunarySequence dyadic{2.0, {}};
  for (int k = 0; k <= M; ++k)
    dyadic.terms.push_back(double(std::uint64_t{1} << k));

  CellSet e = testing::random_cell_set(M, rng, 0.3);
  if (e.empty()) e.set(0);
  const Signal ind = Signal::indicator(M, e);
  std::vector<std::pair<std::string, Signal>> family;
  family.emplace_back("1_E", ind);
  const std::vector<double> grid = {1.25, 1.5, 2.0};
  const LacunaryScan scan = lacunary_norm_scan(dyadic, grid, family);

  Signal mart = Signal::zero(M);
  for (int k = 0; k <= M; ++k) {
    const Signal avg = testing::block_average(ind, k);
    for (std::uint64_t c = 0; c < mart.cell_count(); ++c)
      mart.values[c] = std::max(mart.values[c], std::abs(avg.values[c]));
  }
  for (const auto& row : scan.rows) {
    const double oracle =
        weak_lp_norm(mart, row.p) / std::pow(e.measure(), 1.0 / row.p);
    CHECK(row.ratio == Catch::Approx(oracle).epsilon(1e-12));
  }

  // Envelope law has nonnegative slack everywhere by construction.
  for (const auto& s : scan.summaries) CHECK(s.slack >= -1e-12);
  CHECK(std::isfinite(scan.envelope_b));
}

TEST_CASE("lacunary maximum over a subsequence is dominated") {
  Rng rng(433);
  const int M = 6;
  const Signal f = testing::random_signal(M, rng, 2.0);
  const std::vector<std::uint64_t> full = {1, 2, 4, 9, 19, 40};
  const std::vector<std::uint64_t> sub = {2, 9, 40};
  const Signal big = lacunary_max(f, full);
  const Signal small = lacunary_max(f, sub);
  for (std::uint64_t c = 0; c < f.cell_count(); ++c)
    CHECK(small.values[c] <= big.values[c] + 1e-12);
}
