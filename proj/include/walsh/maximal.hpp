#pragma once

// Dyadic Hardy-Littlewood maximal functions, strong and weak Lp norms,
// and the exceptional-set construction E = {M_p f >= c}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/signal.hpp"

namespace walsh {

/// M_p f(x) = sup over dyadic I containing x of (|I|^-1 int_I |f|^p)^{1/p},
/// the cell of x and [0,1) included.  One bottom-up averaging sweep.
inline Signal dyadic_maximal(const Signal& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("dyadic_maximal: p < 1");
  const int M = f.resolution;
  const std::uint64_t cells = f.cell_count();

  std::vector<double> level(cells);  // block averages of |f|^p
  for (std::uint64_t c = 0; c < cells; ++c)
    level[c] = std::pow(std::abs(f.values[c]), p);

  std::vector<double> best = level;
  for (int b = 1; b <= M; ++b) {
    const std::uint64_t blocks = cells >> b;
    for (std::uint64_t k = 0; k < blocks; ++k)
      level[k] = 0.5 * (level[2 * k] + level[2 * k + 1]);
    for (std::uint64_t c = 0; c < cells; ++c)
      best[c] = std::max(best[c], level[c >> b]);
  }
  for (double& v : best) v = std::pow(v, 1.0 / p);
  return Signal(M, std::move(best));
}

struct WeakNorm {
  double value = 0.0;
  double attaining_lambda = 0.0;  // the level whose left limit attains the sup
};

/// sup_{l>0} l |{|g| > l}|^{1/p}, exact for step functions: the sup is
/// approached as l increases to an attained value v, where it equals
/// v |{|g| >= v}|^{1/p}.
inline WeakNorm weak_lp_norm_detail(const Signal& g, double p) {
  if (!(p > 0)) throw std::invalid_argument("weak_lp_norm: p <= 0");
  std::vector<double> v(g.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(g.values[i]);
  std::sort(v.begin(), v.end(), std::greater<>());
  const double cell = g.cell_measure();
  WeakNorm out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) break;
    const double cand = v[i] * std::pow(double(i + 1) * cell, 1.0 / p);
    if (cand > out.value) {
      out.value = cand;
      out.attaining_lambda = v[i];
    }
  }
  return out;
}

inline double weak_lp_norm(const Signal& g, double p) {
  return weak_lp_norm_detail(g, p).value;
}

struct NormReport {
  double p = 2.0;
  double strong_norm = 0.0;
  double weak_norm = 0.0;
  double attaining_lambda = 0.0;
};

inline NormReport norm_report(const Signal& g, double p) {
  const WeakNorm w = weak_lp_norm_detail(g, p);
  return {p, lp_norm(g, p), w.value, w.attaining_lambda};
}

struct ExceptionalSet {
  CellSet cells;      // E = {M_p f >= threshold}
  double threshold = 0.0;
};

/// Smallest attained value c of M_p f with |{M_p f >= c}| <= target.
/// When even the top level set is too big (constant f), returns E empty
/// with the top value as threshold.
inline ExceptionalSet exceptional_set(const Signal& f, double p,
                                      double target_measure = 0.25) {
  if (!(target_measure > 0.0 && target_measure < 1.0))
    throw std::invalid_argument("exceptional_set: target outside (0,1)");
  const Signal m = dyadic_maximal(f, p);
  std::vector<double> vals = m.values;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  const double cell = f.cell_measure();
  double chosen = vals.back();
  bool found = false;
  for (double c : vals) {
    std::uint64_t n = 0;
    for (double v : m.values) n += (v >= c);
    if (double(n) * cell <= target_measure) {
      chosen = c;
      found = true;
      break;
    }
  }

  ExceptionalSet out{CellSet(f.resolution), chosen};
  if (found)
    for (std::uint64_t c = 0; c < m.cell_count(); ++c)
      if (m.values[c] >= chosen) out.cells.set(c);
  return out;
}

}  // namespace walsh
