#pragma once

// Lacunary sequences, Zygmund's inequality for step functions (with
// exact closed-form oscillatory integrals), and weak-Lp scans of the
// lacunary Walsh-Carleson operator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "walsh/maximal.hpp"
#include "walsh/signal.hpp"
#include "walsh/transform.hpp"

namespace walsh {

/// Increasing terms with n_{j+1} >= theta * n_j.
struct LacunarySequence {
  double theta = 2.0;
  std::vector<double> terms;

  std::vector<std::uint64_t> integer_terms() const {
    std::vector<std::uint64_t> out;
    out.reserve(terms.size());
    for (double t : terms) out.push_back(static_cast<std::uint64_t>(t));
    return out;
  }
};

/// terms[0] = first (ceiled in integer mode), then the smallest
/// admissible value at least theta times the previous term.
inline LacunarySequence make_lacunary(double theta, double first, int count,
                                      bool integer_mode = true) {
  if (!(theta > 1.0) || !(first > 0.0) || count < 1)
    throw std::invalid_argument("make_lacunary: need theta>1, first>0, count>=1");
  LacunarySequence seq{theta, {}};
  double t = integer_mode ? std::ceil(first) : first;
  seq.terms.push_back(t);
  for (int j = 1; j < count; ++j) {
    t = integer_mode ? std::ceil(theta * t) : theta * t;
    seq.terms.push_back(t);
  }
  return seq;
}

/// Exact integral of e^{-i xi x} f(x) over [0,1) for a step function f.
inline std::complex<double> oscillatory_coefficient(const Signal& f,
                                                    double xi) {
  const std::complex<double> i(0.0, 1.0);
  const double h = f.cell_measure();
  std::complex<double> total = 0.0;
  for (std::uint64_t c = 0; c < f.cell_count(); ++c) {
    if (f.values[c] == 0.0) continue;
    const double a = double(c) * h;
    const double b = a + h;
    // int_a^b e^{-i xi x} dx = (e^{-i xi a} - e^{-i xi b}) / (i xi)
    total += f.values[c] *
             (std::exp(-i * xi * a) - std::exp(-i * xi * b)) / (i * xi);
  }
  return total;
}

/// LHS/(p' ||f||_p) for Zygmund's inequality
///   (sum_k |f^(xi_k)|^2)^{1/2} <= C p' ||f||_p.
/// Requires 1 < p <= 2 and xi_1 >= 4/theta.
inline double zygmund_ratio(const Signal& f, const LacunarySequence& xs,
                            double p) {
  if (!(p > 1.0 && p <= 2.0))
    throw std::invalid_argument("zygmund_ratio: p outside (1,2]");
  if (xs.terms.empty() || xs.terms.front() < 4.0 / xs.theta)
    throw std::invalid_argument("zygmund_ratio: need xi_1 >= 4/theta");
  double sum_sq = 0.0;
  for (double xi : xs.terms) sum_sq += std::norm(oscillatory_coefficient(f, xi));
  const double denom = (p / (p - 1.0)) * lp_norm(f, p);
  return denom > 0.0 ? std::sqrt(sum_sq) / denom : 0.0;
}

struct LacunaryScanRow {
  double p = 0.0;
  std::string family_id;
  double strong_norm = 0.0;  // ||f||_p
  double weak_norm = 0.0;    // || sup_j |W_{n_j} f| ||_{p,infty}
  double ratio = 0.0;
};

struct LacunaryScanSummary {
  double p = 0.0;
  double max_ratio = 0.0;
  double log_law = 0.0;      // log(e + 1/(p-1))
  double inverse_law = 0.0;  // 1/(p-1)
  double slack = 0.0;        // envelope_b * log_law - max_ratio (>= 0)
};

struct LacunaryScan {
  std::vector<LacunaryScanRow> rows;
  std::vector<LacunaryScanSummary> summaries;
  double envelope_b = 0.0;       // smallest b with max_p <= b log(e+1/(p-1))
  double lsq_log_coeff = 0.0;    // least-squares a in max_p ~ a log(e+1/(p-1))
  double lsq_inverse_coeff = 0.0;  // least-squares b in max_p ~ b/(p-1)
  bool monotone_toward_1 = true;   // flagged, not asserted
};

/// Weak-Lp norms of the lacunary maximal operator over a family, per-p
/// maxima, and fits against the two candidate growth laws.
inline LacunaryScan lacunary_norm_scan(
    const LacunarySequence& seq, std::span<const double> p_grid,
    std::span<const std::pair<std::string, Signal>> family) {
  LacunaryScan scan;
  std::vector<double> grid(p_grid.begin(), p_grid.end());
  std::sort(grid.begin(), grid.end());
  const auto freqs = seq.integer_terms();
  std::vector<Signal> maxima;
  maxima.reserve(family.size());
  for (const auto& [id, f] : family)
    maxima.push_back(lacunary_max(f, freqs));

  for (double p : grid) {
    LacunaryScanSummary summary;
    summary.p = p;
    summary.log_law = std::log(std::exp(1.0) + 1.0 / (p - 1.0));
    summary.inverse_law = 1.0 / (p - 1.0);
    for (std::size_t i = 0; i < family.size(); ++i) {
      LacunaryScanRow row;
      row.p = p;
      row.family_id = family[i].first;
      row.strong_norm = lp_norm(family[i].second, p);
      row.weak_norm = weak_lp_norm(maxima[i], p);
      row.ratio = row.strong_norm > 0.0 ? row.weak_norm / row.strong_norm : 0.0;
      summary.max_ratio = std::max(summary.max_ratio, row.ratio);
      scan.rows.push_back(std::move(row));
    }
    scan.summaries.push_back(summary);
  }

  for (std::size_t i = 0; i + 1 < scan.summaries.size(); ++i)
    if (scan.summaries[i].max_ratio + 1e-9 <
        scan.summaries[i + 1].max_ratio)
      scan.monotone_toward_1 = false;

  double num_log = 0.0, den_log = 0.0, num_inv = 0.0, den_inv = 0.0;
  for (auto& s : scan.summaries) {
    scan.envelope_b = std::max(scan.envelope_b, s.max_ratio / s.log_law);
    num_log += s.max_ratio * s.log_law;
    den_log += s.log_law * s.log_law;
    num_inv += s.max_ratio * s.inverse_law;
    den_inv += s.inverse_law * s.inverse_law;
  }
  scan.lsq_log_coeff = den_log > 0.0 ? num_log / den_log : 0.0;
  scan.lsq_inverse_coeff = den_inv > 0.0 ? num_inv / den_inv : 0.0;
  for (auto& s : scan.summaries)
    s.slack = scan.envelope_b * s.log_law - s.max_ratio;
  return scan;
}

}  // namespace walsh
