#pragma once

// Step functions on the torus [0,1) at dyadic resolution 2^-M, their
// Walsh spectra, and cellwise frequency assignments N(x).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "walsh/dyadic.hpp"

namespace walsh {

/// Real step function: values[i] is the constant on [i*2^-M, (i+1)*2^-M).
struct Signal {
  int resolution = 0;
  std::vector<double> values;

  Signal() = default;
  Signal(int M, std::vector<double> v) : resolution(M), values(std::move(v)) {
    if (values.size() != (std::size_t{1} << M))
      throw std::invalid_argument("Signal: value count != 2^M");
  }

  static Signal zero(int M) {
    return Signal(M, std::vector<double>(std::size_t{1} << M, 0.0));
  }
  static Signal constant(int M, double c) {
    return Signal(M, std::vector<double>(std::size_t{1} << M, c));
  }
  static Signal indicator(int M, const CellSet& E) {
    Signal f = zero(M);
    for (std::uint64_t c = 0; c < E.cell_total(); ++c)
      if (E.test(c)) f.values[c] = 1.0;
    return f;
  }

  std::uint64_t cell_count() const noexcept { return values.size(); }
  double cell_measure() const noexcept { return std::ldexp(1.0, -resolution); }

  double integral() const noexcept {
    double s = 0.0;
    for (double v : values) s += v;
    return s * cell_measure();
  }

  Signal& operator+=(const Signal& g) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += g.values[i];
    return *this;
  }
  Signal& operator-=(const Signal& g) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= g.values[i];
    return *this;
  }
  Signal& operator*=(double a) {
    for (double& v : values) v *= a;
    return *this;
  }
};

inline Signal operator+(Signal f, const Signal& g) { return f += g; }
inline Signal operator-(Signal f, const Signal& g) { return f -= g; }
inline Signal operator*(double a, Signal f) { return f *= a; }

/// L2 pairing <f,g> = 2^-M sum f_i g_i.
inline double inner(const Signal& f, const Signal& g) {
  if (f.resolution != g.resolution)
    throw std::invalid_argument("inner: resolution mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += f.values[i] * g.values[i];
  return s * f.cell_measure();
}

inline double lp_norm(const Signal& f, double p) {
  if (!(p > 0)) throw std::invalid_argument("lp_norm: p must be positive");
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.cell_measure(), 1.0 / p);
}

inline double l1_norm(const Signal& f) {
  double s = 0.0;
  for (double v : f.values) s += std::abs(v);
  return s * f.cell_measure();
}

inline double l2_norm(const Signal& f) { return std::sqrt(inner(f, f)); }

inline double sup_norm(const Signal& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const Signal& f, const Signal& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    m = std::max(m, std::abs(f.values[i] - g.values[i]));
  return m;
}

/// Normalized local norm (|I|^-1 int_I |f|^p)^{1/p}.
inline double local_lp_norm(const Signal& f, const DyadicInterval& I,
                            double p) {
  const std::uint64_t first = I.first_cell(f.resolution);
  const std::uint64_t cells = I.cell_count(f.resolution);
  double s = 0.0;
  for (std::uint64_t c = first; c < first + cells; ++c)
    s += std::pow(std::abs(f.values[c]), p);
  return std::pow(s / double(cells), 1.0 / p);
}

/// Restriction f * 1_E.
inline Signal restrict_to(const Signal& f, const CellSet& E) {
  Signal out = f;
  for (std::uint64_t c = 0; c < out.cell_count(); ++c)
    if (!E.test(c)) out.values[c] = 0.0;
  return out;
}

/// Walsh spectrum: coefficients[n] = <f, W_n> in Paley order.
struct WalshSpectrum {
  int resolution = 0;
  std::vector<double> coefficients;

  WalshSpectrum() = default;
  WalshSpectrum(int M, std::vector<double> c)
      : resolution(M), coefficients(std::move(c)) {
    if (coefficients.size() != (std::size_t{1} << M))
      throw std::invalid_argument("WalshSpectrum: coefficient count != 2^M");
  }
};

/// Measurable frequency assignment N(x), cellwise constant.  Values may
/// reach 2^M inclusive: the Carleson supremum at resolution M runs over
/// 0 <= n <= 2^M, and its argmax is a valid choice function.
struct ChoiceFunction {
  int resolution = 0;
  std::vector<std::uint64_t> per_cell;

  ChoiceFunction() = default;
  ChoiceFunction(int M, std::vector<std::uint64_t> n)
      : resolution(M), per_cell(std::move(n)) {
    const std::uint64_t cap = std::uint64_t{1} << M;
    if (per_cell.size() != cap)
      throw std::invalid_argument("ChoiceFunction: value count != 2^M");
    for (std::uint64_t v : per_cell)
      if (v > cap)
        throw std::invalid_argument("ChoiceFunction: value above 2^M");
  }

  static ChoiceFunction constant(int M, std::uint64_t n) {
    return ChoiceFunction(M,
                          std::vector<std::uint64_t>(std::size_t{1} << M, n));
  }
};

}  // namespace walsh
