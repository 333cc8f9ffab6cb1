#pragma once

// Flat-file formats: signals, spectra, choice functions, bitile
// collections with optional sign column, scenario files, and the CSV
// number formatting shared by every emitter.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/model_sum.hpp"
#include "walsh/signal.hpp"

namespace walsh {

/// Deterministic decimal rendering used in every CSV and data file.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace detail

// Signal file: first line M, then 2^M decimal values, one per line.
inline void write_signal(const Signal& f, const std::string& path) {
  auto out = detail::open_out(path);
  out << f.resolution << "\n";
  for (double v : f.values) out << format_double(v) << "\n";
}

inline Signal read_signal(const std::string& path) {
  auto in = detail::open_in(path);
  int M = -1;
  if (!(in >> M) || M < 0 || M > 20)
    throw std::runtime_error("bad signal header in " + path);
  std::vector<double> values(std::size_t{1} << M);
  for (double& v : values)
    if (!(in >> v)) throw std::runtime_error("truncated signal in " + path);
  return Signal(M, std::move(values));
}

// Spectrum file: "#spectrum" header line, then the signal shape.
inline void write_spectrum(const WalshSpectrum& s, const std::string& path) {
  auto out = detail::open_out(path);
  out << "#spectrum\n" << s.resolution << "\n";
  for (double v : s.coefficients) out << format_double(v) << "\n";
}

inline WalshSpectrum read_spectrum(const std::string& path) {
  auto in = detail::open_in(path);
  std::string header;
  std::getline(in, header);
  if (header != "#spectrum")
    throw std::runtime_error("missing #spectrum header in " + path);
  int M = -1;
  if (!(in >> M) || M < 0 || M > 20)
    throw std::runtime_error("bad spectrum header in " + path);
  std::vector<double> values(std::size_t{1} << M);
  for (double& v : values)
    if (!(in >> v)) throw std::runtime_error("truncated spectrum in " + path);
  return WalshSpectrum(M, std::move(values));
}

// Choice function: first line M, then 2^M integers.
inline void write_choice(const ChoiceFunction& N, const std::string& path) {
  auto out = detail::open_out(path);
  out << N.resolution << "\n";
  for (std::uint64_t v : N.per_cell) out << v << "\n";
}

inline ChoiceFunction read_choice(const std::string& path) {
  auto in = detail::open_in(path);
  int M = -1;
  if (!(in >> M) || M < 0 || M > 20)
    throw std::runtime_error("bad choice-function header in " + path);
  std::vector<std::uint64_t> values(std::size_t{1} << M);
  for (auto& v : values)
    if (!(in >> v)) throw std::runtime_error("truncated choice file " + path);
  return ChoiceFunction(M, std::move(values));
}

// Bitile collection: one bitile per line as "j k n", meaning
// I = [k 2^j, (k+1) 2^j) and w = [2n 2^-j, (2n+2) 2^-j).
inline void write_bitiles(const BitileCollection& S, const std::string& path) {
  auto out = detail::open_out(path);
  for (const Bitile& s : S.items())
    out << s.scale << " " << s.time_index << " " << s.freq_index << "\n";
}

inline BitileCollection read_bitiles(const std::string& path, int resolution) {
  auto in = detail::open_in(path);
  std::vector<Bitile> tiles;
  int j;
  std::uint64_t k, n;
  while (in >> j >> k >> n) tiles.push_back({j, k, n});
  return BitileCollection(resolution, std::move(tiles));
}

// Sign pattern: bitile line plus a trailing -1/0/+1 column.
inline void write_signs(const SignPattern& eps, const std::string& path) {
  auto out = detail::open_out(path);
  const auto& v = eps.domain().items();
  for (std::size_t i = 0; i < v.size(); ++i)
    out << v[i].scale << " " << v[i].time_index << " " << v[i].freq_index
        << " " << eps.signs()[i] << "\n";
}

inline SignPattern read_signs(const std::string& path, int resolution) {
  auto in = detail::open_in(path);
  std::vector<Bitile> tiles;
  std::vector<int> signs;
  int j, e;
  std::uint64_t k, n;
  while (in >> j >> k >> n >> e) {
    tiles.push_back({j, k, n});
    signs.push_back(e);
  }
  // Domain construction sorts canonically; reorder signs to match.
  std::vector<std::size_t> order(tiles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tiles[a] < tiles[b]; });
  std::vector<Bitile> sorted_tiles;
  std::vector<int> sorted_signs;
  for (std::size_t i : order) {
    sorted_tiles.push_back(tiles[i]);
    sorted_signs.push_back(signs[i]);
  }
  return SignPattern(BitileCollection(resolution, std::move(sorted_tiles)),
                     std::move(sorted_signs));
}

/// Scenario file: one "key value..." pair per line.
///   signal <path>     choice <path>     p <real>
///   seed <integer>    G <cell indices...>
struct Scenario {
  std::string signal_path;
  std::string choice_path;
  std::vector<std::uint64_t> g_cells;
  double p = 1.5;
  std::uint64_t seed = 1;
};

inline void write_scenario(const Scenario& sc, const std::string& path) {
  auto out = detail::open_out(path);
  out << "signal " << sc.signal_path << "\n";
  out << "choice " << sc.choice_path << "\n";
  out << "p " << format_double(sc.p) << "\n";
  out << "seed " << sc.seed << "\n";
  out << "G";
  for (auto c : sc.g_cells) out << " " << c;
  out << "\n";
}

inline Scenario read_scenario(const std::string& path) {
  auto in = detail::open_in(path);
  Scenario sc;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key.empty() || key[0] == '#') continue;
    if (key == "signal")
      ls >> sc.signal_path;
    else if (key == "choice")
      ls >> sc.choice_path;
    else if (key == "p")
      ls >> sc.p;
    else if (key == "seed")
      ls >> sc.seed;
    else if (key == "G") {
      std::uint64_t c;
      while (ls >> c) sc.g_cells.push_back(c);
    } else {
      throw std::runtime_error("scenario: unknown key '" + key + "'");
    }
  }
  return sc;
}

}  // namespace walsh
