#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's encoder, sampler or enumerators.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "rmenum/gf2.hpp"
#include "rmenum/rm_code.hpp"

namespace rmenum::oracle {

// Codewords as bit masks over the n <= 64 evaluation points, point p having
// coordinates (bits of p), first coordinate most significant.
using Word = std::uint64_t;

inline Word monomial_eval(int m, std::uint32_t vars) {
  Word w = 0;
  for (std::uint32_t p = 0; p < (1u << m); ++p)
    if ((p & vars) == vars) w |= Word{1} << p;
  return w;
}

// Evaluation vectors of all monomials of degree <= r: a basis of RM(m, r).
inline std::vector<Word> monomial_basis(int m, int r) {
  std::vector<Word> basis;
  for (std::uint32_t vars = 0; vars < (1u << m); ++vars)
    if (std::popcount(vars) <= r) basis.push_back(monomial_eval(m, vars));
  return basis;
}

// Every codeword of RM(m, r), m <= 6, by enumerating polynomial coefficients.
inline std::vector<Word> all_codewords(int m, int r) {
  const auto basis = monomial_basis(m, r);
  std::vector<Word> words;
  words.reserve(std::size_t{1} << basis.size());
  for (std::uint64_t coeffs = 0; coeffs < (std::uint64_t{1} << basis.size()); ++coeffs) {
    Word w = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if ((coeffs >> i) & 1) w ^= basis[i];
    words.push_back(w);
  }
  return words;
}

inline Word to_word(const BitVec& v) {
  Word w = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.get(i)) w |= Word{1} << i;
  return w;
}

inline BitVec from_word(Word w, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((w >> i) & 1) v.set(i);
  return v;
}

inline std::size_t weight(Word w) { return static_cast<std::size_t>(std::popcount(w)); }

// Counts of each weight, as doubles-free integers.
inline std::vector<std::uint64_t> weight_histogram(const std::vector<Word>& words, std::size_t n) {
  std::vector<std::uint64_t> h(n + 1, 0);
  for (Word w : words) ++h[weight(w)];
  return h;
}

inline std::vector<Word> min_weight_codewords(int m, int r) {
  const std::size_t d = std::size_t{1} << (m - r);
  std::vector<Word> out;
  for (Word w : all_codewords(m, r))
    if (weight(w) == d) out.push_back(w);
  return out;
}

// Rank over GF(2) of a list of masks.
inline std::size_t rank_of(std::vector<Word> rows) {
  std::size_t rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const Word mask = Word{1} << bit;
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                              [&](Word w) { return w & mask; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

// Upper-tail p-value of Pearson's statistic against the given expectations.
inline double chi_square_p_value(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

inline double uniform_chi_square_p_value(const std::map<Word, std::uint64_t>& counts,
                                         std::size_t categories, std::uint64_t draws) {
  std::vector<double> obs, exp;
  for (const auto& [word, c] : counts) obs.push_back(static_cast<double>(c));
  obs.resize(categories, 0.0);
  exp.assign(categories, static_cast<double>(draws) / static_cast<double>(categories));
  return chi_square_p_value(obs, exp);
}

// Exact Z_beta = sum over codewords of exp(-beta |w(c) - omega|).
inline double partition_function(const std::vector<Word>& words, std::size_t omega, double beta) {
  double z = 0.0;
  for (Word w : words) {
    const double e = std::abs(static_cast<double>(weight(w)) - static_cast<double>(omega));
    z += std::exp(-beta * e);
  }
  return z;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace rmenum::oracle
