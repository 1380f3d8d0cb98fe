#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmenum/gf2.hpp"
#include "rmenum/rng.hpp"

namespace rmenum {

class NotACodewordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest m accepted by RmCode; the cached generator of RM(12, 6) is already
// 2510 x 4096 bits.
inline constexpr int kMaxRmOrder = 12;

/// C(m, 0) + ... + C(m, r); zero for r < 0.
std::size_t rm_dimension(int m, int r);

/// Recursive generator G_{m,r}: the all-ones row for r = 0, the identity for
/// r = m, and [[G_{m-1,r}, G_{m-1,r}], [0, G_{m-1,r-1}]] otherwise. Column p
/// is the evaluation point whose m-bit binary expansion is p.
GF2Matrix generator_matrix(int m, int r);

/// Information set: the columns whose labels have weight <= r, in ascending
/// order, together with the square generator submatrix on them and its inverse.
struct InfoSet {
  std::vector<std::size_t> columns;
  GF2Matrix submatrix;
  GF2Matrix inverse;
};

/// RM(m, r) with its generator, parity-check (dual generator) and
/// information set. Immutable and cheap to copy.
class RmCode {
 public:
  RmCode(int m, int r);

  int m() const { return m_; }
  int r() const { return r_; }
  std::size_t n() const { return std::size_t{1} << m_; }
  std::size_t k() const { return k_; }
  std::size_t min_distance() const { return std::size_t{1} << (m_ - r_); }

  const GF2Matrix& generator() const { return data_->generator; }
  // Generator of RM(m, m-r-1); zero rows when r == m.
  const GF2Matrix& dual_generator() const { return data_->dual; }
  const InfoSet& info_set() const { return data_->info; }

 private:
  struct Data {
    GF2Matrix generator;
    GF2Matrix dual;
    InfoSet info;
  };
  int m_;
  int r_;
  std::size_t k_;
  std::shared_ptr<const Data> data_;
};

BitVec encode(const RmCode& code, const BitVec& message);

/// Parity check against the dual generator; every vector is in RM(m, m).
bool contains(const RmCode& code, const BitVec& x);

/// Characteristic vector of a uniformly random (m-r)-flat of F_2^m, i.e. a
/// uniformly random minimum-weight codeword.
BitVec sample_min_weight(const RmCode& code, RngStream& rng);

/// Inverse of encode on the code; throws NotACodewordError otherwise.
BitVec recover_message(const RmCode& code, const BitVec& codeword);

namespace detail {

// Draws a uniform dim-flat {xA + b} of F_2^m and writes the lex indices of
// its 2^dim points to out (out.size() == 2^dim).
void draw_flat(int m, int dim, RngStream& rng, std::span<std::uint32_t> out);

}  // namespace detail

}  // namespace rmenum
