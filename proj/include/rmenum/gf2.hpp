#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rmenum/rng.hpp"

namespace rmenum {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-length vector over GF(2), packed 64 bits per word. Bit i lives in
/// word i / 64 at position i % 64; storage past size() is always zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

  static BitVec ones(std::size_t len);
  /// Parses a string of '0'/'1', character i becoming bit i.
  static BitVec from_string(std::string_view bits);
  /// Parses hex, most-significant nibble first, with bit 0 the least
  /// significant bit of the last digit. Rejects set bits at or beyond len.
  static BitVec from_hex(std::string_view hex, std::size_t len);
  static BitVec from_support(std::size_t len, std::span<const std::size_t> positions);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const;
  bool none() const;
  std::vector<std::size_t> support() const;

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  std::span<const std::uint64_t> words() const { return words_; }
  // Callers writing through this span own the zero-tail invariant.
  std::span<std::uint64_t> mutable_words() { return words_; }

  std::string to_string() const;
  std::string to_hex() const;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

std::size_t hamming_weight(const BitVec& v);
BitVec xor_add(const BitVec& a, const BitVec& b);

/// Position of evaluation point z in lexicographic order, z[0] being the most
/// significant coordinate.
std::size_t lex_index(const BitVec& z);

/// Dense row-major GF(2) matrix with bit-packed rows.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_, 0) {}

  static GF2Matrix identity(std::size_t n);
  static GF2Matrix from_rows(std::span<const BitVec> rows, std::size_t cols);
  static GF2Matrix from_strings(std::initializer_list<std::string_view> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    auto& w = data_[r * stride_ + (c >> 6)];
    if (value)
      w |= bit;
    else
      w &= ~bit;
  }

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> mutable_row_words(std::size_t r) {
    return {data_.data() + r * stride_, stride_};
  }
  BitVec row(std::size_t r) const;

  void swap_rows(std::size_t a, std::size_t b);
  /// row[dst] += row[src]
  void add_row(std::size_t dst, std::size_t src);

  GF2Matrix transpose() const;
  GF2Matrix select_columns(std::span<const std::size_t> columns) const;

  /// Row vector times matrix: u has rows() bits, result has cols() bits.
  BitVec left_multiply(const BitVec& u) const;
  /// Matrix times column vector: x has cols() bits, result has rows() bits.
  BitVec right_multiply(const BitVec& x) const;

  friend GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b);
  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

std::size_t rank(GF2Matrix m);

// Throws SingularMatrixError unless m is square with full rank.
GF2Matrix invert(const GF2Matrix& m);

/// Uniform draw from the full-rank rows x cols matrices, by resampling
/// uniform matrices until one has rank == rows. Requires rows <= cols.
GF2Matrix sample_full_rank(std::size_t rows, std::size_t cols, RngStream& rng);

namespace detail {

// Same distribution as sample_full_rank for cols <= 64, with each row
// returned as a bit mask (bit j = column j). out.size() is the row count.
void sample_full_rank_masks(std::span<std::uint64_t> out, unsigned cols, RngStream& rng);

// Rank of a set of row masks; clobbers the input.
std::size_t mask_rank(std::span<std::uint64_t> rows);

}  // namespace detail

}  // namespace rmenum
