#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "rmenum/gf2.hpp"
#include "rmenum/rng.hpp"

namespace rmenum {
namespace {

TEST(BitVec, WeightAndSupport) {
  const BitVec v = BitVec::from_string("1011");
  EXPECT_EQ(hamming_weight(v), 3u);
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(hamming_weight(BitVec(0)), 0u);
  EXPECT_EQ(hamming_weight(BitVec::ones(130)), 130u);
}

TEST(BitVec, XorAdd) {
  EXPECT_EQ(xor_add(BitVec::from_string("1100"), BitVec::from_string("1010")), BitVec::from_string("0110"));
  const BitVec x = BitVec::from_string("10110");
  EXPECT_TRUE(xor_add(x, x).none());
  EXPECT_THROW(xor_add(BitVec(3), BitVec(4)), std::invalid_argument);
}

TEST(BitVec, HexRoundTrip) {
  RngStream rng(11);
  for (std::size_t len : {1u, 4u, 7u, 64u, 65u, 200u, 1024u}) {
    BitVec v(len);
    for (std::size_t i = 0; i < len; ++i)
      if (rng.next_u64() & 1) v.set(i);
    EXPECT_EQ(BitVec::from_hex(v.to_hex(), len), v) << len;
  }
}

TEST(BitVec, HexBitOrder) {
  // Bit 0 is the least significant bit of the last digit.
  const BitVec v = BitVec::from_hex("1", 8);
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(BitVec::from_hex("80", 8).support(), (std::vector<std::size_t>{7}));
  EXPECT_EQ(BitVec::from_hex("0x10", 8).support(), (std::vector<std::size_t>{4}));
  EXPECT_THROW(BitVec::from_hex("100", 8), std::invalid_argument);
  EXPECT_THROW(BitVec::from_hex("zz", 8), std::invalid_argument);
}

TEST(BitVec, LexIndex) {
  EXPECT_EQ(lex_index(BitVec::from_string("000")), 0u);
  EXPECT_EQ(lex_index(BitVec::from_string("100")), 4u);
  EXPECT_EQ(lex_index(BitVec::from_string("011")), 3u);
  EXPECT_EQ(lex_index(BitVec::from_string("111")), 7u);
}

TEST(GF2Matrix, Rank) {
  EXPECT_EQ(rank(GF2Matrix::from_strings({"10", "01"})), 2u);
  EXPECT_EQ(rank(GF2Matrix::from_strings({"11", "11"})), 1u);
  EXPECT_EQ(rank(GF2Matrix(3, 5)), 0u);
  EXPECT_EQ(rank(GF2Matrix::identity(100)), 100u);
}

TEST(GF2Matrix, RankMatchesOracle) {
  RngStream rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(64);
    GF2Matrix m(rows, cols);
    std::vector<oracle::Word> masks(rows, 0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng.below(3) == 0) {
          m.set(r, c);
          masks[r] |= oracle::Word{1} << c;
        }
    EXPECT_EQ(rank(m), oracle::rank_of(masks));
  }
}

TEST(GF2Matrix, Invert) {
  const GF2Matrix a = GF2Matrix::from_strings({"110", "011", "001"});
  const GF2Matrix inv = invert(a);
  EXPECT_EQ(a * inv, GF2Matrix::identity(3));
  EXPECT_EQ(inv * a, GF2Matrix::identity(3));
  EXPECT_EQ(invert(GF2Matrix::identity(70)), GF2Matrix::identity(70));
  EXPECT_THROW(invert(GF2Matrix::from_strings({"11", "11"})), SingularMatrixError);
  EXPECT_THROW(invert(GF2Matrix(2, 3)), SingularMatrixError);
}

TEST(GF2Matrix, RandomInverses) {
  RngStream rng(9);
  for (std::size_t n : {1u, 5u, 63u, 64u, 65u, 130u}) {
    const GF2Matrix a = sample_full_rank(n, n, rng);
    EXPECT_EQ(a * invert(a), GF2Matrix::identity(n)) << n;
  }
}

TEST(GF2Matrix, MultiplyAgreesWithDefinition) {
  RngStream rng(3);
  const std::size_t rows = 7, cols = 90;
  GF2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng.next_u64() & 1) m.set(r, c);
  BitVec u(rows), x(cols);
  for (std::size_t r = 0; r < rows; ++r)
    if (rng.next_u64() & 1) u.set(r);
  for (std::size_t c = 0; c < cols; ++c)
    if (rng.next_u64() & 1) x.set(c);

  const BitVec um = m.left_multiply(u);
  for (std::size_t c = 0; c < cols; ++c) {
    bool bit = false;
    for (std::size_t r = 0; r < rows; ++r) bit ^= u.get(r) && m.get(r, c);
    EXPECT_EQ(um.get(c), bit);
  }
  const BitVec mx = m.right_multiply(x);
  for (std::size_t r = 0; r < rows; ++r) {
    bool bit = false;
    for (std::size_t c = 0; c < cols; ++c) bit ^= m.get(r, c) && x.get(c);
    EXPECT_EQ(mx.get(r), bit);
  }
  EXPECT_EQ(m.transpose().transpose(), m);
  EXPECT_EQ(m.transpose().right_multiply(u), um);
}

TEST(GF2Matrix, SelectColumns) {
  const GF2Matrix a = GF2Matrix::from_strings({"1010", "0111"});
  const std::vector<std::size_t> cols{3, 0};
  EXPECT_EQ(a.select_columns(cols), GF2Matrix::from_strings({"01", "10"}));
}

TEST(SampleFullRank, AlwaysFullRank) {
  RngStream rng(1);
  for (int i = 0; i < 500; ++i) {
    const std::size_t rows = 1 + rng.below(10);
    const std::size_t cols = rows + rng.below(60);
    EXPECT_EQ(rank(sample_full_rank(rows, cols, rng)), rows);
  }
  EXPECT_THROW(sample_full_rank(3, 2, rng), std::invalid_argument);
}

TEST(SampleFullRank, UniformOverInvertible2x2) {
  // |GL(2, 2)| = 6.
  RngStream rng(2024);
  std::map<oracle::Word, std::uint64_t> counts;
  const std::uint64_t draws = 60000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const GF2Matrix a = sample_full_rank(2, 2, rng);
    const oracle::Word key = a.get(0, 0) | a.get(0, 1) << 1 | a.get(1, 0) << 2 | a.get(1, 1) << 3;
    ++counts[key];
  }
  EXPECT_EQ(counts.size(), 6u);
  EXPECT_GT(oracle::uniform_chi_square_p_value(counts, 6, draws), 0.01);
}

TEST(SampleFullRank, MaskVariantUniformOver2x3) {
  // (2^3 - 1)(2^3 - 2) = 42 full-rank 2x3 matrices.
  RngStream rng(77);
  std::map<oracle::Word, std::uint64_t> counts;
  const std::uint64_t draws = 42000;
  std::uint64_t rows[2];
  for (std::uint64_t i = 0; i < draws; ++i) {
    detail::sample_full_rank_masks(rows, 3, rng);
    ++counts[rows[0] | rows[1] << 3];
  }
  EXPECT_EQ(counts.size(), 42u);
  EXPECT_GT(oracle::uniform_chi_square_p_value(counts, 42, draws), 0.01);
}

TEST(RngStream, SplitIsPureFunctionOfLabel) {
  RngStream a(42), b(42);
  a.next_u64();
  a.next_u64();
  RngStream ca = a.split({3, 1}), cb = b.split({3, 1});
  for (int i = 0; i < 10; ++i) EXPECT_EQ(ca.next_u64(), cb.next_u64());
  EXPECT_NE(b.split({1}).next_u64(), b.split({2}).next_u64());
  EXPECT_NE(RngStream(1).split({0}).next_u64(), RngStream(2).split({0}).next_u64());
}

TEST(RngStream, BelowIsInRangeAndCoversIt) {
  RngStream rng(8);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace rmenum
