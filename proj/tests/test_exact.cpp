#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "rmenum/exact.hpp"

namespace rmenum {
namespace {

WeightDistribution from_counts(std::map<std::size_t, std::uint64_t> counts, std::size_t n) {
  WeightDistribution wd(n);
  for (auto [w, c] : counts) wd[w] = c;
  return wd;
}

WeightDistribution enumerated(int m, int r) {
  const std::size_t n = std::size_t{1} << m;
  const auto h = oracle::weight_histogram(oracle::all_codewords(m, r), n);
  WeightDistribution wd(n);
  for (std::size_t w = 0; w <= n; ++w) wd[w] = h[w];
  return wd;
}

// Direct MacWilliams sum through the Krawtchouk polynomials.
WeightDistribution macwilliams_direct(const WeightDistribution& wd, std::size_t k) {
  const std::size_t n = wd.n();
  WeightDistribution out(n);
  for (std::size_t w = 0; w <= n; ++w) {
    BigInt s = 0;
    for (std::size_t v = 0; v <= n; ++v) s += wd[v] * krawtchouk(w, v, n);
    out[w] = s >> k;
  }
  return out;
}

TEST(BruteForce, RepetitionCode) {
  for (int m = 1; m <= 6; ++m) {
    const std::size_t n = std::size_t{1} << m;
    EXPECT_EQ(brute_force_distribution(RmCode(m, 0)), from_counts({{0, 1}, {n, 1}}, n));
  }
}

TEST(BruteForce, SmallCodes) {
  EXPECT_EQ(brute_force_distribution(RmCode(3, 1)), from_counts({{0, 1}, {4, 14}, {8, 1}}, 8));
  const WeightDistribution rm42 = brute_force_distribution(RmCode(4, 2));
  EXPECT_EQ(rm42.total(), 2048);
  EXPECT_EQ(rm42[0], 1);
  EXPECT_EQ(rm42[16], 1);
  EXPECT_EQ(rm42.support().at(1), 4u);
}

TEST(BruteForce, AgreesWithPolynomialEnumeration) {
  for (int m = 1; m <= 5; ++m)
    for (int r = 0; r <= m && rm_dimension(m, r) <= 20; ++r)
      EXPECT_EQ(brute_force_distribution(RmCode(m, r)), enumerated(m, r)) << "RM(" << m << "," << r << ")";
}

TEST(BruteForce, ThreadsAgree) {
  const RmCode code(6, 2);
  BruteForceOptions one, four;
  four.threads = 4;
  EXPECT_EQ(brute_force_distribution(code, one), brute_force_distribution(code, four));
}

TEST(BruteForce, RespectsCap) {
  BruteForceOptions opts;
  opts.k_max = 10;
  EXPECT_THROW(brute_force_distribution(RmCode(4, 2), opts), ResourceCapExceeded);
}

TEST(Krawtchouk, SmallValues) {
  EXPECT_EQ(krawtchouk(0, 3, 8), 1);
  EXPECT_EQ(krawtchouk(1, 3, 8), 2);  // n - 2v
  EXPECT_EQ(krawtchouk(8, 3, 8), -1);
  EXPECT_EQ(krawtchouk(2, 0, 8), 28);
}

TEST(MacWilliams, FullSpaceDualIsZeroCode) {
  for (std::size_t m : {1u, 3u, 5u}) {
    const std::size_t n = std::size_t{1} << m;
    EXPECT_EQ(macwilliams_transform(full_space_distribution(n), n), from_counts({{0, 1}}, n));
  }
}

TEST(MacWilliams, AgreesWithDirectSum) {
  for (auto [m, r] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 1}, {5, 2}, {5, 3}}) {
    const RmCode code(m, r);
    const WeightDistribution wd = brute_force_distribution(code);
    EXPECT_EQ(macwilliams_transform(wd, code.k()), macwilliams_direct(wd, code.k()));
  }
}

TEST(MacWilliams, SelfDualFixedPoints) {
  for (auto [m, r] : {std::pair{3, 1}, {5, 2}}) {
    const WeightDistribution wd = brute_force_distribution(RmCode(m, r));
    EXPECT_EQ(macwilliams_transform(wd, rm_dimension(m, r)), wd);
    for (std::size_t w = 0; w <= wd.n(); ++w)
      if (w % 4) EXPECT_EQ(wd[w], 0) << w;
  }
}

TEST(MacWilliams, InvolutionAndDuals) {
  for (int m = 2; m <= 5; ++m)
    for (int r = 0; r < m; ++r) {
      const RmCode code(m, r), dual(m, m - r - 1);
      if (code.k() > 26 || dual.k() > 26) continue;
      const WeightDistribution wd = brute_force_distribution(code);
      const WeightDistribution t = macwilliams_transform(wd, code.k());
      EXPECT_EQ(t, brute_force_distribution(dual)) << "RM(" << m << "," << r << ")";
      EXPECT_EQ(macwilliams_transform(t, dual.k()), wd);
    }
}

TEST(MacWilliams, RejectsInconsistentInput) {
  WeightDistribution wd = brute_force_distribution(RmCode(3, 1));
  EXPECT_THROW(macwilliams_transform(wd, 5), std::domain_error);
  wd[4] -= 1;
  wd[2] += 1;
  EXPECT_THROW(macwilliams_transform(wd, 4), std::domain_error);
}

TEST(PlotkinSquare, Examples) {
  const std::vector<WeightDistribution> zero{from_counts({{0, 1}}, 1)};
  EXPECT_EQ(plotkin_square(zero), from_counts({{0, 1}}, 2));

  const std::vector<WeightDistribution> rm11{from_counts({{0, 1}, {1, 2}, {2, 1}}, 2)};
  // All pairs (u, u + v) with u, v in F_2^2 cover F_2^4.
  EXPECT_EQ(plotkin_square(rm11), from_counts({{0, 1}, {1, 4}, {2, 6}, {3, 4}, {4, 1}}, 4));

  const std::vector<WeightDistribution> mixed{WeightDistribution(2), WeightDistribution(3)};
  EXPECT_THROW(plotkin_square(mixed), std::invalid_argument);
}

// Coset distributions of RM(m, inner) in RM(m, outer) by brute force over
// polynomial coefficients, as a sorted list.
std::vector<std::vector<std::uint64_t>> enumerated_cosets(int m, int outer, int inner) {
  const std::size_t n = std::size_t{1} << m;
  const auto inner_words = oracle::all_codewords(m, inner);
  std::map<oracle::Word, std::vector<std::uint64_t>> by_rep;
  for (oracle::Word w : oracle::all_codewords(m, outer)) {
    oracle::Word rep = w;
    for (oracle::Word c : inner_words) rep = std::min(rep, w ^ c);
    auto& h = by_rep[rep];
    h.resize(n + 1);
    ++h[oracle::weight(w)];
  }
  std::vector<std::vector<std::uint64_t>> out;
  for (auto& [rep, h] : by_rep) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint64_t>> sorted_counts(const std::vector<WeightDistribution>& wds) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& wd : wds) {
    std::vector<std::uint64_t> h;
    for (const auto& c : wd.counts()) h.push_back(c.convert_to<std::uint64_t>());
    out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(PlotkinSquare, CosetsOfRm31InRm32GiveRm42) {
  const CosetEnumerators cosets = enumerate_cosets(3, 2, 1, 1);
  EXPECT_EQ(cosets.outer_count, 8u);
  EXPECT_EQ(sorted_counts(cosets.cosets), enumerated_cosets(3, 2, 1));
  EXPECT_EQ(plotkin_square(cosets.cosets), brute_force_distribution(RmCode(4, 2)));
}

TEST(Monomials, CanonicalOrder) {
  EXPECT_EQ(monomials(2, 1), (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(monomials(3, 0), (std::vector<std::uint32_t>{0}));
  const auto m42 = monomials(4, 2);
  EXPECT_EQ(m42.size(), 6u);
  for (auto v : m42) EXPECT_EQ(std::popcount(v), 2);
  const auto m32 = monomials(3, 2), m31 = monomials(3, 1);
  std::vector<std::uint32_t> expect(m32);
  for (auto v : m31) expect.push_back(8 | v);
  EXPECT_EQ(m42, expect);
}

TEST(EnumerateCosets, SumsToCode) {
  const CosetEnumerators c = enumerate_cosets(4, 2, 1, 0);
  EXPECT_EQ(c.outer_count, 64u);
  EXPECT_EQ(c.inner_count, 16u);
  EXPECT_EQ(c.total(), brute_force_distribution(RmCode(4, 2)));
  EXPECT_EQ(c.at(0, 0), brute_force_distribution(RmCode(4, 0)));
}

TEST(CosetRecursionStep, LiftMatchesEnumeration) {
  const CosetEnumerators level = enumerate_cosets(3, 2, 1, 0);
  const CosetEnumerators lifted = coset_recursion_step(level);
  EXPECT_EQ(lifted.m, 4);
  EXPECT_EQ(lifted.outer_r, 2);
  EXPECT_EQ(lifted.middle_r, 1);
  EXPECT_EQ(lifted.total(), brute_force_distribution(RmCode(4, 2)));
  EXPECT_EQ(lifted.cosets.at(0), brute_force_distribution(RmCode(4, 1)));
  EXPECT_EQ(sorted_counts(lifted.cosets), enumerated_cosets(4, 2, 1));

  // Zero coset against the Plotkin square of the level's inner cosets.
  std::vector<WeightDistribution> inner;
  for (std::size_t j = 0; j < level.inner_count; ++j) inner.push_back(level.at(0, j));
  EXPECT_EQ(lifted.cosets.at(0), plotkin_square(inner));
}

TEST(CosetRecursionStep, SecondLevel) {
  const CosetEnumerators lifted = coset_recursion_step(enumerate_cosets(4, 2, 1, 0));
  EXPECT_EQ(sorted_counts(lifted.cosets), enumerated_cosets(5, 2, 1));
}

TEST(CosetRecursionDistribution, MatchesBruteForce) {
  for (auto [m, r] : {std::pair{4, 2}, {5, 2}, {5, 3}, {6, 2}, {4, 1}, {6, 1}})
    EXPECT_EQ(coset_recursion_distribution(m, r), brute_force_distribution(RmCode(m, r)))
        << "RM(" << m << "," << r << ")";
}

TEST(CosetRecursionDistribution, ClosedForms) {
  EXPECT_EQ(coset_recursion_distribution(4, 4), full_space_distribution(16));
  EXPECT_EQ(coset_recursion_distribution(5, 0), from_counts({{0, 1}, {32, 1}}, 32));
}

TEST(CosetRecursionDistribution, Rm63MatchesMacWilliams) {
  const WeightDistribution via_dual = macwilliams_transform(brute_force_distribution(RmCode(6, 2)), 22);
  EXPECT_EQ(coset_recursion_distribution(6, 3), via_dual);
  EXPECT_EQ(via_dual[32], BigInt("874731154374"));
}

TEST(CosetRecursionDistribution, BudgetExceeded) {
  RecursionBudget tiny;
  tiny.max_coset_bits = 4;
  EXPECT_THROW(coset_recursion_distribution(6, 3, tiny), ResourceCapExceeded);
}

TEST(WeightDistribution, InvariantsOnComputedCodes) {
  for (auto [m, r] : {std::pair{4, 2}, {5, 2}, {6, 2}}) {
    const RmCode code(m, r);
    const WeightDistribution wd = brute_force_distribution(code);
    EXPECT_EQ(wd.total(), BigInt(1) << code.k());
    for (std::size_t w = 0; w <= wd.n(); ++w) EXPECT_EQ(wd[w], wd[wd.n() - w]);
  }
}

TEST(WeightDistribution, JsonRoundTrip) {
  const WeightDistribution wd = macwilliams_transform(brute_force_distribution(RmCode(6, 2)), 22);
  const auto j = to_json(wd);
  EXPECT_EQ(j.at("n"), 64);
  EXPECT_EQ(j.at("k"), 42);
  EXPECT_TRUE(j.at("counts").at(32).is_string());
  EXPECT_EQ(weight_distribution_from_json(j), wd);
  EXPECT_THROW(weight_distribution_from_json(nlohmann::json::parse(R"({"counts": ["1", "-2"]})")),
               std::invalid_argument);
}

}  // namespace
}  // namespace rmenum
