#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "rmenum/rm_code.hpp"

namespace rmenum {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when an exact computation would exceed its configured budget.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact counts A(0..n) of a code or coset of length n.
class WeightDistribution {
 public:
  WeightDistribution() = default;
  explicit WeightDistribution(std::size_t n) : counts_(n + 1) {}
  explicit WeightDistribution(std::vector<BigInt> counts);

  std::size_t n() const { return counts_.empty() ? 0 : counts_.size() - 1; }
  const BigInt& operator[](std::size_t w) const { return counts_.at(w); }
  BigInt& operator[](std::size_t w) { return counts_.at(w); }
  const std::vector<BigInt>& counts() const { return counts_; }

  BigInt total() const;
  // Weights with nonzero count.
  std::vector<std::size_t> support() const;

  WeightDistribution& operator+=(const WeightDistribution& other);
  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;

 private:
  std::vector<BigInt> counts_;
};

/// {"n": n, "k": log2(total) when total is a power of two, "counts": [decimal strings]}
nlohmann::json to_json(const WeightDistribution& wd);
WeightDistribution weight_distribution_from_json(const nlohmann::json& j);

/// A(w) = C(n, w).
WeightDistribution full_space_distribution(std::size_t n);

struct BruteForceOptions {
  std::size_t k_max = 26;
  unsigned threads = 1;
};

/// Tallies all 2^k codewords in Gray-code order, one generator-row XOR per step.
WeightDistribution brute_force_distribution(const RmCode& code, const BruteForceOptions& options = {});

/// Binary Krawtchouk polynomial K_w(v; n) = sum_j (-1)^j C(v, j) C(n - v, w - j).
BigInt krawtchouk(std::size_t w, std::size_t v, std::size_t n);

/// Dual distribution 2^-k sum_v A(v) K_w(v; n). Throws std::domain_error when
/// the counts do not sum to 2^k or a division is inexact.
WeightDistribution macwilliams_transform(const WeightDistribution& wd, std::size_t k);

/// Weight distribution of {(u, u + v) : u in C, v in C0} from the coset
/// distributions of C0 in C: sum_i A_{C_i}(z)^2.
WeightDistribution plotkin_square(std::span<const WeightDistribution> cosets);

/// Canonical list of degree-d monomials in m variables, each a mask over lex
/// index bits (the monomial is 1 at point p iff (p & mask) == mask). Ordered
/// so that monomials(m + 1, d) = monomials(m, d) followed by
/// top | monomials(m, d - 1), where top = 1 << m is the new first coordinate.
std::vector<std::uint32_t> monomials(int m, int d);

/// Coset weight enumerators for C00 = RM(m, inner_r) in C = RM(m, outer_r)
/// with middle code C0 = RM(m, middle_r). Coset C_ij is keyed by the
/// coefficients of the degree (middle_r, outer_r] monomials (i) and of the
/// degree (inner_r, middle_r] monomials (j), bit b of each key standing for
/// the b-th monomial in canonical order. Keys add by XOR:
/// C_ij + C_kl = C_{i^k, j^l}.
struct CosetEnumerators {
  int m = 0;
  int outer_r = 0;
  int middle_r = 0;
  int inner_r = 0;
  std::size_t outer_count = 1;  // |C / C0|
  std::size_t inner_count = 1;  // |C0 / C00|
  std::vector<WeightDistribution> cosets;

  const WeightDistribution& at(std::size_t i, std::size_t j) const {
    return cosets.at(i * inner_count + j);
  }
  WeightDistribution total() const;
};

struct RecursionBudget {
  std::size_t k_max = 26;            // brute-force enumeration cap (log2 codewords)
  std::size_t max_coset_bits = 24;   // log2 of the coset count at any level
  std::size_t max_work_bits = 26;    // log2 of polynomial products in a lift
};

/// Brute-force coset enumerators for RM(m, inner_r) <= RM(m, middle_r) <= RM(m, outer_r).
CosetEnumerators enumerate_cosets(int m, int outer_r, int middle_r, int inner_r,
                                  const RecursionBudget& budget = {});

/// One lift: from the triple RM(m, r-2) <= RM(m, r-1) <= RM(m, r) to the
/// cosets of RM(m+1, r-1) in RM(m+1, r), with
/// A_{[u, u+v]} = sum_l A_{C_il} * A_{C_il + C_0j}. Output key (i, j) is stored
/// at i + j * outer_count, its inner_count is 1.
CosetEnumerators coset_recursion_step(const CosetEnumerators& level);

/// Exact W(RM(m, r)): brute-force triple at order m-2, one lift, then a
/// Plotkin square. Closed forms for r == 0 and r >= m.
WeightDistribution coset_recursion_distribution(int m, int r, const RecursionBudget& budget = {});

}  // namespace rmenum
