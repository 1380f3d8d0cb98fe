#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "rmenum/gf2.hpp"
#include "rmenum/rm_code.hpp"
#include "rmenum/rng.hpp"

namespace rmenum {

struct CandidateSet {
  int m = 0;
  int r = 0;
  std::vector<std::size_t> weights;  // ascending
};

/// 2^(ceil(m/r) - 1): every weight of RM(m, r) is a multiple of this.
std::size_t weight_divisor(int m, int r);

/// Multiples of weight_divisor(m, r) in [2.5 d, 2^(m-1)] (or [d, 2^(m-1)]
/// with full_range), optionally restricted to multiples of 4. Requires
/// 1 <= r <= m - 1.
CandidateSet candidate_weights(int m, int r, bool self_dual_filter, bool full_range = false);

struct Verdict {
  std::size_t omega = 0;
  bool found = false;  // false means no witness was found, not that A(omega) = 0
  std::optional<BitVec> witness;
  std::size_t trials_used = 0;
};

/// Annealed witness search: up to `trials` chains at beta_star from the zero
/// codeword, each stopping early once it sits on weight omega.
Verdict weight_check(const RmCode& code, std::size_t omega, double beta_star, std::uint64_t tau,
                     std::size_t trials, RngStream& rng);

struct SpectrumParams {
  double beta_star = 50.0;
  std::uint64_t tau = 1'000'000;
  std::size_t trials = 32;
  unsigned threads = 1;
};

struct SpectrumEntry {
  Verdict verdict;
  std::vector<std::size_t> message_support;  // 1-based, empty without a witness
};

struct SpectrumReport {
  int m = 0;
  int r = 0;
  std::vector<SpectrumEntry> entries;  // ascending omega

  /// Weights with a verified witness, closed under w -> n - w, plus 0 and n.
  std::vector<std::size_t> estimate() const;
  nlohmann::json to_json() const;
};

SpectrumReport estimate_spectrum(const RmCode& code, const CandidateSet& candidates,
                                 const SpectrumParams& params, RngStream& rng);

}  // namespace rmenum
