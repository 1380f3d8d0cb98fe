#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rmenum/gibbs.hpp"
#include "rmenum/rm_code.hpp"
#include "rmenum/rng.hpp"

namespace rmenum {

/// Parameters echoed into every estimate. delta is zero for fixed schedules.
struct EstimateParams {
  int m = 0;
  int r = 0;
  std::size_t omega = 0;
  std::size_t t = 0;
  std::uint64_t tau = 0;
  double delta = 0.0;
  double step = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const EstimateParams&, const EstimateParams&) = default;
};

/// Partition-function estimate kept in base-2 logs: Z-hat = 2^log2_z.
struct LogEstimate {
  double log2_z = 0.0;
  double rate = 0.0;  // log2_z / n
  std::size_t ell_used = 0;
  double beta_star = 0.0;
  bool converged = true;
  std::size_t dimension = 0;
  EstimateParams params;

  // Z-hat itself, only for codes small enough (k <= 53) that a double holds it.
  std::optional<double> linear() const;
};

/// Samples X_j = exp((beta_prev - beta_curr) * E(c_j)) and their mean Y.
struct RatioSample {
  std::vector<double> x;
  double mean = 0.0;
  double one_minus_mean = 0.0;  // 1 - Y without cancellation
};

struct RoundTrace {
  std::size_t round = 0;
  double beta = 0.0;
  double y = 0.0;
  double log2_z = 0.0;
  double rate = 0.0;
};

using TraceSink = std::function<void(const RoundTrace&)>;

struct SamplingOptions {
  double step = 0.0;  // cooling step; 0 selects 1/n
  unsigned threads = 1;
  // Start round i's chains from round i-1's endpoints instead of the zero
  // codeword. Faster to equilibrate, but samples are no longer independent
  // across rounds, so the product loses its exact unbiasedness.
  bool warm_start = false;
  TraceSink trace;
};

enum class StopRule {
  Rate,    // |rate_i - rate_{i-1}| <= delta
  Linear,  // |Z_i - Z_{i-1}| <= delta, evaluated in the log domain
};

struct AdaptiveOptions {
  SamplingOptions sampling;
  StopRule rule = StopRule::Linear;
  std::size_t window = 3;      // consecutive rounds the rule must hold
  std::size_t max_rounds = 0;  // 0 selects 16 n^3
};

/// t independent chains of tau steps at beta_prev, each started from the
/// zero codeword on its own split of rng.
RatioSample ratio_estimate(const RmCode& code, const EnergyFn& energy, double beta_prev,
                           double beta_curr, std::size_t t, std::uint64_t tau, RngStream& rng,
                           unsigned threads = 1);

/// Default beta* for a fixed schedule: n^2.
double default_beta_star(std::size_t n);

/// Fixed cooling schedule beta_i = i * step up to beta_star (a multiple of
/// step). log2_z = k + sum_i log2 Y_i.
LogEstimate estimate_fixed(const RmCode& code, std::size_t omega, double beta_star, std::size_t t,
                           std::uint64_t tau, RngStream& rng, const SamplingOptions& options = {});

/// Extends the schedule one step at a time until the stop rule holds for
/// `window` consecutive rounds, or max_rounds is hit (converged = false).
LogEstimate estimate_adaptive(const RmCode& code, std::size_t omega, std::size_t t,
                              std::uint64_t tau, double delta, RngStream& rng,
                              const AdaptiveOptions& options = {});

/// ceil(16 e^2 ell / eps^2): per-round sample count giving a (1 +- eps)
/// estimate with probability >= 3/4.
std::uint64_t sample_size_bound(double eps, std::uint64_t ell);

/// The run with the median log2_z (lower middle for an even count). All runs
/// must share parameters other than the seed.
LogEstimate median_boost(std::span<const LogEstimate> runs);

}  // namespace rmenum
