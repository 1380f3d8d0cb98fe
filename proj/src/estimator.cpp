#include "rmenum/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rmenum/parallel.hpp"

namespace rmenum {
namespace {

struct Round {
  RatioSample ratio;
  std::vector<BitVec> endpoints;
};

// Runs t chains at the kernel's beta and turns their final energies into the
// ratio sample for a step of size step_gap.
Round run_round(const MetropolisKernel& kernel, double step_gap, std::size_t t, std::uint64_t tau,
                RngStream& rng, unsigned threads, const std::vector<BitVec>* starts) {
  Round round;
  round.endpoints.resize(t);
  std::vector<std::size_t> energies(t);
  detail::parallel_for(t, threads, [&](std::size_t j) {
    RngStream chain_rng = rng.split({j});
    BitVec c0 = starts ? (*starts)[j] : BitVec(kernel.code().n());
    ChainState state = ChainState::start(std::move(c0), kernel.beta());
    kernel.run(state, tau, chain_rng);
    energies[j] = kernel.energy()(state.current_weight);
    round.endpoints[j] = std::move(state.current);
  });
  auto& ratio = round.ratio;
  ratio.x.resize(t);
  double deficit = 0.0;
  for (std::size_t j = 0; j < t; ++j) {
    const double scaled = -step_gap * static_cast<double>(energies[j]);
    ratio.x[j] = std::exp(scaled);
    deficit += -std::expm1(scaled);
  }
  ratio.one_minus_mean = deficit / static_cast<double>(t);
  ratio.mean = std::accumulate(ratio.x.begin(), ratio.x.end(), 0.0) / static_cast<double>(t);
  return round;
}

double log2_of_mean(const RatioSample& s) { return std::log1p(-s.one_minus_mean) / std::numbers::ln2; }

double resolve_step(const RmCode& code, double step) {
  if (step == 0.0) return 1.0 / static_cast<double>(code.n());
  if (!(step > 0.0)) throw std::invalid_argument("cooling step must be positive");
  return step;
}

void check_sampling(std::size_t t) {
  if (t == 0) throw std::invalid_argument("estimator: t must be at least 1");
}

LogEstimate make_estimate(const RmCode& code, std::size_t omega, std::size_t t, std::uint64_t tau,
                          double delta, double step, const RngStream& rng) {
  LogEstimate e;
  e.log2_z = static_cast<double>(code.k());
  e.rate = e.log2_z / static_cast<double>(code.n());
  e.dimension = code.k();
  e.params = EstimateParams{code.m(), code.r(), omega, t, tau, delta, step, rng.seed()};
  return e;
}

}  // namespace

std::optional<double> LogEstimate::linear() const {
  if (dimension > 53) return std::nullopt;
  return std::exp2(log2_z);
}

RatioSample ratio_estimate(const RmCode& code, const EnergyFn& energy, double beta_prev,
                           double beta_curr, std::size_t t, std::uint64_t tau, RngStream& rng,
                           unsigned threads) {
  check_sampling(t);
  if (!(beta_curr > beta_prev)) throw std::invalid_argument("ratio_estimate: need beta_curr > beta_prev");
  MetropolisKernel kernel(code, energy, beta_prev);
  return run_round(kernel, beta_curr - beta_prev, t, tau, rng, threads, nullptr).ratio;
}

double default_beta_star(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n); }

LogEstimate estimate_fixed(const RmCode& code, std::size_t omega, double beta_star, std::size_t t,
                           std::uint64_t tau, RngStream& rng, const SamplingOptions& options) {
  check_sampling(t);
  if (omega > code.n()) throw std::invalid_argument("estimate_fixed: omega exceeds n");
  const double step = resolve_step(code, options.step);
  if (!(beta_star >= 0.0)) throw std::invalid_argument("estimate_fixed: beta* must be nonnegative");
  const double rounds = std::round(beta_star / step);
  if (std::abs(rounds * step - beta_star) > 1e-9 * std::max(1.0, beta_star))
    throw std::invalid_argument("estimate_fixed: beta* is not a multiple of the cooling step");
  const auto ell = static_cast<std::size_t>(rounds);

  LogEstimate est = make_estimate(code, omega, t, tau, 0.0, step, rng);
  const EnergyFn energy(omega);
  std::vector<BitVec> previous;
  for (std::size_t i = 1; i <= ell; ++i) {
    const double beta_prev = static_cast<double>(i - 1) * step;
    RngStream round_rng = rng.split({i});
    MetropolisKernel kernel(code, energy, beta_prev);
    Round round = run_round(kernel, step, t, tau, round_rng, options.threads,
                            options.warm_start && !previous.empty() ? &previous : nullptr);
    est.log2_z += log2_of_mean(round.ratio);
    est.rate = est.log2_z / static_cast<double>(code.n());
    if (options.trace)
      options.trace({i, static_cast<double>(i) * step, round.ratio.mean, est.log2_z, est.rate});
    if (options.warm_start) previous = std::move(round.endpoints);
  }
  est.ell_used = ell;
  est.beta_star = static_cast<double>(ell) * step;
  return est;
}

LogEstimate estimate_adaptive(const RmCode& code, std::size_t omega, std::size_t t,
                              std::uint64_t tau, double delta, RngStream& rng,
                              const AdaptiveOptions& options) {
  check_sampling(t);
  if (omega > code.n()) throw std::invalid_argument("estimate_adaptive: omega exceeds n");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("estimate_adaptive: delta must lie in (0, 1)");
  if (options.window == 0) throw std::invalid_argument("estimate_adaptive: window must be positive");
  const double step = resolve_step(code, options.sampling.step);
  const double n = static_cast<double>(code.n());
  const std::size_t max_rounds =
      options.max_rounds != 0 ? options.max_rounds : 16 * code.n() * code.n() * code.n();

  LogEstimate est = make_estimate(code, omega, t, tau, delta, step, rng);
  est.converged = false;
  const EnergyFn energy(omega);
  const double log2_delta = std::log2(delta);
  std::vector<BitVec> previous;
  std::size_t streak = 0;
  std::size_t i = 0;
  while (i < max_rounds) {
    ++i;
    const double beta_prev = static_cast<double>(i - 1) * step;
    RngStream round_rng = rng.split({i});
    MetropolisKernel kernel(code, energy, beta_prev);
    Round round = run_round(kernel, step, t, tau, round_rng, options.sampling.threads,
                            options.sampling.warm_start && !previous.empty() ? &previous : nullptr);
    const double log2_y = log2_of_mean(round.ratio);
    const double log2_prev = est.log2_z;
    est.log2_z += log2_y;
    est.rate = est.log2_z / n;
    if (options.sampling.trace)
      options.sampling.trace({i, static_cast<double>(i) * step, round.ratio.mean, est.log2_z, est.rate});
    if (options.sampling.warm_start) previous = std::move(round.endpoints);

    bool settled = false;
    if (options.rule == StopRule::Rate) {
      settled = std::abs(log2_y) / n <= delta;
    } else {
      // |curr - prev| = 2^log2_prev * (1 - Y)
      settled = round.ratio.one_minus_mean == 0.0 ||
                std::log2(round.ratio.one_minus_mean) + log2_prev <= log2_delta;
    }
    streak = settled ? streak + 1 : 0;
    if (streak >= options.window) {
      est.converged = true;
      break;
    }
  }
  est.ell_used = i;
  est.beta_star = static_cast<double>(i) * step;
  return est;
}

std::uint64_t sample_size_bound(double eps, std::uint64_t ell) {
  if (!(eps > 0.0)) throw std::invalid_argument("sample_size_bound: eps must be positive");
  const double e2 = std::numbers::e * std::numbers::e;
  const double value = 16.0 * e2 * static_cast<double>(ell) / (eps * eps);
  // Snap values that are integral up to rounding before taking the ceiling.
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, value))
    return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(value));
}

LogEstimate median_boost(std::span<const LogEstimate> runs) {
  if (runs.empty()) throw std::invalid_argument("median_boost: no runs");
  auto strip_seed = [](EstimateParams p) {
    p.seed = 0;
    return p;
  };
  const EstimateParams reference = strip_seed(runs.front().params);
  for (const auto& run : runs)
    if (strip_seed(run.params) != reference)
      throw std::invalid_argument("median_boost: runs disagree on parameters");
  std::vector<std::size_t> order(runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return runs[a].log2_z < runs[b].log2_z; });
  return runs[order[(runs.size() - 1) / 2]];
}

}  // namespace rmenum
