#include "rmenum/gibbs.hpp"

#include <cmath>

namespace rmenum {

std::size_t energy(std::size_t omega, const BitVec& x) { return EnergyFn(omega)(x); }

double acceptance_probability(double beta, long delta_energy) {
  if (delta_energy <= 0 || beta == 0.0) return 1.0;
  return std::exp(-beta * static_cast<double>(delta_energy));
}

MetropolisKernel::MetropolisKernel(const RmCode& code, EnergyFn energy, double beta)
    : code_(code),
      energy_(energy),
      beta_(beta),
      flat_dim_(code.m() - code.r()),
      lazy_(code.r() == 0 || code.r() == code.m()) {
  if (!(beta >= 0.0)) throw std::invalid_argument("MetropolisKernel: beta must be nonnegative");
  accept_.resize(code.n() + 1);
  for (std::size_t j = 0; j < accept_.size(); ++j)
    accept_[j] = acceptance_probability(beta, static_cast<long>(j));
}

bool MetropolisKernel::step(ChainState& state, RngStream& rng) const {
  if (lazy_ && (rng.next_u64() & 1)) {
    ++state.steps_taken;
    return false;
  }
  std::uint32_t pts[std::size_t{1} << kMaxRmOrder];
  const std::size_t size = std::size_t{1} << flat_dim_;
  detail::draw_flat(code_.m(), flat_dim_, rng, {pts, size});

  // Weight of current ^ flat from the overlap with the flat alone.
  const auto words = state.current.words();
  std::size_t overlap = 0;
  for (std::size_t i = 0; i < size; ++i) overlap += (words[pts[i] >> 6] >> (pts[i] & 63)) & 1U;
  const std::size_t proposed_weight = state.current_weight + size - 2 * overlap;

  const long delta = static_cast<long>(energy_(proposed_weight)) -
                     static_cast<long>(energy_(state.current_weight));
  ++state.steps_taken;
  if (delta > 0 && !(rng.uniform() < accept_[static_cast<std::size_t>(delta)])) return false;

  auto mut = state.current.mutable_words();
  for (std::size_t i = 0; i < size; ++i) mut[pts[i] >> 6] ^= std::uint64_t{1} << (pts[i] & 63);
  state.current_weight = proposed_weight;
  return true;
}

std::uint64_t MetropolisKernel::run(ChainState& state, std::uint64_t tau, RngStream& rng,
                                    bool stop_at_ground_state) const {
  std::uint64_t i = 0;
  for (; i < tau; ++i) {
    if (stop_at_ground_state && energy_(state.current_weight) == 0) break;
    step(state, rng);
  }
  return i;
}

ChainState metropolis_step(ChainState state, const RmCode& code, const EnergyFn& energy,
                           RngStream& rng) {
  MetropolisKernel(code, energy, state.beta).step(state, rng);
  return state;
}

BitVec sample(const RmCode& code, const BitVec& c0, double beta, const EnergyFn& energy,
              std::uint64_t tau, RngStream& rng) {
  if (!contains(code, c0)) throw NotACodewordError("sample: initial word is not a codeword");
  MetropolisKernel kernel(code, energy, beta);
  ChainState state = ChainState::start(c0, beta);
  kernel.run(state, tau, rng);
  return std::move(state.current);
}

}  // namespace rmenum
