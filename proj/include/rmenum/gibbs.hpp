#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmenum/gf2.hpp"
#include "rmenum/rm_code.hpp"
#include "rmenum/rng.hpp"

namespace rmenum {

/// E(x) = |w_H(x) - target|, zero exactly on the constant-weight subcode.
class EnergyFn {
 public:
  explicit EnergyFn(std::size_t target) : target_(target) {}

  std::size_t target() const { return target_; }
  std::size_t operator()(std::size_t weight) const {
    return weight > target_ ? weight - target_ : target_ - weight;
  }
  std::size_t operator()(const BitVec& x) const { return (*this)(x.weight()); }

 private:
  std::size_t target_;
};

std::size_t energy(std::size_t omega, const BitVec& x);

/// min(1, exp(-beta * delta_energy)).
double acceptance_probability(double beta, long delta_energy);

struct ChainState {
  BitVec current;
  std::size_t current_weight = 0;
  double beta = 0.0;
  std::uint64_t steps_taken = 0;

  static ChainState start(BitVec c0, double beta) {
    const std::size_t w = c0.weight();
    return ChainState{std::move(c0), w, beta, 0};
  }
};

/// Nearest-neighbour Metropolis kernel on the codewords of an RM code: the
/// proposal XORs a uniformly random minimum-weight codeword (an (m-r)-flat)
/// into the current word. Acceptance probabilities come from a table of
/// exp(-beta * j), j = 0..n, built once per beta.
///
/// For r = 0 and r = m every move flips the weight parity (the moves are the
/// all-ones word, or single points), so the walk is periodic at beta = 0.
/// Those kernels are made lazy: each step holds with probability 1/2 before
/// proposing. For 0 < r < m the plain kernel is aperiodic.
class MetropolisKernel {
 public:
  MetropolisKernel(const RmCode& code, EnergyFn energy, double beta);

  const RmCode& code() const { return code_; }
  const EnergyFn& energy() const { return energy_; }
  double beta() const { return beta_; }

  // One proposal/accept step on state (in place). Returns whether the proposal
  // was accepted. The state's beta is not consulted.
  bool step(ChainState& state, RngStream& rng) const;

  // Runs up to tau steps. With stop_at_ground_state the chain halts as soon as
  // the current energy is zero; returns the number of steps actually taken.
  std::uint64_t run(ChainState& state, std::uint64_t tau, RngStream& rng,
                    bool stop_at_ground_state = false) const;

 private:
  RmCode code_;
  EnergyFn energy_;
  double beta_;
  int flat_dim_;
  bool lazy_;
  std::vector<double> accept_;  // accept_[j] = exp(-beta * j)
};

ChainState metropolis_step(ChainState state, const RmCode& code, const EnergyFn& energy,
                           RngStream& rng);

/// Runs tau Metropolis steps at inverse temperature beta from c0 and returns
/// the final codeword. Throws NotACodewordError if c0 is not in the code.
BitVec sample(const RmCode& code, const BitVec& c0, double beta, const EnergyFn& energy,
              std::uint64_t tau, RngStream& rng);

}  // namespace rmenum
