#ifndef MEANLAB_ANNEAL_HPP
#define MEANLAB_ANNEAL_HPP

#include <cmath>
#include <cstddef>
#include <utility>

#include "meanlab/rng.hpp"

namespace meanlab {

struct AnnealSchedule {
  std::size_t iterations = 1000;
  double initial_temperature = 1e-2;
  double final_temperature = 1e-6;
};

template <typename State>
struct AnnealResult {
  State best;
  double best_energy;
  std::size_t accepted = 0;
};

/// Minimizes `energy` by Metropolis acceptance under a geometric cooling
/// schedule. `propose(state, rng, temperature)` returns a candidate state;
/// candidates whose energy is not finite are rejected.
template <typename State, typename Energy, typename Propose>
AnnealResult<State> anneal(State start, Energy&& energy, Propose&& propose,
                           const AnnealSchedule& schedule, Rng& rng) {
  double current_energy = energy(start);
  AnnealResult<State> result{start, current_energy};
  State current = std::move(start);
  const double ratio = schedule.final_temperature / schedule.initial_temperature;
  for (std::size_t k = 0; k < schedule.iterations; ++k) {
    const double frac = schedule.iterations > 1
                            ? static_cast<double>(k) / static_cast<double>(schedule.iterations - 1)
                            : 1.0;
    const double temperature = schedule.initial_temperature * std::pow(ratio, frac);
    State candidate = propose(current, rng, temperature);
    const double e = energy(candidate);
    const double u = rng.uniform();
    if (!std::isfinite(e)) continue;
    const double delta = e - current_energy;
    if (delta <= 0.0 || std::exp(-delta / temperature) > u) {
      current = std::move(candidate);
      current_energy = e;
      ++result.accepted;
      if (e < result.best_energy) {
        result.best = current;
        result.best_energy = e;
      }
    }
  }
  return result;
}

}  // namespace meanlab

#endif  // MEANLAB_ANNEAL_HPP
