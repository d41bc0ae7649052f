#pragma once

#include "srsim/engine.hpp"

namespace srsim {

// Adaptedness of a genotype under the moving optimum: (1 + |x - x*|)^-exponent.
double fitness_at(double genotype, double optimum, double exponent);

// Per-individual clonal birth rate that reproduces the sexual arm's renewal
// at stationarity: half the pair conception rate (one birth per pair splits
// across two adults), discounted by the share of time a mother is carrying.
double derived_asexual_birth_rate(const SimConfig& cfg);

// Clonal population under the same mortality baseline (female rates), with
// hazard scaled by (1 + |x - x*|)^exponent instead of the quality/harshness
// terms. Offspring copy the parent genotype plus a mutation kick.
Trajectory run_asexual(const SimConfig& cfg, const AsexualConfig& asex, std::uint64_t seed,
                       const RunOptions& options = {});

struct RaceArm {
  std::uint64_t extinctions = 0;
  int replicates = 0;
  double p_ext = undefined_stat;
  double ci_lo = undefined_stat;
  double ci_hi = undefined_stat;
  double mean_final_alive = 0.0;
};

struct RaceResult {
  double drift = 0.0;
  RaceArm sexual;
  RaceArm asexual;
  // true when the sexual arm's extinction CI sits wholly below the asexual one
  bool sexual_advantage_significant = false;
};

// Paired comparison of the two reproductive modes chasing the same drifting
// optimum. Both arms share mortality, fertility windows, carrying capacity,
// time step and horizon through cfg; drift_rate overrides the config drift.
RaceResult tracking_race(const SimConfig& cfg, const AsexualConfig& asex, double drift_rate,
                         int replicates, std::uint64_t seed);

}  // namespace srsim
