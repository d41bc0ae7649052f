#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srsim/scenario.hpp"

namespace srsim {

// One fitted parameter, addressed by its dotted config path (see param_names()).
struct FreeParam {
  std::string path;
  double lower = 0.0;
  double upper = 1.0;
};

struct CalibrationSpec {
  std::vector<FreeParam> params;
  int budget = 300;      // max objective evaluations
  int replicates = 2;    // simulation replicates averaged per evaluation
  double tolerance = 1.5;  // per-target residual bound for the feasibility flag

  void validate() const;
};

struct CalibrationResult {
  std::vector<double> best;       // same order as spec.params
  double objective = 0.0;         // weighted mean squared residual at best
  std::vector<double> residuals;  // fitted minus target, per target point
  bool feasible = false;          // every |residual| <= tolerance
  int evaluations = 0;
  int failed_evaluations = 0;  // runs that died or produced no usable cohort
};

// Returns a copy of the scenario with the fitted values written in.
Scenario apply_parameters(const Scenario& scenario, const std::vector<FreeParam>& params,
                          const std::vector<double>& values);

// Replicate-mean birth-cohort SR at each target time (year-wide windows).
std::vector<double> fitted_series(const Scenario& scenario, int replicates, std::uint64_t seed);

// Bounded derivative-free fit of scenario.config against scenario.targets.
// Same (scenario, spec, seed) always returns the same result; replicate seeds
// are held fixed across evaluations so the objective is a smooth surface.
CalibrationResult calibrate(const Scenario& scenario, const CalibrationSpec& spec,
                            std::uint64_t seed);

}  // namespace srsim
