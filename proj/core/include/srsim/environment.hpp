#pragma once

#include <vector>

#include "srsim/rng.hpp"
#include "srsim/types.hpp"

namespace srsim {

struct ScheduleSegment {
  double t_start = 0.0;
  double value = 0.0;
};

// Piecewise-constant, left-closed schedule; the last segment extends to
// infinity. Used for both harshness (>= 0) and nutrition ((0, 1]).
struct PiecewiseSchedule {
  std::vector<ScheduleSegment> segments;

  double at(double t) const;
  void validate(const char* name, double min_value, double max_value, bool min_exclusive) const;
};

// Moving environmental optimum for the tracking-race mode.
struct DriftSpec {
  double start = 0.0;      // x* at t = 0
  double rate = 0.0;       // units/year
  double diffusion = 0.0;  // units per sqrt(year), >= 0
};

struct Environment {
  PiecewiseSchedule harshness;  // values >= 0; 0 is maximally comfortable
  PiecewiseSchedule nutrition;  // values in (0, 1]; 1 is fully fed
  DriftSpec drift;
  double sensing_lag = 0.25;  // years; males sense conditions this far back

  void validate() const;
};

struct EnvironmentState {
  double time = 0.0;
  double harshness = 0.0;
  double nutrition = 1.0;
  double optimum = 0.0;  // current x*
};

// Conversion of sexual deprivation into perceived harshness.
struct AbstinenceParams {
  double grace_years = 0.5;   // a_0: deprivation below this has no effect
  double beta = 0.0;          // harshness added per year of deprivation past the grace
  double recovery_tau = 0.25; // years; relaxation scale of the sensed level once
                              // pairing opportunities resume

  void validate() const;
};

double harshness_at(const PiecewiseSchedule& schedule, double t);

// Harshness a male's body senses at time t: the ambient level a sensing lag
// ago plus the abstinence surcharge. Clamped below at 0.
double perceived_harshness(const Individual& male, const Environment& env, double t,
                           double abstinence_years, const AbstinenceParams& abst);

// Advances the optimum one step: x* += rate*dt + diffusion*sqrt(dt)*xi.
void step_drift(EnvironmentState& state, const DriftSpec& spec, double dt, RngStream& rng);

}  // namespace srsim
