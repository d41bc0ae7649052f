#include "srsim/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace srsim {

double PiecewiseSchedule::at(double t) const {
  // first segment with t_start > t, then step back one
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](double v, const ScheduleSegment& s) { return v < s.t_start; });
  if (it == segments.begin()) return segments.front().value;
  return std::prev(it)->value;
}

void PiecewiseSchedule::validate(const char* name, double min_value, double max_value,
                                 bool min_exclusive) const {
  if (segments.empty())
    throw ConfigError(std::string(name) + ": schedule needs at least one segment");
  if (segments.front().t_start != 0.0)
    throw ConfigError(std::string(name) + ": first segment must start at t = 0");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0 && segments[i].t_start <= segments[i - 1].t_start)
      throw ConfigError(std::string(name) + ": segment starts must be strictly increasing");
    const double v = segments[i].value;
    if (!std::isfinite(v) || v > max_value || (min_exclusive ? v <= min_value : v < min_value))
      throw ConfigError(std::string(name) + ": segment value out of range");
  }
}

void Environment::validate() const {
  harshness.validate("harshness", 0.0, std::numeric_limits<double>::infinity(), false);
  nutrition.validate("nutrition", 0.0, 1.0, true);
  if (sensing_lag < 0) throw ConfigError("environment: sensing_lag must be >= 0");
  if (drift.diffusion < 0) throw ConfigError("environment: drift diffusion must be >= 0");
}

void AbstinenceParams::validate() const {
  if (grace_years < 0) throw ConfigError("abstinence: grace_years must be >= 0");
  if (beta < 0) throw ConfigError("abstinence: beta must be >= 0");
  if (recovery_tau <= 0) throw ConfigError("abstinence: recovery_tau must be > 0");
}

double harshness_at(const PiecewiseSchedule& schedule, double t) { return schedule.at(t); }

double perceived_harshness(const Individual& male, const Environment& env, double t,
                           double abstinence_years, const AbstinenceParams& abst) {
  if (male.sex != Sex::male) throw std::domain_error("perceived_harshness: not a male");
  if (male.state != LifeState::alive)
    throw std::domain_error("perceived_harshness: individual not alive");
  const double ambient = env.harshness.at(std::max(0.0, t - env.sensing_lag));
  const double surcharge = abst.beta * std::max(0.0, abstinence_years - abst.grace_years);
  return std::max(0.0, ambient + surcharge);
}

void step_drift(EnvironmentState& state, const DriftSpec& spec, double dt, RngStream& rng) {
  state.optimum += spec.rate * dt;
  if (spec.diffusion > 0.0) state.optimum += spec.diffusion * std::sqrt(dt) * rng.normal();
}

}  // namespace srsim
