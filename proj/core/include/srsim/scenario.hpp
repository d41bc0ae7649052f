#pragma once

#include <string>
#include <vector>

#include "srsim/config.hpp"
#include "srsim/engine.hpp"

namespace srsim {

enum class ScenarioMode : std::uint8_t { human = 0, plant = 1, tracking = 2 };

const char* scenario_mode_name(ScenarioMode mode);
ScenarioMode scenario_mode_from_name(const std::string& name);

// Calibration target: the birth-cohort SR over a window of the given width
// centered at t, weighted in the fit objective. group restricts the cohort to
// births whose father carried that group tag (-1 = everyone), so a fit can
// aim at a subpopulation while the rest of the run floats free. Widen the
// window when the targeted cohort is thin; a year of a small subgroup's
// births is too noisy to steer an optimizer.
struct TargetPoint {
  double t = 0.0;
  double sr = 100.0;
  double weight = 1.0;
  int group = -1;
  double width = 1.0;
};

struct Scenario {
  std::string name;
  ScenarioMode mode = ScenarioMode::human;
  SimConfig config;
  AsexualConfig asexual;  // used by tracking mode
  std::vector<TimedEvent> events;
  std::vector<TargetPoint> targets;

  void validate() const;
};

// Parses the documented YAML schema. Starts from built-in defaults (or from
// the scenario named under `base:`), applies the overrides present, rejects
// unknown keys, and validates. Parse errors carry line/column.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

// Full echo of a scenario with every key present; load(serialize(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

Scenario builtin_scenario(const std::string& name);
const std::vector<std::string>& builtin_scenario_names();

// Runs the scenario's config and events under its mode.
Trajectory run_scenario(const Scenario& scenario, std::uint64_t seed,
                        const RunOptions& options = {});

}  // namespace srsim
