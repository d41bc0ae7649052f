#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srsim/environment.hpp"
#include "srsim/hazard.hpp"
#include "srsim/quality.hpp"
#include "srsim/reproduction.hpp"
#include "srsim/types.hpp"

namespace srsim {

struct DraftParams {
  double q_threshold = 0.62;  // quality floor the commission accepts
  double fraction = 0.5;      // cap as a share of the eligible pool
  double availability = 0.05; // share of normal conception exposure while away

  void validate() const;
};

// Recurring absence cycle for a male subgroup (group 1): each man is away for
// away_years, home for home_years, offset by his personal phase.
struct MountainParams {
  double group_fraction = 0.0;  // share of the population assigned to group 1
  double away_years = 1.5;
  double home_years = 0.2;

  void validate() const;
  double cycle_length() const { return away_years + home_years; }
};

struct PopulationParams {
  std::uint64_t initial_size = 20000;
  double carrying_capacity = 20000.0;
  // Power-of-two steps keep accumulated time exact, so gestation and age-band
  // edges land on grid points instead of a rounding hair away from them.
  double dt = 0.0625;
  double horizon = 40.0;
  double record_interval = 1.0;

  void validate() const;
};

struct SimConfig {
  HazardParams hazard;
  QualityModelConfig quality;
  NatalQualityConfig natal;
  PreconceptionParams preconception;
  MaternalFilterParams maternal;
  PairingParams pairing;
  AbstinenceParams abstinence;
  DraftParams draft;
  MountainParams mountain;
  PopulationParams population;
  Environment environment;

  SimConfig();  // fills calibrated defaults, including default schedules
  void validate() const;
};

// Clonal comparison population: one genotype scalar per individual, hazard
// scaled by distance from the moving optimum, copy-with-mutation births.
struct AsexualConfig {
  double mutation_scale = 0.05;   // sd of the offspring genotype perturbation
  double fitness_exponent = 2.0;  // hazard multiplier (1 + |x - x*|)^exponent
  double birth_rate = 0.0;        // births per individual-year inside the fertile window
                                  // (0 means: derive from the sexual pairing rate)
  void validate() const;
};

// Flat numeric view of SimConfig for sweeps and calibration. Paths are
// dot-separated struct.field names; schedules are reachable through the
// *_level paths, which collapse them to a single constant segment on set.
struct ParamAccess {
  const char* path;
  double (*get)(const SimConfig&);
  void (*set)(SimConfig&, double);
};

const std::vector<ParamAccess>& param_registry();
bool has_param(const std::string& path);
double get_param(const SimConfig& cfg, const std::string& path);
void set_param(SimConfig& cfg, const std::string& path, double value);
std::vector<std::string> param_names();

}  // namespace srsim
