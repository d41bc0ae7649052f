#include "srsim/config.hpp"

#include <algorithm>
#include <cmath>

namespace srsim {

void DraftParams::validate() const {
  if (q_threshold < 0.0) throw ConfigError("draft: q_threshold must be >= 0");
  if (fraction < 0.0 || fraction > 1.0) throw ConfigError("draft: fraction must lie in [0, 1]");
  if (availability < 0.0 || availability > 1.0)
    throw ConfigError("draft: availability must lie in [0, 1]");
}

void MountainParams::validate() const {
  if (group_fraction < 0.0 || group_fraction > 1.0)
    throw ConfigError("mountain: group_fraction must lie in [0, 1]");
  if (away_years < 0.0 || home_years < 0.0)
    throw ConfigError("mountain: away_years and home_years must be >= 0");
  if (group_fraction > 0.0 && cycle_length() <= 0.0)
    throw ConfigError("mountain: cycle length must be > 0 when a subgroup exists");
}

void PopulationParams::validate() const {
  if (initial_size < 2) throw ConfigError("population: initial_size must be >= 2");
  if (!(carrying_capacity > 0.0)) throw ConfigError("population: carrying_capacity must be > 0");
  if (!(dt > 0.0)) throw ConfigError("population: dt must be > 0");
  if (horizon < 0.0) throw ConfigError("population: horizon must be >= 0");
  if (record_interval < dt) throw ConfigError("population: record_interval must be >= dt");
}

void AsexualConfig::validate() const {
  if (mutation_scale < 0.0) throw ConfigError("asexual: mutation_scale must be >= 0");
  if (fitness_exponent < 0.0) throw ConfigError("asexual: fitness_exponent must be >= 0");
  if (birth_rate < 0.0) throw ConfigError("asexual: birth_rate must be >= 0");
}

SimConfig::SimConfig() {
  hazard.band_starts = {0.0, 1.0, 5.0, 15.0, 30.0, 50.0, 65.0, 80.0};
  hazard.female_rates = {0.009243, 0.000444, 0.000185, 0.000296,
                         0.000924, 0.002958, 0.012940, 0.048062};
  hazard.male_rates = {0.011544, 0.000554, 0.000254, 0.001400,
                       0.002305, 0.005167, 0.018577, 0.060028};
  hazard.fetal_male = 0.187841;
  hazard.fetal_female = 0.075321;
  environment.harshness.segments = {{0.0, 0.3}};
  environment.nutrition.segments = {{0.0, 1.0}};
}

void SimConfig::validate() const {
  hazard.validate();
  quality.validate();
  natal.validate();
  preconception.validate();
  maternal.validate();
  pairing.validate();
  abstinence.validate();
  draft.validate();
  mountain.validate();
  population.validate();
  environment.validate();
  if (pairing.male_window[0] < hazard.gestation ||
      pairing.female_window[0] < hazard.gestation)
    throw ConfigError("pairing: eligibility windows must start at or after gestation");
}

namespace {

double schedule_level_get(const PiecewiseSchedule& s) { return s.segments.front().value; }

void schedule_level_set(PiecewiseSchedule& s, double v) { s.segments = {{0.0, v}}; }

#define SRSIM_PARAM(PATH, FIELD)                                     \
  ParamAccess {                                                      \
    PATH, [](const SimConfig& c) -> double { return c.FIELD; },      \
        [](SimConfig& c, double v) { c.FIELD = v; }                  \
  }

const std::vector<ParamAccess> registry = {
    SRSIM_PARAM("hazard.fetal_male", hazard.fetal_male),
    SRSIM_PARAM("hazard.fetal_female", hazard.fetal_female),
    SRSIM_PARAM("hazard.harshness_exp_male", hazard.harshness_exp_male),
    SRSIM_PARAM("hazard.harshness_exp_female", hazard.harshness_exp_female),
    SRSIM_PARAM("hazard.quality_exp_male", hazard.quality_exp_male),
    SRSIM_PARAM("hazard.quality_exp_female", hazard.quality_exp_female),
    SRSIM_PARAM("hazard.gestation", hazard.gestation),
    SRSIM_PARAM("quality.w_genetic", quality.w_genetic),
    SRSIM_PARAM("quality.w_aging", quality.w_aging),
    SRSIM_PARAM("quality.w_wisdom", quality.w_wisdom),
    SRSIM_PARAM("quality.aging_rate", quality.aging_rate),
    SRSIM_PARAM("quality.wisdom_rate", quality.wisdom_rate),
    SRSIM_PARAM("quality.wisdom_floor", quality.wisdom_floor),
    SRSIM_PARAM("natal.alpha", natal.alpha),
    SRSIM_PARAM("natal.beta", natal.beta),
    SRSIM_PARAM("natal.q_min", natal.q_min),
    SRSIM_PARAM("natal.male_shift", natal.male_shift),
    SRSIM_PARAM("natal.heritability", natal.heritability),
    SRSIM_PARAM("preconception.p_base", preconception.p_base),
    SRSIM_PARAM("preconception.q_ref", preconception.q_ref),
    SRSIM_PARAM("preconception.h_ref", preconception.h_ref),
    SRSIM_PARAM("preconception.alpha_q", preconception.alpha_q),
    SRSIM_PARAM("preconception.alpha_h", preconception.alpha_h),
    SRSIM_PARAM("preconception.h_cat", preconception.h_cat),
    SRSIM_PARAM("preconception.s_cat", preconception.s_cat),
    SRSIM_PARAM("preconception.p_floor", preconception.p_floor),
    SRSIM_PARAM("preconception.h_comfort", preconception.h_comfort),
    SRSIM_PARAM("preconception.comfort_sustain_years", preconception.comfort_sustain_years),
    SRSIM_PARAM("preconception.comfort_ramp_years", preconception.comfort_ramp_years),
    SRSIM_PARAM("maternal.n_crit", maternal.n_crit),
    SRSIM_PARAM("maternal.m_max", maternal.m_max),
    SRSIM_PARAM("maternal.exponent", maternal.exponent),
    SRSIM_PARAM("pairing.age_offset", pairing.age_offset),
    SRSIM_PARAM("pairing.q_offset", pairing.q_offset),
    SRSIM_PARAM("pairing.competition_noise", pairing.competition_noise),
    SRSIM_PARAM("pairing.match_noise", pairing.match_noise),
    SRSIM_PARAM("pairing.male_window_lo", pairing.male_window[0]),
    SRSIM_PARAM("pairing.male_window_hi", pairing.male_window[1]),
    SRSIM_PARAM("pairing.female_window_lo", pairing.female_window[0]),
    SRSIM_PARAM("pairing.female_window_hi", pairing.female_window[1]),
    SRSIM_PARAM("pairing.conception_rate", pairing.conception_rate),
    SRSIM_PARAM("abstinence.grace_years", abstinence.grace_years),
    SRSIM_PARAM("abstinence.beta", abstinence.beta),
    SRSIM_PARAM("abstinence.recovery_tau", abstinence.recovery_tau),
    SRSIM_PARAM("draft.q_threshold", draft.q_threshold),
    SRSIM_PARAM("draft.fraction", draft.fraction),
    SRSIM_PARAM("draft.availability", draft.availability),
    SRSIM_PARAM("mountain.group_fraction", mountain.group_fraction),
    SRSIM_PARAM("mountain.away_years", mountain.away_years),
    SRSIM_PARAM("mountain.home_years", mountain.home_years),
    SRSIM_PARAM("population.carrying_capacity", population.carrying_capacity),
    SRSIM_PARAM("population.dt", population.dt),
    SRSIM_PARAM("population.horizon", population.horizon),
    SRSIM_PARAM("population.record_interval", population.record_interval),
    ParamAccess{"population.initial_size",
                [](const SimConfig& c) -> double {
                  return static_cast<double>(c.population.initial_size);
                },
                [](SimConfig& c, double v) {
                  c.population.initial_size = static_cast<std::uint64_t>(std::llround(v));
                }},
    SRSIM_PARAM("environment.sensing_lag", environment.sensing_lag),
    SRSIM_PARAM("environment.drift.start", environment.drift.start),
    SRSIM_PARAM("environment.drift.rate", environment.drift.rate),
    SRSIM_PARAM("environment.drift.diffusion", environment.drift.diffusion),
    ParamAccess{"environment.harshness_level",
                [](const SimConfig& c) -> double {
                  return schedule_level_get(c.environment.harshness);
                },
                [](SimConfig& c, double v) { schedule_level_set(c.environment.harshness, v); }},
    ParamAccess{"environment.nutrition_level",
                [](const SimConfig& c) -> double {
                  return schedule_level_get(c.environment.nutrition);
                },
                [](SimConfig& c, double v) { schedule_level_set(c.environment.nutrition, v); }},
};

#undef SRSIM_PARAM

const ParamAccess* find_param(const std::string& path) {
  for (const auto& p : registry) {
    if (path == p.path) return &p;
  }
  return nullptr;
}

}  // namespace

const std::vector<ParamAccess>& param_registry() { return registry; }

bool has_param(const std::string& path) { return find_param(path) != nullptr; }

double get_param(const SimConfig& cfg, const std::string& path) {
  const ParamAccess* p = find_param(path);
  if (!p) throw ConfigError("unknown parameter path: " + path);
  return p->get(cfg);
}

void set_param(SimConfig& cfg, const std::string& path, double value) {
  const ParamAccess* p = find_param(path);
  if (!p) throw ConfigError("unknown parameter path: " + path);
  p->set(cfg, value);
}

std::vector<std::string> param_names() {
  std::vector<std::string> names;
  names.reserve(registry.size());
  for (const auto& p : registry) names.emplace_back(p.path);
  return names;
}

}  // namespace srsim
