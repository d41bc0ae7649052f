#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srsim/cohort.hpp"
#include "srsim/config.hpp"
#include "srsim/profile.hpp"
#include "srsim/rng.hpp"

namespace srsim {

enum class EventType : std::uint8_t { draft_on, draft_off, mountain_on, mountain_off };

struct TimedEvent {
  double t = 0.0;
  EventType type = EventType::draft_on;
};

const char* event_type_name(EventType type);
EventType event_type_from_name(const std::string& name);

struct Tallies {
  std::uint64_t conceptions = 0;
  std::uint64_t conceptions_male = 0;
  std::uint64_t conceptions_female = 0;
  std::uint64_t births_male = 0;
  std::uint64_t births_female = 0;
  std::uint64_t fetal_deaths_male = 0;
  std::uint64_t fetal_deaths_female = 0;
  std::uint64_t deaths_male = 0;  // deaths after birth
  std::uint64_t deaths_female = 0;
  std::vector<std::uint64_t> deaths_male_by_bin;
  std::vector<std::uint64_t> deaths_female_by_bin;

  std::uint64_t births() const { return births_male + births_female; }
  std::uint64_t deaths_total() const {
    return deaths_male + deaths_female + fetal_deaths_male + fetal_deaths_female;
  }
};

struct PopulationState {
  double t = 0.0;
  std::vector<Individual> people;  // in-utero and alive; the dead are dropped after tallying
  IndividualId next_id = 1;
  std::uint64_t initial_count = 0;
  Tallies tallies;
  EnvironmentState env;
  double comfort_spell = 0.0;  // consecutive years below the comfort threshold
  bool draft_active = false;
  bool mountain_active = false;
  bool extinct = false;
  double extinction_time = -1.0;
  double stream_carry = 0.0;  // fractional fixed-stream conceptions
  std::vector<BirthRecord> birth_log;

  std::uint64_t alive_count() const;
  std::uint64_t in_utero_count() const;
  // initial_count + conceptions == alive + in_utero + deaths
  bool conserves() const;
};

struct Snapshot {
  double t = 0.0;
  std::uint64_t alive_males = 0;
  std::uint64_t alive_females = 0;
  std::uint64_t in_utero = 0;
  double sr_alive = undefined_stat;       // all living ages pooled
  double sr_birth_interval = undefined_stat;      // cohort born since the last snapshot
  double sr_conception_interval = undefined_stat; // cohort conceived since the last snapshot
  double q_mean_male = undefined_stat;
  double q_mean_female = undefined_stat;
  double births_per_year = 0.0;
  double conceptions_per_year = 0.0;
  double mean_genotype = undefined_stat;
  double harshness = 0.0;
  double nutrition = 1.0;
  double optimum = 0.0;
  SRProfile profile;
  std::vector<double> q_age_sum_male;  // per-bin quality sums over the living
  std::vector<double> q_age_sum_female;
};

struct Trajectory {
  std::uint64_t seed = 0;
  double dt = 0.0;
  double gestation = 0.0;
  double record_interval = 0.0;
  std::vector<Snapshot> snapshots;
  std::vector<BirthRecord> birth_log;
  Tallies tallies;
  bool extinct = false;
  double extinction_time = -1.0;
  std::uint64_t final_alive = 0;
};

struct RunOptions {
  enum class Init : std::uint8_t {
    stationary,        // sample the standing population from the cohort solution
    conception_cohort, // initial_size simultaneous conceptions at t = 0
    none,              // start empty (fixed-stream runs)
  };
  Init init = Init::stationary;
  bool pairing_enabled = true;
  double stream_rate = 0.0;    // fixed conception stream, per year (requires stream_p_male)
  double stream_p_male = -1.0; // <0 means: use the preconception response at ambient H
  bool record_profiles = true;
  AgeGrid grid;
  const AsexualConfig* tracking = nullptr;  // non-null switches on genotype dynamics
};

PopulationState init_population(const SimConfig& cfg, const RunOptions& options,
                                RngStreams& streams);

void step(PopulationState& state, const SimConfig& cfg, std::span<const TimedEvent> events,
          const RunOptions& options, RngStreams& streams);

// Records the state as seen at state.t; `prev` carries the tallies at the
// previous snapshot so interval statistics (births/yr, cohort SRs) line up.
Snapshot snapshot_of(const PopulationState& state, const SimConfig& cfg,
                     const RunOptions& options, const Tallies& prev, double interval);

Trajectory run(const SimConfig& cfg, std::span<const TimedEvent> events, std::uint64_t seed,
               const RunOptions& options = {});

std::vector<Trajectory> run_replicates(const SimConfig& cfg, std::span<const TimedEvent> events,
                                       std::span<const std::uint64_t> seeds,
                                       const RunOptions& options = {});

// Normal-approximation mean with a 95% interval.
struct MeanCI {
  double mean = undefined_stat;
  double lo = undefined_stat;
  double hi = undefined_stat;
  double sd = 0.0;
  int n = 0;
};

MeanCI mean_ci(std::span<const double> values);

// Wilson score interval for a proportion.
struct ProportionCI {
  double p = undefined_stat;
  double lo = undefined_stat;
  double hi = undefined_stat;
};

ProportionCI wilson_ci(std::uint64_t hits, std::uint64_t total);

// Birth-cohort statistics from the run's birth log. Cohort = children whose
// birth (conception + gestation) falls in [t_center - width/2, t_center + width/2).
double cohort_sr_at_birth(const Trajectory& traj, double t_center, double width,
                          int father_group = -1);

// Conception-cohort SR over the same kind of window, counting every
// conception whether or not it reached birth.
double cohort_sr_at_conception(const Trajectory& traj, double t_center, double width);

// Person-time pooled age profile across snapshots with t in [t_from, t_to].
SRProfile pooled_profile(const Trajectory& traj, double t_from, double t_to);

// Pooled per-age quality means across the same snapshot window.
struct QualityByAge {
  std::vector<double> ages;
  std::vector<double> q_male;
  std::vector<double> q_female;
};

QualityByAge pooled_quality_by_age(const Trajectory& traj, double t_from, double t_to);

}  // namespace srsim
