#include "srsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srsim/reproduction.hpp"

namespace srsim {

const char* event_type_name(EventType type) {
  switch (type) {
    case EventType::draft_on: return "draft_on";
    case EventType::draft_off: return "draft_off";
    case EventType::mountain_on: return "mountain_on";
    case EventType::mountain_off: return "mountain_off";
  }
  return "unknown";
}

EventType event_type_from_name(const std::string& name) {
  for (EventType t : {EventType::draft_on, EventType::draft_off, EventType::mountain_on,
                      EventType::mountain_off}) {
    if (name == event_type_name(t)) return t;
  }
  throw ConfigError("unknown event type '" + name +
                    "' (expected draft_on, draft_off, mountain_on or mountain_off)");
}

std::uint64_t PopulationState::alive_count() const {
  return static_cast<std::uint64_t>(std::count_if(
      people.begin(), people.end(), [](const Individual& p) { return p.state == LifeState::alive; }));
}

std::uint64_t PopulationState::in_utero_count() const {
  return static_cast<std::uint64_t>(
      std::count_if(people.begin(), people.end(),
                    [](const Individual& p) { return p.state == LifeState::in_utero; }));
}

bool PopulationState::conserves() const {
  return initial_count + tallies.conceptions ==
         alive_count() + in_utero_count() + tallies.deaths_total();
}

namespace {

bool quality_is_static(const QualityModelConfig& q) {
  return q.w_aging == 0.0 && q.w_wisdom == 0.0;
}

double q_cache_for(const Individual& ind, const HazardParams& hp) {
  const double kappa =
      ind.sex == Sex::male ? hp.quality_exp_male : hp.quality_exp_female;
  return std::pow(ind.q_genetic, -kappa);
}

double fitness_to_quality(double genotype, double optimum, double exponent, double q_min) {
  const double f = std::pow(1.0 + std::abs(genotype - optimum), -exponent);
  return std::clamp(f, q_min, 1.0);
}

bool mountain_away(const Individual& ind, double t, const MountainParams& mp) {
  if (ind.group != 1 || ind.sex != Sex::male) return false;
  const double cycle = mp.cycle_length();
  if (cycle <= 0.0) return false;
  const double phase = std::fmod(t + static_cast<double>(ind.cycle_phase), cycle);
  return phase < mp.away_years;
}

struct StepFactors {
  double hfac_male = 1.0;    // (1+H)^gamma
  double hfac_female = 1.0;
  double maternal_mult = 1.0;
  bool q_static = true;
};

double step_hazard(const Individual& ind, double age, const SimConfig& cfg,
                   const StepFactors& f) {
  double h = cfg.hazard.baseline(ind.sex, age);
  h *= ind.sex == Sex::male ? f.hfac_male : f.hfac_female;
  if (f.q_static) {
    h *= ind.q_hazard_factor;
  } else {
    const double kappa = ind.sex == Sex::male ? cfg.hazard.quality_exp_male
                                              : cfg.hazard.quality_exp_female;
    h *= std::pow(quality_at_age(ind.q_genetic, age, cfg.quality), -kappa);
  }
  if (ind.state == LifeState::in_utero && ind.sex == Sex::male && age < cfg.hazard.gestation) {
    h *= f.maternal_mult;
  }
  return h;
}

double resolve_stream_p_male(const SimConfig& cfg, const RunOptions& options, double harshness) {
  if (options.stream_p_male >= 0.0) return options.stream_p_male;
  return preconception_sr(cfg.preconception.q_ref, harshness, cfg.preconception);
}

void log_conception(PopulationState& state, Individual& child, std::uint8_t father_group) {
  child.birth_log_slot = static_cast<std::uint32_t>(state.birth_log.size());
  state.birth_log.push_back(
      {child.t_conceived, child.father_birth_order, child.sex, father_group, false});
  state.tallies.conceptions += 1;
  if (child.sex == Sex::male) {
    state.tallies.conceptions_male += 1;
  } else {
    state.tallies.conceptions_female += 1;
  }
}

}  // namespace

PopulationState init_population(const SimConfig& cfg, const RunOptions& options,
                                RngStreams& streams) {
  PopulationState state;
  state.env.time = 0.0;
  state.env.harshness = cfg.environment.harshness.at(0.0);
  state.env.nutrition = cfg.environment.nutrition.at(0.0);
  state.env.optimum = cfg.environment.drift.start;
  state.tallies.deaths_male_by_bin.assign(options.grid.bins(), 0);
  state.tallies.deaths_female_by_bin.assign(options.grid.bins(), 0);

  const std::uint64_t n = cfg.population.initial_size;
  const double cycle = cfg.mountain.cycle_length();

  if (options.init == RunOptions::Init::none) {
    return state;
  }

  if (options.init == RunOptions::Init::conception_cohort) {
    const double p0 = resolve_stream_p_male(cfg, options, state.env.harshness);
    state.people.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      Individual ind;
      ind.id = state.next_id++;
      ind.t_conceived = 0.0;
      ind.state = LifeState::in_utero;
      ind.sex = streams.init.bernoulli(p0) ? Sex::male : Sex::female;
      ind.q_genetic = cfg.natal.sample(ind.sex, streams.init);
      ind.q_hazard_factor = q_cache_for(ind, cfg.hazard);
      ind.birth_log_slot = static_cast<std::uint32_t>(state.birth_log.size());
      state.birth_log.push_back({0.0, 0, ind.sex, 0, false});
      state.people.push_back(ind);
    }
    state.initial_count = n;
    return state;
  }

  // Stationary init: ages and per-sex shares come from the cohort solution
  // under the t = 0 environment.
  CohortConfig cc;
  cc.dt = std::min(cfg.population.dt, 0.0625);
  cc.t_max = options.grid.max_age;
  cc.n_strata = 64;
  cc.harshness = state.env.harshness;
  cc.nutrition = state.env.nutrition;
  const CohortTable table =
      cohort_solve(cfg.hazard, cfg.quality, cfg.natal, cfg.maternal, cc, nullptr);

  // Stationary father-pool quality: survivor-weighted mean over the male
  // eligibility window, plus the contest margin (surplus males lose the
  // pairing contest lowest-quality-first, so fathers sit above the pool mean).
  double q_pool = 0.0;
  double mass_pool = 0.0;
  for (double a = cfg.pairing.male_window[0]; a < cfg.pairing.male_window[1]; a += cc.dt) {
    const double l = table.mean_survivorship(Sex::male, a);
    q_pool += l * table.q_mean_at(Sex::male, a);
    mass_pool += l;
  }
  const double q_adult_male =
      mass_pool > 0.0 ? std::min(1.0, q_pool / mass_pool + cfg.pairing.q_offset)
                      : table.q_mean_at(Sex::male, 30.0);
  const double p0 = preconception_sr(q_adult_male, state.env.harshness, cfg.preconception);
  const double mass_m = table.stationary_mass(Sex::male, cfg.hazard.gestation);
  const double mass_f = table.stationary_mass(Sex::female, cfg.hazard.gestation);
  const double male_share = p0 * mass_m / (p0 * mass_m + (1.0 - p0) * mass_f);

  state.people.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Individual ind;
    ind.id = state.next_id++;
    ind.sex = streams.init.bernoulli(male_share) ? Sex::male : Sex::female;
    const int stratum = table.sample_stationary_stratum(ind.sex, streams.init.uniform(),
                                                        cfg.hazard.gestation);
    ind.q_genetic = ind.sex == Sex::male ? table.strata_q_male[stratum]
                                         : table.strata_q_female[stratum];
    const double age =
        table.sample_stationary_age(ind.sex, stratum, streams.init.uniform(), cfg.hazard.gestation);
    ind.t_conceived = -age;
    ind.state = LifeState::alive;
    if (cfg.mountain.group_fraction > 0.0 && streams.init.bernoulli(cfg.mountain.group_fraction)) {
      ind.group = 1;
      ind.cycle_phase = static_cast<float>(streams.init.uniform() * cycle);
    }
    if (options.tracking) {
      ind.genotype = cfg.environment.drift.start +
                     options.tracking->mutation_scale * streams.init.normal();
      ind.q_genetic = fitness_to_quality(ind.genotype, state.env.optimum,
                                         options.tracking->fitness_exponent, cfg.natal.q_min);
    }
    ind.q_hazard_factor = q_cache_for(ind, cfg.hazard);
    state.people.push_back(ind);
  }
  state.initial_count = n;
  return state;
}

void step(PopulationState& state, const SimConfig& cfg, std::span<const TimedEvent> events,
          const RunOptions& options, RngStreams& streams) {
  const double dt = cfg.population.dt;
  const double t = state.t;
  if (state.extinct) {
    state.t = t + dt;
    return;
  }

  // environment
  state.env.time = t;
  state.env.harshness = cfg.environment.harshness.at(t);
  state.env.nutrition = cfg.environment.nutrition.at(t);
  step_drift(state.env, cfg.environment.drift, dt, streams.environment);
  if (state.env.harshness < cfg.preconception.h_comfort) {
    state.comfort_spell += dt;
  } else {
    state.comfort_spell = 0.0;
  }

  StepFactors factors;
  factors.hfac_male = std::pow(1.0 + state.env.harshness, cfg.hazard.harshness_exp_male);
  factors.hfac_female = std::pow(1.0 + state.env.harshness, cfg.hazard.harshness_exp_female);
  factors.maternal_mult = maternal_multiplier(state.env.nutrition, cfg.maternal);
  factors.q_static = quality_is_static(cfg.quality);

  // fetal and adult deaths, then births; one survival draw per individual
  std::uint64_t alive = 0;
  std::uint64_t in_utero = 0;
  for (Individual& ind : state.people) {
    const double age = ind.age(t);
    // birth happens at the step boundary, before this step's survival draw
    if (ind.state == LifeState::in_utero && age >= cfg.hazard.gestation - kAgeEps) {
      ind.state = LifeState::alive;
      if (ind.sex == Sex::male) {
        state.tallies.births_male += 1;
      } else {
        state.tallies.births_female += 1;
      }
      if (ind.birth_log_slot != no_log_slot) {
        state.birth_log[ind.birth_log_slot].born = true;
      }
    }
    const double h = step_hazard(ind, age, cfg, factors);
    const double p_die = 1.0 - std::exp(-h * dt);
    if (streams.deaths.bernoulli(p_die)) {
      if (ind.state == LifeState::in_utero) {
        if (ind.sex == Sex::male) {
          state.tallies.fetal_deaths_male += 1;
        } else {
          state.tallies.fetal_deaths_female += 1;
        }
      } else {
        if (ind.sex == Sex::male) {
          state.tallies.deaths_male += 1;
        } else {
          state.tallies.deaths_female += 1;
        }
        const int bin = options.grid.bin_of(age);
        if (bin >= 0) {
          auto& bins = ind.sex == Sex::male ? state.tallies.deaths_male_by_bin
                                            : state.tallies.deaths_female_by_bin;
          bins[bin] += 1;
        }
      }
      ind.state = LifeState::dead;
      ind.t_death = t + dt;
      continue;
    }
    if (ind.state == LifeState::alive) {
      ++alive;
    } else {
      ++in_utero;
    }
  }
  state.people.erase(std::remove_if(state.people.begin(), state.people.end(),
                                    [](const Individual& p) { return p.state == LifeState::dead; }),
                     state.people.end());

  // timed events for this step's interval
  for (const TimedEvent& ev : events) {
    if (ev.t < t || ev.t >= t + dt) continue;
    switch (ev.type) {
      case EventType::draft_on: state.draft_active = true; break;
      case EventType::draft_off: state.draft_active = false; break;
      case EventType::mountain_on: state.mountain_active = true; break;
      case EventType::mountain_off: state.mountain_active = false; break;
    }
  }

  // pairing and conception; children enter at the end of the step
  const double t_next = t + dt;
  const double regulation =
      static_cast<double>(alive) > cfg.population.carrying_capacity
          ? cfg.population.carrying_capacity / static_cast<double>(alive)
          : 1.0;

  std::vector<Individual> newborns;
  if (!options.pairing_enabled) {
    if (options.stream_rate > 0.0) {
      const double p0 = resolve_stream_p_male(cfg, options, state.env.harshness);
      state.stream_carry += options.stream_rate * dt;
      const auto n_new = static_cast<std::uint64_t>(state.stream_carry);
      state.stream_carry -= static_cast<double>(n_new);
      newborns.reserve(n_new);
      for (std::uint64_t i = 0; i < n_new; ++i) {
        Individual child;
        child.id = state.next_id++;
        child.t_conceived = t_next;
        child.state = LifeState::in_utero;
        child.sex = streams.conception.bernoulli(p0) ? Sex::male : Sex::female;
        child.q_genetic = cfg.natal.sample(child.sex, streams.conception);
        child.q_hazard_factor = q_cache_for(child, cfg.hazard);
        log_conception(state, child, 0);
        newborns.push_back(child);
      }
    }
  } else {
    std::vector<std::uint32_t> male_pool;
    std::vector<std::uint32_t> female_pool;
    for (std::uint32_t i = 0; i < state.people.size(); ++i) {
      const Individual& ind = state.people[i];
      if (ind.state != LifeState::alive) continue;
      const double age = ind.age(t);
      if (ind.sex == Sex::male) {
        if (cfg.pairing.male_eligible(age) &&
            !(state.mountain_active && mountain_away(ind, t, cfg.mountain))) {
          male_pool.push_back(i);
        }
      } else {
        if (cfg.pairing.female_eligible(age) && !ind.is_pregnant(t)) {
          female_pool.push_back(i);
        }
      }
    }

    std::vector<std::uint32_t> drafted;
    if (state.draft_active) {
      DraftSplit split = draft_filter(state.people, male_pool, t, cfg.draft.q_threshold,
                                      cfg.draft.fraction, cfg.quality);
      drafted = std::move(split.drafted);
      male_pool = std::move(split.exempt);
    }

    const auto pairs = pair_individuals(state.people, male_pool, female_pool, t, cfg.pairing,
                                        cfg.quality, streams.pairing);

    ReproductionContext ctx;
    ctx.quality = &cfg.quality;
    ctx.natal = &cfg.natal;
    ctx.preconception = &cfg.preconception;
    ctx.abstinence = &cfg.abstinence;
    ctx.env = &cfg.environment;
    ctx.gestation = cfg.hazard.gestation;
    ctx.comfort_weight = comfort_collapse_weight(state.comfort_spell, cfg.preconception);

    const double rate_eff = cfg.pairing.conception_rate * regulation;

    // fitness-rank paternity weights, mean-one so the birth rate is preserved
    std::vector<double> pair_mult;
    if (options.tracking && !pairs.empty()) {
      std::vector<std::uint32_t> order(pairs.size());
      for (std::uint32_t k = 0; k < pairs.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double fa = state.people[pairs[a].male].q_genetic;
        const double fb = state.people[pairs[b].male].q_genetic;
        return fa < fb || (fa == fb && pairs[a].male < pairs[b].male);
      });
      pair_mult.assign(pairs.size(), 1.0);
      const double m = static_cast<double>(pairs.size());
      for (std::uint32_t r = 0; r < order.size(); ++r) {
        pair_mult[order[r]] = 2.0 * (r + 1.0) / (m + 1.0);
      }
    }

    std::vector<std::uint8_t> paired(state.people.size(), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      Individual& father = state.people[pairs[k].male];
      Individual& mother = state.people[pairs[k].female];
      paired[pairs[k].male] = 1;
      paired[pairs[k].female] = 1;
      const double rate_pair = pair_mult.empty() ? rate_eff : rate_eff * pair_mult[k];
      auto child = conceive(father, mother, t_next, dt, rate_pair, ctx, state.next_id,
                            streams.conception);
      if (!child) continue;
      state.next_id += 1;
      if (options.tracking) {
        child->genotype = 0.5 * (father.genotype + mother.genotype) +
                          options.tracking->mutation_scale * streams.conception.normal();
        child->q_genetic = fitness_to_quality(child->genotype, state.env.optimum,
                                              options.tracking->fitness_exponent, cfg.natal.q_min);
      }
      child->q_hazard_factor = q_cache_for(*child, cfg.hazard);
      log_conception(state, *child, father.group);
      newborns.push_back(*child);
    }

    // men at the front conceive only on leave
    if (state.draft_active && !drafted.empty() && cfg.draft.availability > 0.0) {
      std::vector<std::uint32_t> open_females;
      for (std::uint32_t f : female_pool) {
        if (!paired[f] && !state.people[f].is_pregnant(t)) open_females.push_back(f);
      }
      const double p_leave = 1.0 - std::exp(-rate_eff * cfg.draft.availability * dt);
      for (std::uint32_t m : drafted) {
        if (open_females.empty()) break;
        if (!streams.conception.bernoulli(p_leave)) continue;
        const auto pick = static_cast<std::size_t>(streams.conception.below(open_females.size()));
        const std::uint32_t f = open_females[pick];
        open_females.erase(open_females.begin() + static_cast<std::ptrdiff_t>(pick));
        Individual& father = state.people[m];
        Individual& mother = state.people[f];
        paired[m] = 1;
        paired[f] = 1;
        Individual child = conceive_now(father, mother, t_next, ctx, state.next_id,
                                        streams.conception);
        state.next_id += 1;
        if (options.tracking) {
          child.genotype = 0.5 * (father.genotype + mother.genotype) +
                           options.tracking->mutation_scale * streams.conception.normal();
          child.q_genetic = fitness_to_quality(child.genotype, state.env.optimum,
                                               options.tracking->fitness_exponent, cfg.natal.q_min);
        }
        child.q_hazard_factor = q_cache_for(child, cfg.hazard);
        log_conception(state, child, father.group);
        newborns.push_back(child);
      }
    }

    // deprivation clocks: grow while cut off from the market (away in the
    // mountains, at the front), relax while females are present at all; a
    // step spent losing the contest still counts as contact
    const double relax = std::exp(-dt / cfg.abstinence.recovery_tau);
    std::vector<std::uint8_t> in_market(state.people.size(), 0);
    for (std::uint32_t i : male_pool) in_market[i] = 1;
    for (std::uint32_t i = 0; i < state.people.size(); ++i) {
      Individual& ind = state.people[i];
      if (ind.sex != Sex::male || ind.state != LifeState::alive) continue;
      const double age = ind.age(t);
      if (!cfg.pairing.male_eligible(age)) {
        ind.sensed_abstinence = 0.0;
      } else if (in_market[i]) {
        ind.sensed_abstinence *= relax;
      } else {
        ind.sensed_abstinence += dt;
      }
    }
  }

  state.people.insert(state.people.end(), newborns.begin(), newborns.end());
  state.t = t_next;
  if (state.people.empty()) {
    state.extinct = true;
    state.extinction_time = t_next;
  }
  if (!state.conserves()) {
    throw std::logic_error("population accounting identity violated");
  }
}

Snapshot snapshot_of(const PopulationState& state, const SimConfig& cfg,
                     const RunOptions& options, const Tallies& prev, double dt_interval) {
  Snapshot snap;
  snap.t = state.t;
  snap.harshness = cfg.environment.harshness.at(state.t);
  snap.nutrition = cfg.environment.nutrition.at(state.t);
  snap.optimum = state.env.optimum;

  const int bins = options.grid.bins();
  snap.profile.grid = options.grid;
  snap.profile.males.assign(bins, 0);
  snap.profile.females.assign(bins, 0);
  snap.q_age_sum_male.assign(bins, 0.0);
  snap.q_age_sum_female.assign(bins, 0.0);

  double q_sum_m = 0.0, q_sum_f = 0.0, genotype_sum = 0.0;
  for (const Individual& ind : state.people) {
    if (ind.state == LifeState::in_utero) {
      snap.in_utero += 1;
      continue;
    }
    const double age = ind.age(state.t);
    const double q = quality_at_age(ind.q_genetic, age, cfg.quality);
    genotype_sum += ind.genotype;
    const int bin = options.grid.bin_of(age);
    if (ind.sex == Sex::male) {
      snap.alive_males += 1;
      q_sum_m += q;
      if (bin >= 0) {
        snap.profile.males[bin] += 1;
        snap.q_age_sum_male[bin] += q;
      }
    } else {
      snap.alive_females += 1;
      q_sum_f += q;
      if (bin >= 0) {
        snap.profile.females[bin] += 1;
        snap.q_age_sum_female[bin] += q;
      }
    }
  }
  snap.profile.sr.assign(bins, undefined_stat);
  for (int k = 0; k < bins; ++k) {
    snap.profile.sr[k] = sr_from_counts(static_cast<double>(snap.profile.males[k]),
                                        static_cast<double>(snap.profile.females[k]));
  }
  const std::uint64_t alive_total = snap.alive_males + snap.alive_females;
  snap.sr_alive = sr_from_counts(static_cast<double>(snap.alive_males),
                                 static_cast<double>(snap.alive_females));
  snap.q_mean_male = snap.alive_males ? q_sum_m / static_cast<double>(snap.alive_males)
                                      : undefined_stat;
  snap.q_mean_female = snap.alive_females ? q_sum_f / static_cast<double>(snap.alive_females)
                                          : undefined_stat;
  snap.mean_genotype =
      alive_total ? genotype_sum / static_cast<double>(alive_total) : undefined_stat;

  const auto d_bm = state.tallies.births_male - prev.births_male;
  const auto d_bf = state.tallies.births_female - prev.births_female;
  const auto d_cm = state.tallies.conceptions_male - prev.conceptions_male;
  const auto d_cf = state.tallies.conceptions_female - prev.conceptions_female;
  snap.sr_birth_interval = sr_from_counts(static_cast<double>(d_bm), static_cast<double>(d_bf));
  snap.sr_conception_interval =
      sr_from_counts(static_cast<double>(d_cm), static_cast<double>(d_cf));
  if (dt_interval > 0.0) {
    snap.births_per_year = static_cast<double>(d_bm + d_bf) / dt_interval;
    snap.conceptions_per_year = static_cast<double>(d_cm + d_cf) / dt_interval;
  }
  if (!options.record_profiles) {
    snap.profile = SRProfile{};
    snap.q_age_sum_male.clear();
    snap.q_age_sum_female.clear();
  }
  return snap;
}

Trajectory run(const SimConfig& cfg, std::span<const TimedEvent> events, std::uint64_t seed,
               const RunOptions& options) {
  cfg.validate();
  if (!std::is_sorted(events.begin(), events.end(),
                      [](const TimedEvent& a, const TimedEvent& b) { return a.t < b.t; })) {
    throw ConfigError("events must be ordered by time");
  }
  if (options.pairing_enabled && options.stream_rate > 0.0) {
    throw ConfigError("fixed conception stream requires pairing to be disabled");
  }

  RngStreams streams = RngStreams::make(seed, 0);
  PopulationState state = init_population(cfg, options, streams);

  const double dt = cfg.population.dt;
  const auto n_steps =
      static_cast<std::uint64_t>(std::ceil(cfg.population.horizon / dt - 1e-9));
  const auto record_every = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(cfg.population.record_interval / dt)));

  Trajectory traj;
  traj.seed = seed;
  traj.dt = dt;
  traj.gestation = cfg.hazard.gestation;
  traj.record_interval = cfg.population.record_interval;

  Tallies prev = state.tallies;
  traj.snapshots.push_back(snapshot_of(state, cfg, options, prev, 0.0));

  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    step(state, cfg, events, options, streams);
    if (k % record_every == 0 || k == n_steps) {
      const double interval = (k % record_every == 0)
                                  ? static_cast<double>(record_every) * dt
                                  : static_cast<double>(k % record_every) * dt;
      traj.snapshots.push_back(snapshot_of(state, cfg, options, prev, interval));
      prev = state.tallies;
    }
  }

  traj.birth_log = std::move(state.birth_log);
  traj.tallies = state.tallies;
  traj.extinct = state.extinct;
  traj.extinction_time = state.extinction_time;
  traj.final_alive = state.alive_count();
  return traj;
}

std::vector<Trajectory> run_replicates(const SimConfig& cfg, std::span<const TimedEvent> events,
                                       std::span<const std::uint64_t> seeds,
                                       const RunOptions& options) {
  std::vector<Trajectory> out;
  out.reserve(seeds.size());
  for (std::uint64_t s : seeds) {
    out.push_back(run(cfg, events, s, options));
  }
  return out;
}

MeanCI mean_ci(std::span<const double> values) {
  MeanCI r;
  r.n = static_cast<int>(values.size());
  if (r.n == 0) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / r.n;
  if (r.n == 1) {
    r.lo = r.hi = r.mean;
    return r;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.sd = std::sqrt(ss / (r.n - 1));
  const double half = 1.96 * r.sd / std::sqrt(static_cast<double>(r.n));
  r.lo = r.mean - half;
  r.hi = r.mean + half;
  return r;
}

ProportionCI wilson_ci(std::uint64_t hits, std::uint64_t total) {
  ProportionCI r;
  if (total == 0) return r;
  const double z = 1.96;
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  r.p = p;
  r.lo = std::max(0.0, center - half);
  r.hi = std::min(1.0, center + half);
  return r;
}

double cohort_sr_at_birth(const Trajectory& traj, double t_center, double width,
                          int father_group) {
  const double lo = t_center - width / 2.0;
  const double hi = t_center + width / 2.0;
  std::int64_t m = 0, f = 0;
  for (const BirthRecord& rec : traj.birth_log) {
    if (!rec.born) continue;
    if (father_group >= 0 && rec.father_group != father_group) continue;
    const double t_birth = rec.t_conceived + traj.gestation;
    if (t_birth < lo || t_birth >= hi) continue;
    (rec.sex == Sex::male ? m : f) += 1;
  }
  return sr_from_counts(static_cast<double>(m), static_cast<double>(f));
}

double cohort_sr_at_conception(const Trajectory& traj, double t_center, double width) {
  const double lo = t_center - width / 2.0;
  const double hi = t_center + width / 2.0;
  std::int64_t m = 0, f = 0;
  for (const BirthRecord& rec : traj.birth_log) {
    if (rec.t_conceived < lo || rec.t_conceived >= hi) continue;
    (rec.sex == Sex::male ? m : f) += 1;
  }
  return sr_from_counts(static_cast<double>(m), static_cast<double>(f));
}

SRProfile pooled_profile(const Trajectory& traj, double t_from, double t_to) {
  SRProfile pooled;
  bool first = true;
  for (const Snapshot& snap : traj.snapshots) {
    if (snap.t < t_from || snap.t > t_to || snap.profile.males.empty()) continue;
    if (first) {
      pooled = snap.profile;
      first = false;
    } else {
      accumulate_profile(pooled, snap.profile);
    }
  }
  return pooled;
}

QualityByAge pooled_quality_by_age(const Trajectory& traj, double t_from, double t_to) {
  QualityByAge out;
  std::vector<double> sum_m, sum_f;
  std::vector<std::int64_t> cnt_m, cnt_f;
  for (const Snapshot& snap : traj.snapshots) {
    if (snap.t < t_from || snap.t > t_to || snap.q_age_sum_male.empty()) continue;
    if (out.ages.empty()) {
      out.ages = snap.profile.bin_centers();
      sum_m.assign(out.ages.size(), 0.0);
      sum_f.assign(out.ages.size(), 0.0);
      cnt_m.assign(out.ages.size(), 0);
      cnt_f.assign(out.ages.size(), 0);
    }
    for (std::size_t k = 0; k < out.ages.size(); ++k) {
      sum_m[k] += snap.q_age_sum_male[k];
      sum_f[k] += snap.q_age_sum_female[k];
      cnt_m[k] += snap.profile.males[k];
      cnt_f[k] += snap.profile.females[k];
    }
  }
  out.q_male.assign(out.ages.size(), undefined_stat);
  out.q_female.assign(out.ages.size(), undefined_stat);
  for (std::size_t k = 0; k < out.ages.size(); ++k) {
    if (cnt_m[k] > 0) out.q_male[k] = sum_m[k] / static_cast<double>(cnt_m[k]);
    if (cnt_f[k] > 0) out.q_female[k] = sum_f[k] / static_cast<double>(cnt_f[k]);
  }
  return out;
}

}  // namespace srsim
