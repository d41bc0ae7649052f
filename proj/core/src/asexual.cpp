#include "srsim/asexual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srsim {

double fitness_at(double genotype, double optimum, double exponent) {
  return std::pow(1.0 + std::abs(genotype - optimum), -exponent);
}

double derived_asexual_birth_rate(const SimConfig& cfg) {
  // Per window member, the sexual arm produces 0.5 * rate / (1 + rate * t_b)
  // births a year (half of a pair, discounted by gestation downtime). Solve
  // the clonal rate whose own downtime-discounted flow matches.
  const double rate = cfg.pairing.conception_rate;
  const double t_b = cfg.hazard.gestation;
  const double c = 0.5 * rate / (1.0 + rate * t_b);
  return c / (1.0 - c * t_b);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t arm, std::uint64_t replicate) {
  std::uint64_t s = seed ^ (arm * 0x9e3779b97f4a7c15ull) ^ (replicate << 1);
  return splitmix64(s);
}

// Stationary ages for the clonal population: survivorship under the female
// baseline alone (starting fitness ~1).
std::vector<double> clonal_survivorship(const HazardParams& hp, double dt, double t_max) {
  const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
  std::vector<double> l(n + 1, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double age = static_cast<double>(i) * dt;
    l[i + 1] = l[i] * std::exp(-hp.baseline(Sex::female, age) * dt);
  }
  return l;
}

}  // namespace

Trajectory run_asexual(const SimConfig& cfg, const AsexualConfig& asex, std::uint64_t seed,
                       const RunOptions& options) {
  cfg.validate();
  asex.validate();
  const double birth_rate =
      asex.birth_rate > 0.0 ? asex.birth_rate : derived_asexual_birth_rate(cfg);

  RngStreams streams = RngStreams::make(seed, 0);
  const double dt = cfg.population.dt;
  const double t_b = cfg.hazard.gestation;

  PopulationState state;
  state.env.optimum = cfg.environment.drift.start;
  state.tallies.deaths_male_by_bin.assign(options.grid.bins(), 0);
  state.tallies.deaths_female_by_bin.assign(options.grid.bins(), 0);

  {
    const double age_dt = std::min(dt, 0.05);
    const std::vector<double> l = clonal_survivorship(cfg.hazard, age_dt, options.grid.max_age);
    std::vector<double> cum(l.size(), 0.0);
    for (std::size_t i = 0; i + 1 < l.size(); ++i) {
      cum[i + 1] = cum[i] + 0.5 * (l[i] + l[i + 1]) * age_dt;
    }
    const auto lo_idx = static_cast<std::size_t>(std::ceil(t_b / age_dt));
    state.people.reserve(cfg.population.initial_size);
    for (std::uint64_t i = 0; i < cfg.population.initial_size; ++i) {
      const double target =
          cum[lo_idx] + streams.init.uniform() * (cum.back() - cum[lo_idx]);
      const auto it = std::upper_bound(cum.begin(), cum.end(), target);
      const auto hi = std::min<std::size_t>(
          cum.size() - 1, static_cast<std::size_t>(it - cum.begin()));
      const std::size_t lo = hi > 0 ? hi - 1 : 0;
      const double seg = cum[hi] - cum[lo];
      const double w = seg > 0.0 ? (target - cum[lo]) / seg : 0.0;
      const double age = (static_cast<double>(lo) + w) * age_dt;

      Individual ind;
      ind.id = state.next_id++;
      ind.sex = Sex::female;
      ind.state = LifeState::alive;
      ind.t_conceived = -age;
      ind.q_genetic = 1.0;
      ind.genotype =
          cfg.environment.drift.start + asex.mutation_scale * streams.init.normal();
      state.people.push_back(ind);
    }
    state.initial_count = cfg.population.initial_size;
  }

  const auto n_steps =
      static_cast<std::uint64_t>(std::ceil(cfg.population.horizon / dt - 1e-9));
  const auto record_every = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(cfg.population.record_interval / dt)));

  Trajectory traj;
  traj.seed = seed;
  traj.dt = dt;
  traj.gestation = t_b;
  traj.record_interval = cfg.population.record_interval;

  Tallies prev = state.tallies;
  traj.snapshots.push_back(snapshot_of(state, cfg, options, prev, 0.0));

  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    const double t = state.t;
    if (state.extinct) {
      state.t = t + dt;
    } else {
      state.env.time = t;
      step_drift(state.env, cfg.environment.drift, dt, streams.environment);

      std::uint64_t alive = 0;
      for (Individual& ind : state.people) {
        const double age = ind.age(t);
        const double mult =
            std::pow(1.0 + std::abs(ind.genotype - state.env.optimum), asex.fitness_exponent);
        const double h = cfg.hazard.baseline(Sex::female, age) * mult;
        if (streams.deaths.bernoulli(1.0 - std::exp(-h * dt))) {
          if (ind.state == LifeState::in_utero) {
            state.tallies.fetal_deaths_female += 1;
          } else {
            state.tallies.deaths_female += 1;
            const int bin = options.grid.bin_of(age);
            if (bin >= 0) state.tallies.deaths_female_by_bin[bin] += 1;
          }
          ind.state = LifeState::dead;
          ind.t_death = t + dt;
          continue;
        }
        if (ind.state == LifeState::in_utero && age >= t_b) {
          ind.state = LifeState::alive;
          state.tallies.births_female += 1;
          if (ind.birth_log_slot != no_log_slot) state.birth_log[ind.birth_log_slot].born = true;
        }
        if (ind.state == LifeState::alive) ++alive;
      }
      state.people.erase(
          std::remove_if(state.people.begin(), state.people.end(),
                         [](const Individual& p) { return p.state == LifeState::dead; }),
          state.people.end());

      const double regulation =
          static_cast<double>(alive) > cfg.population.carrying_capacity
              ? cfg.population.carrying_capacity / static_cast<double>(alive)
              : 1.0;
      const double p_birth = 1.0 - std::exp(-birth_rate * regulation * dt);
      const double t_next = t + dt;
      std::vector<Individual> newborns;
      const std::size_t standing = state.people.size();
      for (std::size_t i = 0; i < standing; ++i) {
        Individual& parent = state.people[i];
        if (parent.state != LifeState::alive) continue;
        const double age = parent.age(t);
        if (!cfg.pairing.female_eligible(age) || parent.is_pregnant(t)) continue;
        if (!streams.conception.bernoulli(p_birth)) continue;
        Individual child;
        child.id = state.next_id++;
        child.mother_id = parent.id;
        child.t_conceived = t_next;
        child.state = LifeState::in_utero;
        child.sex = Sex::female;
        child.q_genetic = 1.0;
        child.genotype = parent.genotype + asex.mutation_scale * streams.conception.normal();
        child.birth_log_slot = static_cast<std::uint32_t>(state.birth_log.size());
        state.birth_log.push_back({t_next, 0, Sex::female, 0, false});
        state.tallies.conceptions += 1;
        state.tallies.conceptions_female += 1;
        parent.pregnant_until = t_next + t_b;
        newborns.push_back(child);
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

RaceResult tracking_race(const SimConfig& cfg, const AsexualConfig& asex, double drift_rate,
                         int replicates, std::uint64_t seed) {
  if (replicates < 2) throw ConfigError("tracking race: needs at least 2 replicates");
  AsexualConfig asex_eff = asex;
  const double derived = derived_asexual_birth_rate(cfg);
  if (asex_eff.birth_rate <= 0.0) {
    asex_eff.birth_rate = derived;
  } else if (std::abs(asex_eff.birth_rate - derived) > 0.35 * derived) {
    throw ConfigError("tracking race: asexual birth_rate " + std::to_string(asex_eff.birth_rate) +
                      " is not renewal-matched to the sexual arm (expected near " +
                      std::to_string(derived) + ")");
  }

  SimConfig arm_cfg = cfg;
  arm_cfg.environment.drift.rate = drift_rate;

  RunOptions opt;
  opt.record_profiles = false;
  opt.tracking = &asex_eff;

  RaceResult result;
  result.drift = drift_rate;
  result.sexual.replicates = replicates;
  result.asexual.replicates = replicates;

  double alive_s = 0.0, alive_a = 0.0;
  for (int r = 0; r < replicates; ++r) {
    const Trajectory ts = run(arm_cfg, {}, mix_seed(seed, 1, r), opt);
    if (ts.extinct) result.sexual.extinctions += 1;
    alive_s += static_cast<double>(ts.final_alive);

    RunOptions opt_a;
    opt_a.record_profiles = false;
    const Trajectory ta = run_asexual(arm_cfg, asex_eff, mix_seed(seed, 2, r), opt_a);
    if (ta.extinct) result.asexual.extinctions += 1;
    alive_a += static_cast<double>(ta.final_alive);
  }
  result.sexual.mean_final_alive = alive_s / replicates;
  result.asexual.mean_final_alive = alive_a / replicates;

  const ProportionCI ci_s = wilson_ci(result.sexual.extinctions, replicates);
  const ProportionCI ci_a = wilson_ci(result.asexual.extinctions, replicates);
  result.sexual.p_ext = ci_s.p;
  result.sexual.ci_lo = ci_s.lo;
  result.sexual.ci_hi = ci_s.hi;
  result.asexual.p_ext = ci_a.p;
  result.asexual.ci_lo = ci_a.lo;
  result.asexual.ci_hi = ci_a.hi;
  result.sexual_advantage_significant = ci_s.hi < ci_a.lo;
  return result;
}

}  // namespace srsim
