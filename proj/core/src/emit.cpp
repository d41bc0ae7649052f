#include "srsim/emit.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace srsim {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path staging = target.string() + ".staging";
  {
    std::ofstream out(staging, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + staging.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("short write to " + staging.string());
  }
  fs::rename(staging, target);
}

std::string profile_csv(const SRProfile& profile) {
  std::string out = "bin_start,bin_end,males,females,sr\n";
  for (int k = 0; k < profile.grid.bins(); ++k) {
    out += format_double(profile.grid.bin_start(k));
    out += ',';
    out += format_double(profile.grid.bin_start(k + 1));
    out += ',';
    out += std::to_string(profile.males[static_cast<std::size_t>(k)]);
    out += ',';
    out += std::to_string(profile.females[static_cast<std::size_t>(k)]);
    out += ',';
    out += format_double(profile.sr[static_cast<std::size_t>(k)]);
    out += '\n';
  }
  return out;
}

std::string cohort_csv(const CohortTable& table) {
  std::string out = "bin_start,bin_end,males,females,sr\n";
  const std::size_t n = table.times.size();
  const double dt = n > 1 ? table.times[1] - table.times[0] : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = table.times[i];
    out += format_double(t);
    out += ',';
    out += format_double(i + 1 < n ? table.times[i + 1] : t + dt);
    out += ',';
    out += format_double(table.sr0 * table.survival_male[i]);
    out += ',';
    out += format_double(100.0 * table.survival_female[i]);
    out += ',';
    out += format_double(table.sr[i]);
    out += '\n';
  }
  return out;
}

namespace {

void long_row(std::string& out, double t, const char* statistic, double value, int replicate) {
  out += format_double(t);
  out += ',';
  out += statistic;
  out += ',';
  out += format_double(value);
  out += ',';
  out += std::to_string(replicate);
  out += '\n';
}

}  // namespace

std::string trajectory_csv(std::span<const Trajectory> replicates) {
  std::string out = "time,statistic,value,replicate\n";
  for (std::size_t r = 0; r < replicates.size(); ++r) {
    const int rep = static_cast<int>(r);
    for (const Snapshot& s : replicates[r].snapshots) {
      long_row(out, s.t, "alive_males", static_cast<double>(s.alive_males), rep);
      long_row(out, s.t, "alive_females", static_cast<double>(s.alive_females), rep);
      long_row(out, s.t, "in_utero", static_cast<double>(s.in_utero), rep);
      long_row(out, s.t, "sr_alive", s.sr_alive, rep);
      long_row(out, s.t, "sr_birth_interval", s.sr_birth_interval, rep);
      long_row(out, s.t, "sr_conception_interval", s.sr_conception_interval, rep);
      long_row(out, s.t, "q_mean_male", s.q_mean_male, rep);
      long_row(out, s.t, "q_mean_female", s.q_mean_female, rep);
      long_row(out, s.t, "births_per_year", s.births_per_year, rep);
      long_row(out, s.t, "conceptions_per_year", s.conceptions_per_year, rep);
      long_row(out, s.t, "mean_genotype", s.mean_genotype, rep);
      long_row(out, s.t, "harshness", s.harshness, rep);
      long_row(out, s.t, "nutrition", s.nutrition, rep);
      long_row(out, s.t, "optimum", s.optimum, rep);
    }
  }
  return out;
}

std::string birth_series_csv(std::span<const Trajectory> replicates) {
  std::string out = "t_start,t_end,males,females,sr\n";
  if (replicates.empty()) return out;
  const Trajectory& first = replicates.front();
  if (first.snapshots.size() < 2) return out;

  const std::size_t bins = first.snapshots.size() - 1;
  std::vector<std::int64_t> males(bins, 0);
  std::vector<std::int64_t> females(bins, 0);
  const double t0 = first.snapshots.front().t;

  for (const Trajectory& traj : replicates) {
    for (const BirthRecord& rec : traj.birth_log) {
      if (!rec.born) continue;
      const double t_birth = rec.t_conceived + traj.gestation;
      const double rel = t_birth - t0;
      if (rel < 0.0) continue;
      const auto k = static_cast<std::size_t>(rel / traj.record_interval);
      if (k >= bins) continue;
      if (rec.sex == Sex::male) {
        ++males[k];
      } else {
        ++females[k];
      }
    }
  }

  for (std::size_t k = 0; k < bins; ++k) {
    out += format_double(first.snapshots[k].t);
    out += ',';
    out += format_double(first.snapshots[k + 1].t);
    out += ',';
    out += std::to_string(males[k]);
    out += ',';
    out += std::to_string(females[k]);
    out += ',';
    out += format_double(sr_from_counts(males[k], females[k]));
    out += '\n';
  }
  return out;
}

std::string birth_order_csv(std::span<const OrderStat> stats) {
  std::string out = "order,males,females,sr\n";
  for (std::size_t i = 1; i < stats.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(stats[i].males);
    out += ',';
    out += std::to_string(stats[i].females);
    out += ',';
    out += format_double(stats[i].sr);
    out += '\n';
  }
  return out;
}

std::string quality_by_age_csv(const QualityByAge& q) {
  std::string out = "age,q_male,q_female\n";
  for (std::size_t i = 0; i < q.ages.size(); ++i) {
    out += format_double(q.ages[i]);
    out += ',';
    out += format_double(q.q_male[i]);
    out += ',';
    out += format_double(q.q_female[i]);
    out += '\n';
  }
  return out;
}

std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

using nlohmann::ordered_json;

ordered_json schedule_json(const PiecewiseSchedule& s) {
  ordered_json out = ordered_json::array();
  for (const ScheduleSegment& seg : s.segments) {
    out.push_back({{"t", seg.t_start}, {"value", seg.value}});
  }
  return out;
}

double nan_to_null_guard(double v) { return v; }

// JSON has no NaN literal; undefined statistics are emitted as null.
void put_stat(ordered_json& obj, const char* key, double v) {
  if (std::isfinite(v)) {
    obj[key] = nan_to_null_guard(v);
  } else {
    obj[key] = nullptr;
  }
}

ordered_json mean_ci_json(const MeanCI& ci) {
  ordered_json out;
  put_stat(out, "mean", ci.mean);
  put_stat(out, "ci_lo", ci.lo);
  put_stat(out, "ci_hi", ci.hi);
  put_stat(out, "sd", ci.sd);
  out["n"] = ci.n;
  return out;
}

}  // namespace

ordered_json config_json(const SimConfig& c) {
  ordered_json cfg;
  cfg["hazard"] = {{"band_starts", c.hazard.band_starts},
                   {"male_rates", c.hazard.male_rates},
                   {"female_rates", c.hazard.female_rates},
                   {"fetal_male", c.hazard.fetal_male},
                   {"fetal_female", c.hazard.fetal_female},
                   {"harshness_exp_male", c.hazard.harshness_exp_male},
                   {"harshness_exp_female", c.hazard.harshness_exp_female},
                   {"quality_exp_male", c.hazard.quality_exp_male},
                   {"quality_exp_female", c.hazard.quality_exp_female},
                   {"gestation", c.hazard.gestation},
                   {"allow_inverted_sex_ordering", c.hazard.allow_inverted_sex_ordering}};
  cfg["quality"] = {
      {"w_genetic", c.quality.w_genetic},
      {"w_aging", c.quality.w_aging},
      {"w_wisdom", c.quality.w_wisdom},
      {"aging_rate", c.quality.aging_rate},
      {"wisdom_rate", c.quality.wisdom_rate},
      {"wisdom_floor", c.quality.wisdom_floor},
      {"combination", c.quality.combination == QualityCombination::linear ? "linear" : "geometric"}};
  cfg["natal"] = {{"alpha", c.natal.alpha},
                  {"beta", c.natal.beta},
                  {"q_min", c.natal.q_min},
                  {"male_shift", c.natal.male_shift},
                  {"heritability", c.natal.heritability}};
  cfg["preconception"] = {{"p_base", c.preconception.p_base},
                          {"q_ref", c.preconception.q_ref},
                          {"h_ref", c.preconception.h_ref},
                          {"alpha_q", c.preconception.alpha_q},
                          {"alpha_h", c.preconception.alpha_h},
                          {"h_cat", c.preconception.h_cat},
                          {"s_cat", c.preconception.s_cat},
                          {"p_floor", c.preconception.p_floor},
                          {"h_comfort", c.preconception.h_comfort},
                          {"comfort_collapse", c.preconception.comfort_collapse},
                          {"comfort_sustain_years", c.preconception.comfort_sustain_years},
                          {"comfort_ramp_years", c.preconception.comfort_ramp_years}};
  cfg["maternal"] = {{"n_crit", c.maternal.n_crit},
                     {"m_max", c.maternal.m_max},
                     {"exponent", c.maternal.exponent}};
  cfg["pairing"] = {{"age_offset", c.pairing.age_offset},
                    {"q_offset", c.pairing.q_offset},
                    {"competition_noise", c.pairing.competition_noise},
                    {"match_noise", c.pairing.match_noise},
                    {"male_window", {c.pairing.male_window[0], c.pairing.male_window[1]}},
                    {"female_window", {c.pairing.female_window[0], c.pairing.female_window[1]}},
                    {"conception_rate", c.pairing.conception_rate}};
  cfg["abstinence"] = {{"grace_years", c.abstinence.grace_years},
                       {"beta", c.abstinence.beta},
                       {"recovery_tau", c.abstinence.recovery_tau}};
  cfg["draft"] = {{"q_threshold", c.draft.q_threshold},
                  {"fraction", c.draft.fraction},
                  {"availability", c.draft.availability}};
  cfg["mountain"] = {{"group_fraction", c.mountain.group_fraction},
                     {"away_years", c.mountain.away_years},
                     {"home_years", c.mountain.home_years}};
  cfg["population"] = {{"initial_size", c.population.initial_size},
                       {"carrying_capacity", c.population.carrying_capacity},
                       {"dt", c.population.dt},
                       {"horizon", c.population.horizon},
                       {"record_interval", c.population.record_interval}};
  cfg["environment"] = {{"sensing_lag", c.environment.sensing_lag},
                        {"harshness", schedule_json(c.environment.harshness)},
                        {"nutrition", schedule_json(c.environment.nutrition)},
                        {"drift",
                         {{"start", c.environment.drift.start},
                          {"rate", c.environment.drift.rate},
                          {"diffusion", c.environment.drift.diffusion}}}};
  return cfg;
}

ordered_json scenario_json(const Scenario& s) {
  ordered_json out;
  out["name"] = s.name;
  out["mode"] = scenario_mode_name(s.mode);
  out["config"] = config_json(s.config);
  out["asexual"] = {{"mutation_scale", s.asexual.mutation_scale},
                    {"fitness_exponent", s.asexual.fitness_exponent},
                    {"birth_rate", s.asexual.birth_rate}};
  ordered_json events = ordered_json::array();
  for (const TimedEvent& ev : s.events) {
    events.push_back({{"t", ev.t}, {"type", event_type_name(ev.type)}});
  }
  out["events"] = events;
  ordered_json targets = ordered_json::array();
  for (const TargetPoint& tp : s.targets) {
    targets.push_back({{"t", tp.t}, {"sr", tp.sr}, {"weight", tp.weight}});
  }
  out["targets"] = targets;
  return out;
}

ordered_json summary_json(const Scenario& scenario, std::uint64_t seed,
                          std::span<const Trajectory> replicates) {
  const double horizon = scenario.config.population.horizon;

  ordered_json reps = ordered_json::array();
  std::vector<double> sr_birth_final;
  std::vector<double> sr_alive_final;
  std::vector<double> final_alive;
  std::uint64_t extinctions = 0;

  for (const Trajectory& traj : replicates) {
    ordered_json r;
    r["seed"] = traj.seed;
    r["final_alive"] = traj.final_alive;
    r["extinct"] = traj.extinct;
    if (traj.extinct) {
      r["extinction_time"] = traj.extinction_time;
      ++extinctions;
    }
    const double sr_b = cohort_sr_at_birth(traj, horizon - 0.5, 1.0);
    put_stat(r, "sr_birth_final_year", sr_b);
    if (std::isfinite(sr_b)) sr_birth_final.push_back(sr_b);
    if (!traj.snapshots.empty()) {
      const Snapshot& last = traj.snapshots.back();
      put_stat(r, "sr_alive_final", last.sr_alive);
      if (std::isfinite(last.sr_alive)) sr_alive_final.push_back(last.sr_alive);
    }
    final_alive.push_back(static_cast<double>(traj.final_alive));
    reps.push_back(r);
  }

  ordered_json out;
  out["scenario"] = scenario.name;
  out["mode"] = scenario_mode_name(scenario.mode);
  out["seed"] = seed;
  out["replicates"] = static_cast<int>(replicates.size());
  out["stats"] = {{"sr_birth_final_year", mean_ci_json(mean_ci(sr_birth_final))},
                  {"sr_alive_final", mean_ci_json(mean_ci(sr_alive_final))},
                  {"final_alive", mean_ci_json(mean_ci(final_alive))},
                  {"extinctions", extinctions},
                  {"extinction_fraction",
                   replicates.empty()
                       ? 0.0
                       : static_cast<double>(extinctions) / static_cast<double>(replicates.size())}};

  if (!scenario.targets.empty()) {
    ordered_json fits = ordered_json::array();
    for (const TargetPoint& tp : scenario.targets) {
      std::vector<double> vals;
      for (const Trajectory& traj : replicates) {
        const double v = cohort_sr_at_birth(traj, tp.t, 1.0);
        if (std::isfinite(v)) vals.push_back(v);
      }
      const MeanCI ci = mean_ci(vals);
      ordered_json f;
      f["t"] = tp.t;
      f["target"] = tp.sr;
      f["weight"] = tp.weight;
      put_stat(f, "fitted", ci.mean);
      put_stat(f, "residual", ci.mean - tp.sr);
      put_stat(f, "ci_lo", ci.lo);
      put_stat(f, "ci_hi", ci.hi);
      fits.push_back(f);
    }
    out["targets"] = fits;
  }

  out["outcomes"] = reps;
  out["config"] = config_json(scenario.config);
  if (scenario.mode == ScenarioMode::tracking) {
    out["asexual"] = {{"mutation_scale", scenario.asexual.mutation_scale},
                      {"fitness_exponent", scenario.asexual.fitness_exponent},
                      {"birth_rate", scenario.asexual.birth_rate}};
  }
  return out;
}

ordered_json calibration_json(const Scenario& scenario, const CalibrationSpec& spec,
                              const CalibrationResult& result, std::uint64_t seed) {
  ordered_json out;
  out["scenario"] = scenario.name;
  out["seed"] = seed;
  out["budget"] = spec.budget;
  out["evaluations"] = result.evaluations;
  out["failed_evaluations"] = result.failed_evaluations;
  out["replicates"] = spec.replicates;
  out["tolerance"] = spec.tolerance;
  ordered_json params = ordered_json::array();
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    params.push_back({{"path", spec.params[i].path},
                      {"lower", spec.params[i].lower},
                      {"upper", spec.params[i].upper},
                      {"fitted", result.best[i]}});
  }
  out["params"] = params;
  put_stat(out, "objective", result.objective);
  ordered_json residuals = ordered_json::array();
  for (std::size_t i = 0; i < result.residuals.size(); ++i) {
    ordered_json r;
    if (i < scenario.targets.size()) {
      r["t"] = scenario.targets[i].t;
      r["target"] = scenario.targets[i].sr;
      r["weight"] = scenario.targets[i].weight;
    }
    put_stat(r, "residual", result.residuals[i]);
    residuals.push_back(r);
  }
  out["residuals"] = residuals;
  out["feasible"] = result.feasible;
  return out;
}

ordered_json race_json(const Scenario& scenario, const RaceResult& result, int replicates,
                       std::uint64_t seed) {
  const auto arm_json = [](const RaceArm& arm) {
    ordered_json a;
    a["extinctions"] = arm.extinctions;
    a["replicates"] = arm.replicates;
    put_stat(a, "p_extinction", arm.p_ext);
    put_stat(a, "ci_lo", arm.ci_lo);
    put_stat(a, "ci_hi", arm.ci_hi);
    a["mean_final_alive"] = arm.mean_final_alive;
    return a;
  };
  ordered_json out;
  out["scenario"] = scenario.name;
  out["seed"] = seed;
  out["replicates"] = replicates;
  out["drift"] = result.drift;
  out["sexual"] = arm_json(result.sexual);
  out["asexual"] = arm_json(result.asexual);
  out["sexual_advantage_significant"] = result.sexual_advantage_significant;
  out["config"] = config_json(scenario.config);
  out["asexual_config"] = {{"mutation_scale", scenario.asexual.mutation_scale},
                           {"fitness_exponent", scenario.asexual.fitness_exponent},
                           {"birth_rate", scenario.asexual.birth_rate}};
  return out;
}

}  // namespace srsim
