#include "srsim/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srsim {

namespace {

// Linear interpolation on a uniform age grid, clamped at both ends.
double interp(const std::vector<double>& times, const std::vector<double>& values, double age) {
  if (age <= times.front()) return values.front();
  if (age >= times.back()) return values.back();
  const double dt = times[1] - times[0];
  const auto i = static_cast<std::size_t>((age - times.front()) / dt);
  const std::size_t lo = std::min(i, times.size() - 2);
  const double w = (age - times[lo]) / (times[lo + 1] - times[lo]);
  return values[lo] * (1.0 - w) + values[lo + 1] * w;
}

}  // namespace

void CohortConfig::validate() const {
  if (!(sr0 > 0.0)) throw ConfigError("cohort: sr0 must be > 0");
  if (!(dt > 0.0)) throw ConfigError("cohort: dt must be > 0");
  if (!(t_max >= dt)) throw ConfigError("cohort: t_max must be >= dt");
  if (n_strata < 2) throw ConfigError("cohort: n_strata must be >= 2");
  if (harshness < 0.0) throw ConfigError("cohort: harshness must be >= 0");
  if (nutrition < 0.0) throw ConfigError("cohort: nutrition must be >= 0");
}

CohortTable cohort_solve(const HazardParams& hazard_params, const QualityModelConfig& quality_cfg,
                         const NatalQualityConfig& natal, const MaternalFilterParams& maternal,
                         const CohortConfig& cfg, const Environment* env) {
  cfg.validate();
  hazard_params.validate();
  quality_cfg.validate();
  natal.validate();
  maternal.validate();

  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
  const int n = cfg.n_strata;

  CohortTable tab;
  tab.sr0 = cfg.sr0;
  tab.gestation = hazard_params.gestation;
  tab.times.resize(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) tab.times[i] = static_cast<double>(i) * cfg.dt;

  tab.strata_q_male.resize(n);
  tab.strata_q_female.resize(n);
  for (int j = 0; j < n; ++j) {
    const double p = (j + 0.5) / n;
    tab.strata_q_male[j] = natal.quantile(Sex::male, p);
    tab.strata_q_female[j] = natal.quantile(Sex::female, p);
  }

  tab.l_male.assign(n, std::vector<double>(n_steps + 1, 1.0));
  tab.l_female.assign(n, std::vector<double>(n_steps + 1, 1.0));

  for (std::size_t i = 0; i < n_steps; ++i) {
    const double age = tab.times[i];
    const double t_abs = cfg.t_conceived + age;
    const double h_env = env ? env->harshness.at(t_abs) : cfg.harshness;
    const double nut = env ? env->nutrition.at(t_abs) : cfg.nutrition;
    const bool in_utero = age < hazard_params.gestation;
    const double male_mult = in_utero ? maternal_multiplier(nut, maternal) : 1.0;

    for (int j = 0; j < n; ++j) {
      const double qm = quality_at_age(tab.strata_q_male[j], age, quality_cfg);
      const double hm = hazard(Sex::male, age, qm, h_env, hazard_params) * male_mult;
      tab.l_male[j][i + 1] = tab.l_male[j][i] * std::exp(-hm * cfg.dt);

      const double qf = quality_at_age(tab.strata_q_female[j], age, quality_cfg);
      const double hf = hazard(Sex::female, age, qf, h_env, hazard_params);
      tab.l_female[j][i + 1] = tab.l_female[j][i] * std::exp(-hf * cfg.dt);
    }
  }

  tab.sr.resize(n_steps + 1);
  tab.q_mean_male.resize(n_steps + 1);
  tab.q_mean_female.resize(n_steps + 1);
  tab.survival_male.resize(n_steps + 1);
  tab.survival_female.resize(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double age = tab.times[i];
    double lm = 0.0, lf = 0.0, qm_sum = 0.0, qf_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      lm += tab.l_male[j][i];
      lf += tab.l_female[j][i];
      qm_sum += tab.l_male[j][i] * quality_at_age(tab.strata_q_male[j], age, quality_cfg);
      qf_sum += tab.l_female[j][i] * quality_at_age(tab.strata_q_female[j], age, quality_cfg);
    }
    tab.survival_male[i] = lm / n;
    tab.survival_female[i] = lf / n;
    tab.sr[i] = lf > 0.0 ? cfg.sr0 * lm / lf : undefined_stat;
    tab.q_mean_male[i] = lm > 0.0 ? qm_sum / lm : undefined_stat;
    tab.q_mean_female[i] = lf > 0.0 ? qf_sum / lf : undefined_stat;
  }

  const auto integrate = [&](const std::vector<std::vector<double>>& l,
                             std::vector<std::vector<double>>& cum) {
    cum.assign(n, std::vector<double>(n_steps + 1, 0.0));
    for (int j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n_steps; ++i) {
        cum[j][i + 1] = cum[j][i] + 0.5 * (l[j][i] + l[j][i + 1]) * cfg.dt;
      }
    }
  };
  integrate(tab.l_male, tab.cum_male);
  integrate(tab.l_female, tab.cum_female);
  return tab;
}

double CohortTable::sr_at(double age) const { return interp(times, sr, age); }

double CohortTable::q_mean_at(Sex sex, double age) const {
  return interp(times, sex == Sex::male ? q_mean_male : q_mean_female, age);
}

double CohortTable::survivorship(Sex sex, int stratum, double age) const {
  const auto& l = sex == Sex::male ? l_male : l_female;
  return interp(times, l[stratum], age);
}

double CohortTable::mean_survivorship(Sex sex, double age) const {
  return interp(times, sex == Sex::male ? survival_male : survival_female, age);
}

double CohortTable::expected_years(Sex sex, int stratum, double from_age) const {
  const auto& cum = sex == Sex::male ? cum_male : cum_female;
  const double l_from = survivorship(sex, stratum, from_age);
  if (l_from <= 0.0) return 0.0;
  const double mass = cum[stratum].back() - interp(times, cum[stratum], from_age);
  return mass / l_from;
}

double CohortTable::sample_stationary_age(Sex sex, int stratum, double u, double min_age) const {
  const auto& cum = sex == Sex::male ? cum_male : cum_female;
  const auto& c = cum[stratum];
  const double c_min = interp(times, c, min_age);
  const double mass = c.back() - c_min;
  if (mass <= 0.0) return min_age;
  const double target = c_min + u * mass;
  const auto it = std::upper_bound(c.begin(), c.end(), target);
  if (it == c.begin()) return std::max(min_age, times.front());
  if (it == c.end()) return times.back();
  const auto hi = static_cast<std::size_t>(it - c.begin());
  const std::size_t lo = hi - 1;
  const double seg = c[hi] - c[lo];
  const double w = seg > 0.0 ? (target - c[lo]) / seg : 0.0;
  return std::max(min_age, times[lo] + w * (times[hi] - times[lo]));
}

int CohortTable::sample_stationary_stratum(Sex sex, double u, double min_age) const {
  const auto& cum = sex == Sex::male ? cum_male : cum_female;
  const int n = static_cast<int>(cum.size());
  double total = 0.0;
  for (const auto& c : cum) total += c.back() - interp(times, c, min_age);
  if (total <= 0.0) return n - 1;
  double target = u * total;
  for (int j = 0; j < n; ++j) {
    const double w = cum[j].back() - interp(times, cum[j], min_age);
    if (target < w) return j;
    target -= w;
  }
  return n - 1;
}

double CohortTable::stationary_mass(Sex sex, double min_age) const {
  const auto& cum = sex == Sex::male ? cum_male : cum_female;
  double total = 0.0;
  for (const auto& c : cum) {
    total += c.back() - interp(times, c, min_age);
  }
  return total / static_cast<double>(cum.size());
}

}  // namespace srsim
