#include "srsim/profile.hpp"

#include <algorithm>
#include <cmath>

namespace srsim {

std::vector<double> SRProfile::bin_centers() const {
  std::vector<double> c(sr.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = grid.bin_center(static_cast<int>(k));
  return c;
}

SRProfile sr_profile(std::span<const Individual> population, const AgeGrid& grid, double t) {
  SRProfile p;
  p.grid = grid;
  const int n = grid.bins();
  p.males.assign(n, 0);
  p.females.assign(n, 0);
  p.sr.assign(n, undefined_stat);
  for (const Individual& ind : population) {
    if (ind.state == LifeState::dead) continue;
    const int k = grid.bin_of(ind.age(t));
    if (k < 0) continue;
    (ind.sex == Sex::male ? p.males : p.females)[static_cast<std::size_t>(k)] += 1;
  }
  for (int k = 0; k < n; ++k)
    p.sr[static_cast<std::size_t>(k)] =
        sr_from_counts(static_cast<double>(p.males[static_cast<std::size_t>(k)]),
                       static_cast<double>(p.females[static_cast<std::size_t>(k)]));
  return p;
}

void accumulate_profile(SRProfile& into, const SRProfile& snap) {
  if (into.males.empty()) {
    into = snap;
    return;
  }
  for (std::size_t k = 0; k < into.males.size(); ++k) {
    into.males[k] += snap.males[k];
    into.females[k] += snap.females[k];
    into.sr[k] = sr_from_counts(static_cast<double>(into.males[k]),
                                static_cast<double>(into.females[k]));
  }
}

std::vector<double> moving_average(std::span<const double> values, int window) {
  const int n = static_cast<int>(values.size());
  const int r = window / 2;
  std::vector<double> out(values.size(), undefined_stat);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    int cnt = 0;
    for (int j = std::max(0, k - r); j <= std::min(n - 1, k + r); ++j) {
      if (std::isnan(values[static_cast<std::size_t>(j)])) continue;
      sum += values[static_cast<std::size_t>(j)];
      ++cnt;
    }
    if (cnt > 0) out[static_cast<std::size_t>(k)] = sum / cnt;
  }
  return out;
}

namespace {

// first index with a defined value, or -1
int first_defined(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isnan(v[i])) return static_cast<int>(i);
  return -1;
}

}  // namespace

ParityResult parity_age_numbers(std::span<const double> ages, std::span<const double> sr) {
  const int start = first_defined(sr);
  if (start < 0 || ages.size() != sr.size()) return {ParityStatus::no_data, undefined_stat};
  const auto s = static_cast<std::size_t>(start);
  if (sr[s] <= 100.0) return {ParityStatus::starts_below, undefined_stat};
  double prev_age = ages[s];
  double prev_sr = sr[s];
  for (std::size_t k = s + 1; k < sr.size(); ++k) {
    if (std::isnan(sr[k])) continue;
    if (sr[k] <= 100.0) {
      const double drop = prev_sr - sr[k];
      if (drop < 1e-9) return {ParityStatus::found, ages[k]};
      const double frac = (prev_sr - 100.0) / drop;
      return {ParityStatus::found, prev_age + frac * (ages[k] - prev_age)};
    }
    prev_age = ages[k];
    prev_sr = sr[k];
  }
  return {ParityStatus::never_crosses, undefined_stat};
}

ParityResult parity_age_numbers(const SRProfile& profile, int smooth_window) {
  const std::vector<double> smoothed = moving_average(profile.sr, smooth_window);
  const std::vector<double> centers = profile.bin_centers();
  return parity_age_numbers(centers, smoothed);
}

ParityResult parity_age_quality(std::span<const double> ages, std::span<const double> q_male,
                                std::span<const double> q_female) {
  if (ages.empty() || q_male.size() != ages.size() || q_female.size() != ages.size())
    return {ParityStatus::no_data, undefined_stat};
  double prev_gap = undefined_stat;  // q_female - q_male, positive before crossing
  double prev_age = 0.0;
  for (std::size_t k = 0; k < ages.size(); ++k) {
    if (std::isnan(q_male[k]) || std::isnan(q_female[k])) continue;
    const double gap = q_female[k] - q_male[k];
    if (std::isnan(prev_gap)) {
      if (gap <= 0.0) return {ParityStatus::found, ages[k]};
    } else if (gap <= 0.0) {
      const double drop = prev_gap - gap;
      if (drop < 1e-9) return {ParityStatus::found, ages[k]};
      return {ParityStatus::found, prev_age + (prev_gap / drop) * (ages[k] - prev_age)};
    }
    prev_gap = gap;
    prev_age = ages[k];
  }
  if (std::isnan(prev_gap)) return {ParityStatus::no_data, undefined_stat};
  return {ParityStatus::never_crosses, undefined_stat};
}

std::vector<OrderStat> sr_by_birth_order(std::span<const BirthRecord> records,
                                         std::uint32_t max_order) {
  std::vector<OrderStat> out(max_order + 1);
  for (const BirthRecord& r : records) {
    if (!r.born) continue;
    if (r.father_birth_order == 0 || r.father_birth_order > max_order) continue;
    auto& slot = out[r.father_birth_order];
    (r.sex == Sex::male ? slot.males : slot.females) += 1;
  }
  for (auto& slot : out)
    slot.sr = sr_from_counts(static_cast<double>(slot.males), static_cast<double>(slot.females));
  return out;
}

RenewalEstimate renewal_rate(std::span<const PopSample> window, double drift_tolerance) {
  RenewalEstimate est;
  if (window.size() < 2) return est;
  const double span_years = window.back().t - window.front().t;
  if (span_years <= 0) return est;
  est.rate = (window.back().births_cum - window.front().births_cum) / span_years;
  double lo = window.front().alive, hi = lo, sum = 0.0;
  for (const PopSample& s : window) {
    lo = std::min(lo, s.alive);
    hi = std::max(hi, s.alive);
    sum += s.alive;
  }
  const double mean = sum / static_cast<double>(window.size());
  est.stationary = mean > 0.0 && (hi - lo) / mean < drift_tolerance;
  return est;
}

}  // namespace srsim
