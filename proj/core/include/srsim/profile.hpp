#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srsim/types.hpp"

namespace srsim {

struct AgeGrid {
  double bin_width = 2.0;
  double max_age = 100.0;

  int bins() const { return static_cast<int>(max_age / bin_width + 0.5); }
  double bin_start(int k) const { return k * bin_width; }
  double bin_center(int k) const { return (k + 0.5) * bin_width; }
  // -1 when the age falls outside the grid
  int bin_of(double age) const {
    if (age < 0.0 || age >= max_age) return -1;
    return static_cast<int>(age / bin_width);
  }
};

// Age-resolved counts of the living by sex. sr[k] carries the undefined
// sentinel (NaN) where a bin has no females.
struct SRProfile {
  AgeGrid grid;
  std::vector<std::int64_t> males;
  std::vector<std::int64_t> females;
  std::vector<double> sr;

  std::vector<double> bin_centers() const;
};

SRProfile sr_profile(std::span<const Individual> population, const AgeGrid& grid, double t);

// Accumulates counts from several snapshots into one profile (person-time
// pooling); sr is refreshed from the summed counts.
void accumulate_profile(SRProfile& into, const SRProfile& snap);

// Centered moving average of odd width. Undefined entries are skipped; an
// entry with no defined neighbors stays undefined.
std::vector<double> moving_average(std::span<const double> values, int window);

enum class ParityStatus : std::uint8_t {
  found = 0,
  starts_below,    // SR does not exceed 100 at the first defined age
  never_crosses,   // SR stays above 100 over the whole grid
  no_data,
};

struct ParityResult {
  ParityStatus status = ParityStatus::no_data;
  double age = undefined_stat;

  bool ok() const { return status == ParityStatus::found; }
};

// First age where SR(t) <= 100, linearly interpolated between grid points.
ParityResult parity_age_numbers(std::span<const double> ages, std::span<const double> sr);

// Smooths the profile first (centered moving average), then finds the crossing.
ParityResult parity_age_numbers(const SRProfile& profile, int smooth_window = 3);

// First age where mean male quality reaches mean female quality. Equal curves
// cross at the first grid point.
ParityResult parity_age_quality(std::span<const double> ages, std::span<const double> q_male,
                                std::span<const double> q_female);

struct BirthRecord {
  double t_conceived = 0.0;
  std::uint32_t father_birth_order = 0;
  Sex sex = Sex::female;
  std::uint8_t father_group = 0;
  bool born = false;  // completed gestation
};

struct OrderStat {
  std::int64_t males = 0;
  std::int64_t females = 0;
  double sr = undefined_stat;
};

// SR among born children of each father_birth_order, indices 1..max_order
// (slot 0 unused). Empty orders carry the undefined sentinel.
std::vector<OrderStat> sr_by_birth_order(std::span<const BirthRecord> records,
                                         std::uint32_t max_order);

struct PopSample {
  double t = 0.0;
  double alive = 0.0;
  double births_cum = 0.0;
};

struct RenewalEstimate {
  double rate = 0.0;      // births per year over the window
  bool stationary = false;
};

// Births/year over the sampled window; stationary iff the population size
// stays within drift_tolerance (relative spread) over the window.
RenewalEstimate renewal_rate(std::span<const PopSample> window, double drift_tolerance = 0.05);

}  // namespace srsim
