#pragma once

#include <vector>

#include "srsim/environment.hpp"
#include "srsim/hazard.hpp"
#include "srsim/quality.hpp"
#include "srsim/reproduction.hpp"
#include "srsim/types.hpp"

namespace srsim {

// Deterministic companion of the agent simulation: one conception cohort is
// split into equal-probability natal-quality strata per sex and each stratum's
// survivorship is advanced with the same left-endpoint exponential step the
// agent engine uses, so the two agree in distribution and differ only by
// sampling noise.
struct CohortConfig {
  double sr0 = 150.0;  // males per 100 females at conception
  double dt = 0.0625;
  double t_max = 100.0;
  int n_strata = 64;
  double harshness = 0.3;   // held constant unless an environment is supplied
  double nutrition = 1.0;
  double t_conceived = 0.0;  // absolute conception time when following a schedule

  void validate() const;
};

struct CohortTable {
  double sr0 = 0.0;
  double gestation = 0.0;
  std::vector<double> times;  // ages from conception, uniform grid
  std::vector<double> sr;
  std::vector<double> q_mean_male;
  std::vector<double> q_mean_female;
  std::vector<double> survival_male;  // stratum-averaged survivorship
  std::vector<double> survival_female;
  std::vector<double> strata_q_male;  // natal quality per stratum
  std::vector<double> strata_q_female;
  std::vector<std::vector<double>> l_male;  // [stratum][time index]
  std::vector<std::vector<double>> l_female;
  std::vector<std::vector<double>> cum_male;  // running trapezoid integral of l
  std::vector<std::vector<double>> cum_female;

  int n_strata() const { return static_cast<int>(strata_q_male.size()); }

  double sr_at(double age) const;
  double q_mean_at(Sex sex, double age) const;
  double survivorship(Sex sex, int stratum, double age) const;
  double mean_survivorship(Sex sex, double age) const;

  // Person-years lived past `from_age` per individual alive at `from_age`.
  double expected_years(Sex sex, int stratum, double from_age) const;

  // Inverse-CDF draw from the stationary age density (proportional to
  // survivorship) restricted to ages >= min_age; u in [0, 1).
  double sample_stationary_age(Sex sex, int stratum, double u, double min_age = 0.0) const;

  // Stratum draw weighted by stationary person-years past min_age. Standing
  // stock over-represents high-survival strata relative to the natal mix, so
  // a uniform stratum pick would seed the population too low in quality.
  int sample_stationary_stratum(Sex sex, double u, double min_age = 0.0) const;

  // Total stationary person-years per conception, ages >= min_age.
  double stationary_mass(Sex sex, double min_age = 0.0) const;
};

CohortTable cohort_solve(const HazardParams& hazard_params, const QualityModelConfig& quality_cfg,
                         const NatalQualityConfig& natal, const MaternalFilterParams& maternal,
                         const CohortConfig& cfg, const Environment* env = nullptr);

}  // namespace srsim
