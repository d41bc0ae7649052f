#pragma once

#include <vector>

#include "srsim/types.hpp"

namespace srsim {

// Tolerance for age-vs-band-edge comparisons. Step times accumulate in
// floating point, so an age meant to equal a band edge can come out a few
// ulps low; anything within this margin counts as past the edge. Far below
// any usable time step, far above accumulated rounding.
inline constexpr double kAgeEps = 1e-9;

// Mortality model. Baselines are deaths per person-year at Q = 1, H = 0;
// the realized rate is b_s(age) * (1+H)^gamma_s / Q^kappa_s. Ages below
// `gestation` use the fetal baselines u_s instead of the age bands.
struct HazardParams {
  std::vector<double> band_starts;   // ascending, band_starts[0] == 0 (from birth)
  std::vector<double> male_rates;    // b_m per band
  std::vector<double> female_rates;  // b_f per band
  double fetal_male = 0.0;           // u_m
  double fetal_female = 0.0;         // u_f
  double harshness_exp_male = 1.0;   // gamma_m
  double harshness_exp_female = 1.0;
  double quality_exp_male = 1.6;     // kappa_m
  double quality_exp_female = 1.2;
  double gestation = 0.75;           // t_b: fetal/born switch age
  // Permits b_m < b_f or kappa_m < kappa_f for studying inverted regimes.
  bool allow_inverted_sex_ordering = false;

  double baseline(Sex sex, double age) const;
  void validate() const;
};

// Death rate per year. Throws std::domain_error for Q outside (0, 1] or
// negative age.
double hazard(Sex sex, double age, double q, double harshness, const HazardParams& params);

}  // namespace srsim
