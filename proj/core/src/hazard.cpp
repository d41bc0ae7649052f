#include "srsim/hazard.hpp"

#include <algorithm>
#include <cmath>

namespace srsim {

double HazardParams::baseline(Sex sex, double age) const {
  // Ages arrive as differences of accumulated step times; snap so a value a
  // hair below a band edge still lands in the band it was meant to reach.
  const double snapped = age + kAgeEps;
  if (snapped < gestation) return sex == Sex::male ? fetal_male : fetal_female;
  const auto& rates = sex == Sex::male ? male_rates : female_rates;
  auto it = std::upper_bound(band_starts.begin(), band_starts.end(), snapped);
  const auto idx = static_cast<std::size_t>(it - band_starts.begin()) - 1;
  return rates[idx];
}

void HazardParams::validate() const {
  if (band_starts.empty()) throw ConfigError("hazards: at least one age band required");
  if (band_starts.front() != 0.0) throw ConfigError("hazards: first age band must start at 0");
  for (std::size_t i = 1; i < band_starts.size(); ++i)
    if (band_starts[i] <= band_starts[i - 1])
      throw ConfigError("hazards: band starts must be strictly increasing");
  if (male_rates.size() != band_starts.size() || female_rates.size() != band_starts.size())
    throw ConfigError("hazards: rate vectors must match band count");
  for (double r : male_rates)
    if (!(r >= 0)) throw ConfigError("hazards: male rates must be >= 0");
  for (double r : female_rates)
    if (!(r >= 0)) throw ConfigError("hazards: female rates must be >= 0");
  if (fetal_male < 0 || fetal_female < 0) throw ConfigError("hazards: fetal rates must be >= 0");
  if (harshness_exp_male < 0 || harshness_exp_female < 0)
    throw ConfigError("hazards: harshness exponents must be >= 0");
  if (quality_exp_male < 0 || quality_exp_female < 0)
    throw ConfigError("hazards: quality exponents must be >= 0");
  if (gestation <= 0) throw ConfigError("hazards: gestation must be > 0");
  if (!allow_inverted_sex_ordering) {
    for (std::size_t i = 0; i < band_starts.size(); ++i)
      if (male_rates[i] < female_rates[i])
        throw ConfigError(
            "hazards: male baseline below female in an age band "
            "(set allow_inverted_sex_ordering to permit)");
    if (quality_exp_male < quality_exp_female)
      throw ConfigError(
          "hazards: male quality exponent below female "
          "(set allow_inverted_sex_ordering to permit)");
    if (fetal_male < fetal_female)
      throw ConfigError(
          "hazards: male fetal baseline below female "
          "(set allow_inverted_sex_ordering to permit)");
  }
}

double hazard(Sex sex, double age, double q, double harshness, const HazardParams& params) {
  if (!(q > 0.0) || q > 1.0) throw std::domain_error("hazard: Q outside (0, 1]");
  if (age < 0.0) throw std::domain_error("hazard: negative age");
  const double gamma =
      sex == Sex::male ? params.harshness_exp_male : params.harshness_exp_female;
  const double kappa = sex == Sex::male ? params.quality_exp_male : params.quality_exp_female;
  return params.baseline(sex, age) * std::pow(1.0 + harshness, gamma) / std::pow(q, kappa);
}

}  // namespace srsim
