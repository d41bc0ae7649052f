#include "srsim/quality.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "srsim/rng.hpp"

namespace srsim {

void QualityModelConfig::validate() const {
  if (w_genetic < 0 || w_aging < 0 || w_wisdom < 0)
    throw ConfigError("quality: component weights must be nonnegative");
  const double sum = w_genetic + w_aging + w_wisdom;
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("quality: component weights must sum to 1");
  if (aging_rate < 0) throw ConfigError("quality: aging_rate must be >= 0");
  if (wisdom_rate < 0) throw ConfigError("quality: wisdom_rate must be >= 0");
  if (wisdom_floor <= 0 || wisdom_floor > 1)
    throw ConfigError("quality: wisdom_floor must be in (0, 1]");
}

QualityComponents quality_components(double q_genetic, double age, const QualityModelConfig& cfg) {
  if (age < 0) throw std::domain_error("quality: age before conception");
  QualityComponents c;
  c.genetic = q_genetic;
  c.aging = q_genetic * std::exp(-cfg.aging_rate * age);
  const double decay = std::exp(-cfg.wisdom_rate * age);
  c.wisdom = q_genetic * (1.0 - decay) + cfg.wisdom_floor * q_genetic * decay;
  return c;
}

double combine_quality(const QualityComponents& c, const QualityModelConfig& cfg) {
  if (cfg.combination == QualityCombination::linear)
    return cfg.w_genetic * c.genetic + cfg.w_aging * c.aging + cfg.w_wisdom * c.wisdom;
  return std::pow(c.genetic, cfg.w_genetic) * std::pow(c.aging, cfg.w_aging) *
         std::pow(c.wisdom, cfg.w_wisdom);
}

double quality_at_age(double q_genetic, double age, const QualityModelConfig& cfg) {
  return combine_quality(quality_components(q_genetic, age, cfg), cfg);
}

double quality(const Individual& ind, double t, const QualityModelConfig& cfg) {
  if (ind.state == LifeState::dead) throw std::domain_error("quality: individual is dead");
  return quality_at_age(ind.q_genetic, ind.age(t), cfg);
}

void NatalQualityConfig::validate() const {
  if (alpha <= 0 || beta <= 0) throw ConfigError("natal_quality: alpha and beta must be > 0");
  if (q_min <= 0 || q_min >= 1) throw ConfigError("natal_quality: q_min must be in (0, 1)");
  if (male_shift < 0 || male_shift >= 1)
    throw ConfigError("natal_quality: male_shift must be in [0, 1)");
  if (heritability < 0 || heritability > 1)
    throw ConfigError("natal_quality: heritability must be in [0, 1]");
}

double NatalQualityConfig::sample(Sex sex, RngStream& rng, double midparent_q) const {
  const double b = rng.beta(alpha, beta);
  double q = q_min + (1.0 - q_min) * b;
  if (heritability > 0 && midparent_q > 0) {
    q = heritability * midparent_q + (1.0 - heritability) * q;
    q = std::min(1.0, std::max(q_min, q));
  }
  return sex == Sex::male ? q * (1.0 - male_shift) : q;
}

double NatalQualityConfig::quantile(Sex sex, double p) const {
  const double b = boost::math::ibeta_inv(alpha, beta, p);
  const double q = q_min + (1.0 - q_min) * b;
  return sex == Sex::male ? q * (1.0 - male_shift) : q;
}

double NatalQualityConfig::mean(Sex sex) const {
  const double q = q_min + (1.0 - q_min) * alpha / (alpha + beta);
  return sex == Sex::male ? q * (1.0 - male_shift) : q;
}

}  // namespace srsim
