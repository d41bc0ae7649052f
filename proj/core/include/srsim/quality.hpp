#pragma once

#include "srsim/types.hpp"

namespace srsim {

enum class QualityCombination : std::uint8_t { linear = 0, geometric = 1 };

// Organism quality is a dimensionless scalar in (0, 1] mixed from three
// components: a constant genetic level, a decaying "resource" level and a
// rising "experience" level.
struct QualityModelConfig {
  double w_genetic = 1.0;
  double w_aging = 0.0;
  double w_wisdom = 0.0;
  double aging_rate = 0.0;     // 1/years
  double wisdom_rate = 0.0;    // 1/years
  double wisdom_floor = 0.25;  // newborn experience level as a fraction of q_genetic
  QualityCombination combination = QualityCombination::linear;

  void validate() const;
};

struct QualityComponents {
  double genetic = 0.0;
  double aging = 0.0;
  double wisdom = 0.0;
};

QualityComponents quality_components(double q_genetic, double age, const QualityModelConfig& cfg);

double combine_quality(const QualityComponents& c, const QualityModelConfig& cfg);

double quality_at_age(double q_genetic, double age, const QualityModelConfig& cfg);

// Current quality of a live (or in-utero) individual at absolute time t.
// Throws std::domain_error when t precedes conception or the individual is dead.
double quality(const Individual& ind, double t, const QualityModelConfig& cfg);

class RngStream;

// Distribution q_genetic is drawn from at conception: a Beta(alpha, beta)
// rescaled to [q_min, 1], with male draws damped by male_shift so that male
// mean natal quality starts below female.
struct NatalQualityConfig {
  double alpha = 2.4;
  double beta = 2.4;
  double q_min = 0.20;
  double male_shift = 0.051726;
  double heritability = 0.0;  // blend weight toward the midparent q

  void validate() const;
  // midparent_q < 0 or heritability == 0 yields a pure population draw.
  double sample(Sex sex, RngStream& rng, double midparent_q = -1.0) const;
  double quantile(Sex sex, double p) const;
  double mean(Sex sex) const;
};

}  // namespace srsim
