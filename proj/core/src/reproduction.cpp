#include "srsim/reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srsim {

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void PreconceptionParams::validate() const {
  if (!(p_floor > 0.0 && p_floor < p_base && p_base < 1.0)) {
    throw ConfigError("preconception: requires 0 < p_floor < p_base < 1");
  }
  if (!(q_ref > 0.0 && q_ref <= 1.0)) {
    throw ConfigError("preconception: q_ref must lie in (0, 1]");
  }
  if (h_ref < 0.0) {
    throw ConfigError("preconception: h_ref must be >= 0");
  }
  if (alpha_q < 0.0 || alpha_h < 0.0) {
    throw ConfigError("preconception: alpha_q and alpha_h must be >= 0");
  }
  if (!(h_cat > 0.0)) {
    throw ConfigError("preconception: h_cat must be > 0");
  }
  if (!(s_cat > 0.0)) {
    throw ConfigError("preconception: s_cat must be > 0");
  }
  if (!(h_comfort < h_cat)) {
    throw ConfigError("preconception: requires h_comfort < h_cat");
  }
  if (comfort_sustain_years < 0.0 || comfort_ramp_years <= 0.0) {
    throw ConfigError("preconception: comfort_sustain_years >= 0 and comfort_ramp_years > 0");
  }
}

double preconception_sr(double q_father, double h_perceived, const PreconceptionParams& params) {
  if (!(q_father > 0.0) || h_perceived < 0.0) {
    throw std::domain_error("preconception_sr: q_father must be > 0 and h_perceived >= 0");
  }
  const double h_capped = std::min(h_perceived, params.h_cat);
  const double core = logit(params.p_base) + params.alpha_q * (params.q_ref - q_father) +
                      params.alpha_h * (h_capped - params.h_ref);
  const double gate = 1.0 / (1.0 + std::exp(params.s_cat * (h_perceived - params.h_cat)));
  return params.p_floor + gate * (sigmoid(core) - params.p_floor);
}

double comfort_collapse_weight(double sustained_comfort_years, const PreconceptionParams& params) {
  if (!params.comfort_collapse) {
    return 0.0;
  }
  const double excess = sustained_comfort_years - params.comfort_sustain_years;
  if (excess <= 0.0) {
    return 0.0;
  }
  return std::min(1.0, excess / params.comfort_ramp_years);
}

double apply_comfort_collapse(double p_male, double weight, const PreconceptionParams& params) {
  const double w = std::clamp(weight, 0.0, 1.0);
  return params.p_floor + (1.0 - w) * (p_male - params.p_floor);
}

void MaternalFilterParams::validate() const {
  if (!(n_crit > 0.0 && n_crit < 1.0)) {
    throw ConfigError("maternal_filter: n_crit must lie in (0, 1)");
  }
  if (m_max < 1.0) {
    throw ConfigError("maternal_filter: m_max must be >= 1");
  }
  if (!(exponent > 0.0)) {
    throw ConfigError("maternal_filter: exponent must be > 0");
  }
}

double maternal_multiplier(double nutrition, const MaternalFilterParams& params) {
  if (nutrition < 0.0) {
    throw std::domain_error("maternal_multiplier: nutrition must be >= 0");
  }
  if (nutrition >= params.n_crit) {
    return 1.0;
  }
  const double deficit = (params.n_crit - nutrition) / params.n_crit;
  return 1.0 + (params.m_max - 1.0) * std::pow(deficit, params.exponent);
}

void PairingParams::validate() const {
  if (competition_noise < 0.0) {
    throw ConfigError("pairing: competition_noise must be >= 0");
  }
  if (match_noise < 0.0) {
    throw ConfigError("pairing: match_noise must be >= 0");
  }
  if (!(male_window[0] >= 0.0 && male_window[0] < male_window[1])) {
    throw ConfigError("pairing: male eligibility window must satisfy 0 <= lo < hi");
  }
  if (!(female_window[0] >= 0.0 && female_window[0] < female_window[1])) {
    throw ConfigError("pairing: female eligibility window must satisfy 0 <= lo < hi");
  }
  if (!(conception_rate > 0.0)) {
    throw ConfigError("pairing: conception_rate must be > 0");
  }
}

std::vector<PairedIndices> pair_individuals(std::span<const Individual> population,
                                            std::span<const std::uint32_t> male_pool,
                                            std::span<const std::uint32_t> female_pool, double t,
                                            const PairingParams& params,
                                            const QualityModelConfig& quality_cfg,
                                            RngStream& rng) {
  struct Keyed {
    double key;
    std::uint32_t index;
  };
  const auto by_key = [](const Keyed& a, const Keyed& b) {
    return a.key < b.key || (a.key == b.key && a.index < b.index);
  };

  const std::size_t n = std::min(male_pool.size(), female_pool.size());
  if (n == 0) return {};

  // Surplus males lose a noisy quality contest and sit the step out.
  std::vector<std::uint32_t> males(male_pool.begin(), male_pool.end());
  if (males.size() > n) {
    std::vector<Keyed> contest;
    contest.reserve(males.size());
    for (std::uint32_t idx : males) {
      double score = quality(population[idx], t, quality_cfg);
      if (params.competition_noise > 0.0) {
        score += rng.normal(0.0, params.competition_noise);
      }
      contest.push_back({-score, idx});
    }
    std::sort(contest.begin(), contest.end(), by_key);
    for (std::size_t i = 0; i < n; ++i) males[i] = contest[i].index;
    males.resize(n);
  }

  // Surplus females sit out at random.
  std::vector<std::uint32_t> females(female_pool.begin(), female_pool.end());
  if (females.size() > n) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(females.size() - i));
      std::swap(females[i], females[j]);
    }
    females.resize(n);
  }

  const auto age_key = [&](std::uint32_t idx, bool is_male) {
    double key = population[idx].age(t);
    if (is_male) key -= params.age_offset;
    if (params.match_noise > 0.0) key += rng.normal(0.0, params.match_noise);
    return key;
  };

  std::vector<Keyed> male_keys;
  male_keys.reserve(n);
  for (std::uint32_t idx : males) male_keys.push_back({age_key(idx, true), idx});
  std::vector<Keyed> female_keys;
  female_keys.reserve(n);
  for (std::uint32_t idx : females) female_keys.push_back({age_key(idx, false), idx});
  std::sort(male_keys.begin(), male_keys.end(), by_key);
  std::sort(female_keys.begin(), female_keys.end(), by_key);

  std::vector<PairedIndices> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs.push_back({male_keys[i].index, female_keys[i].index});
  }
  return pairs;
}

Individual conceive_now(Individual& father, Individual& mother, double t,
                        const ReproductionContext& ctx, IndividualId child_id, RngStream& rng) {
  const double q_father = quality(father, t, *ctx.quality);
  const double h_perceived =
      perceived_harshness(father, *ctx.env, t, father.sensed_abstinence, *ctx.abstinence);
  double p_male = preconception_sr(q_father, h_perceived, *ctx.preconception);
  if (ctx.comfort_weight > 0.0) {
    p_male = apply_comfort_collapse(p_male, ctx.comfort_weight, *ctx.preconception);
  }

  Individual child;
  child.id = child_id;
  child.father_id = father.id;
  child.mother_id = mother.id;
  child.t_conceived = t;
  child.state = LifeState::in_utero;
  child.sex = rng.bernoulli(p_male) ? Sex::male : Sex::female;
  child.group = mother.group;

  const double parent_mid = 0.5 * (father.q_genetic + mother.q_genetic);
  child.q_genetic = ctx.natal->sample(child.sex, rng, parent_mid);
  child.genotype = father.genotype;

  father.conceptions += 1;
  child.father_birth_order = father.conceptions;
  father.sensed_abstinence = 0.0;
  mother.pregnant_until = t + ctx.gestation;
  return child;
}

std::optional<Individual> conceive(Individual& father, Individual& mother, double t, double dt,
                                   double rate_per_year, const ReproductionContext& ctx,
                                   IndividualId child_id, RngStream& rng) {
  const double p_attempt = 1.0 - std::exp(-rate_per_year * dt);
  if (!rng.bernoulli(p_attempt)) {
    return std::nullopt;
  }
  return conceive_now(father, mother, t, ctx, child_id, rng);
}

DraftSplit draft_filter(std::span<const Individual> population,
                        std::span<const std::uint32_t> eligible_males, double t,
                        double q_threshold, double draft_fraction,
                        const QualityModelConfig& quality_cfg) {
  if (q_threshold < 0.0 || draft_fraction < 0.0 || draft_fraction > 1.0) {
    throw std::domain_error("draft_filter: q_threshold >= 0 and draft_fraction in [0, 1]");
  }
  struct Ranked {
    double q;
    std::uint32_t index;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(eligible_males.size());
  for (std::uint32_t idx : eligible_males) {
    ranked.push_back({quality(population[idx], t, quality_cfg), idx});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return a.q > b.q || (a.q == b.q && a.index < b.index);
  });

  const std::size_t cap =
      static_cast<std::size_t>(std::floor(draft_fraction * static_cast<double>(ranked.size())));
  DraftSplit split;
  for (const Ranked& r : ranked) {
    if (split.drafted.size() < cap && r.q >= q_threshold) {
      split.drafted.push_back(r.index);
    } else {
      split.exempt.push_back(r.index);
    }
  }
  return split;
}

}  // namespace srsim
