#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srsim/environment.hpp"
#include "srsim/quality.hpp"
#include "srsim/rng.hpp"
#include "srsim/types.hpp"

namespace srsim {

// Male-side sex-ratio setting. The male-offspring probability follows a
// logistic response centered at the reference point (Q_ref, H_ref), rising
// with perceived harshness until the catastrophic threshold H_cat, where a
// gate collapses it to p_floor. The optional comfort collapse drives p to the
// floor from the other end of the harshness axis.
struct PreconceptionParams {
  double p_base = 0.6;   // P(male) at Q = q_ref, H = h_ref
  double q_ref = 0.6572;
  double h_ref = 0.3;
  double alpha_q = 6.0;      // response to (q_ref - Q_father)
  double alpha_h = 0.234742; // response to harshness below the catastrophe
  double h_cat = 3.5;
  double s_cat = 3.0;
  double p_floor = 0.01;
  double h_comfort = 0.05;
  bool comfort_collapse = false;
  double comfort_sustain_years = 2.0;  // sustained H < h_comfort before collapse starts
  double comfort_ramp_years = 0.5;     // collapse ramp width past the sustain point

  void validate() const;
};

double preconception_sr(double q_father, double h_perceived, const PreconceptionParams& params);

// Collapse weight in [0, 1] for a sustained comfortable spell; the engine
// tracks the spell and mixes the result: p = floor + (1-w) * (p - floor).
double comfort_collapse_weight(double sustained_comfort_years, const PreconceptionParams& params);

double apply_comfort_collapse(double p_male, double weight, const PreconceptionParams& params);

// Excess male fetal hazard under maternal malnutrition: 1 at nutrition >=
// n_crit, rising continuously to m_max at zero nutrition. Female fetuses are
// never multiplied.
struct MaternalFilterParams {
  double n_crit = 0.55;
  double m_max = 3.0;
  double exponent = 1.5;

  void validate() const;
};

double maternal_multiplier(double nutrition, const MaternalFilterParams& params);

struct PairingParams {
  double age_offset = 2.0;  // mean male-minus-female age gap target, years
  // mean father-minus-pool quality margin: how far the surplus contest lifts
  // the fathers' average above the eligible-pool average; used to seed the
  // initial sex split consistently with the pairing dynamics
  double q_offset = 0.038;
  // sd of the per-step quality perturbation in the surplus contest; surplus
  // males sit the step out lowest-perturbed-quality-first, so scarcity of
  // mates concentrates paternity on the fitter males
  double competition_noise = 0.15;
  double match_noise = 1.5;  // sd of the rank-key perturbation, years
  // eligibility ages measured from conception; the female window closes at
  // menopause, which keeps the male side of the market in chronic surplus
  double male_window[2] = {19.75, 50.75};
  double female_window[2] = {17.75, 43.75};
  double conception_rate = 0.16;  // conceptions per pair-year

  void validate() const;
  bool male_eligible(double age) const { return age >= male_window[0] && age < male_window[1]; }
  bool female_eligible(double age) const {
    return age >= female_window[0] && age < female_window[1];
  }
};

struct PairedIndices {
  std::uint32_t male;
  std::uint32_t female;
};

// Greedy rank-matching: both pools are sorted by an age-based key (males
// shifted by the configured offsets, both perturbed by matching noise) and
// matched rank-for-rank. Pair count is exactly min(pool sizes).
std::vector<PairedIndices> pair_individuals(std::span<const Individual> population,
                                            std::span<const std::uint32_t> male_pool,
                                            std::span<const std::uint32_t> female_pool, double t,
                                            const PairingParams& params,
                                            const QualityModelConfig& quality_cfg,
                                            RngStream& rng);

struct ReproductionContext {
  const QualityModelConfig* quality = nullptr;
  const NatalQualityConfig* natal = nullptr;
  const PreconceptionParams* preconception = nullptr;
  const AbstinenceParams* abstinence = nullptr;
  const Environment* env = nullptr;
  double gestation = 0.75;
  double comfort_weight = 0.0;  // sustained-comfort collapse weight, engine-tracked
};

// Unconditional conception: creates the child in utero, updates the father's
// conception count, resets his deprivation level, and opens the mother's
// gestation window.
Individual conceive_now(Individual& father, Individual& mother, double t,
                        const ReproductionContext& ctx, IndividualId child_id, RngStream& rng);

// One conception attempt for a standing pair over one step; the attempt
// succeeds with probability 1 - exp(-rate * dt).
std::optional<Individual> conceive(Individual& father, Individual& mother, double t, double dt,
                                   double rate_per_year, const ReproductionContext& ctx,
                                   IndividualId child_id, RngStream& rng);

struct DraftSplit {
  std::vector<std::uint32_t> drafted;
  std::vector<std::uint32_t> exempt;
};

// Selects which eligible males the commission takes: highest quality first,
// those at or above q_threshold, capped at draft_fraction of the pool.
DraftSplit draft_filter(std::span<const Individual> population,
                        std::span<const std::uint32_t> eligible_males, double t,
                        double q_threshold, double draft_fraction,
                        const QualityModelConfig& quality_cfg);

}  // namespace srsim
