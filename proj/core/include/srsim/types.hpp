#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace srsim {

// All ages and times are in years, measured from conception (age 0 is the
// moment of conception, not birth).

enum class Sex : std::uint8_t { male = 0, female = 1 };

enum class LifeState : std::uint8_t { in_utero = 0, alive = 1, dead = 2 };

using IndividualId = std::uint64_t;
inline constexpr IndividualId no_id = 0;
inline constexpr std::uint32_t no_log_slot = 0xffffffffu;

inline constexpr double undefined_stat = std::numeric_limits<double>::quiet_NaN();

struct Individual {
  IndividualId id = no_id;
  IndividualId father_id = no_id;
  IndividualId mother_id = no_id;
  double t_conceived = 0.0;
  double t_death = -1.0;            // set when state becomes dead
  double q_genetic = 1.0;           // in (0, 1], fixed at conception
  double genotype = 0.0;            // tracking-mode trait; unused in human scenarios
  double sensed_abstinence = 0.0;   // males: deprivation level in years
  double pregnant_until = -1.0;     // females: absolute end time of current gestation
  float cycle_phase = 0.0f;         // subgroup away/home cycle offset
  double q_hazard_factor = 1.0;     // cached pow(q, -kappa); valid while quality is constant
  std::uint32_t father_birth_order = 0;  // this is the i-th child conceived by its father
  std::uint32_t conceptions = 0;         // males: children conceived so far
  std::uint32_t birth_log_slot = no_log_slot;  // index into the run's birth log
  LifeState state = LifeState::in_utero;
  Sex sex = Sex::female;
  std::uint8_t group = 0;                // 0 = general population

  double age(double t) const { return t - t_conceived; }
  bool is_pregnant(double t) const { return pregnant_until > t; }
};

// Configuration that fails validation. what() names the violated rule.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Sex ratio convention: males per 100 females.
inline double sr_from_counts(double males, double females) {
  if (females <= 0.0) return undefined_stat;
  return 100.0 * males / females;
}

inline double sr_from_p_male(double p) { return 100.0 * p / (1.0 - p); }

inline double p_male_from_sr(double sr) { return sr / (100.0 + sr); }

}  // namespace srsim
