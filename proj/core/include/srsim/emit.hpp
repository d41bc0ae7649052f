#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "srsim/asexual.hpp"
#include "srsim/calibrate.hpp"
#include "srsim/cohort.hpp"
#include "srsim/engine.hpp"
#include "srsim/profile.hpp"
#include "srsim/scenario.hpp"

namespace srsim {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// RFC 4180 quoting: wraps fields containing commas, quotes or newlines.
std::string csv_escape(const std::string& field);

// Writes via a staging file in the same directory, renamed into place, so a
// partially written file is never visible under the final name.
void write_file(const std::string& path, const std::string& contents);

std::string profile_csv(const SRProfile& profile);

// Expected survivors per 100 females conceived, on the cohort age grid.
std::string cohort_csv(const CohortTable& table);

// Long form: time, statistic, value, replicate. One header, all replicates.
std::string trajectory_csv(std::span<const Trajectory> replicates);

// Birth-cohort SR time series pooled over replicates: one row per snapshot
// interval with born male/female counts and the SR they imply.
std::string birth_series_csv(std::span<const Trajectory> replicates);

std::string birth_order_csv(std::span<const OrderStat> stats);

std::string quality_by_age_csv(const QualityByAge& q);

// Generic numeric table for sweep output.
std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

nlohmann::ordered_json config_json(const SimConfig& cfg);
nlohmann::ordered_json scenario_json(const Scenario& scenario);

// Run summary: resolved config echo, seed, per-replicate outcomes, and
// replicate-mean statistics with normal-approximation CIs.
nlohmann::ordered_json summary_json(const Scenario& scenario, std::uint64_t seed,
                                    std::span<const Trajectory> replicates);

nlohmann::ordered_json calibration_json(const Scenario& scenario, const CalibrationSpec& spec,
                                        const CalibrationResult& result, std::uint64_t seed);

nlohmann::ordered_json race_json(const Scenario& scenario, const RaceResult& result,
                                 int replicates, std::uint64_t seed);

}  // namespace srsim
