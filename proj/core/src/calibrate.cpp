#include "srsim/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "srsim/rng.hpp"

namespace srsim {

namespace {
constexpr double k_penalty = 1e6;
}

void CalibrationSpec::validate() const {
  for (const FreeParam& p : params) {
    if (!has_param(p.path)) throw ConfigError("calibration: unknown parameter '" + p.path + "'");
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper))
      throw ConfigError("calibration: bounds for '" + p.path + "' must be finite");
    if (!(p.lower < p.upper))
      throw ConfigError("calibration: lower bound must be below upper for '" + p.path + "'");
  }
  if (budget < static_cast<int>(params.size()) + 1)
    throw ConfigError("calibration: budget must be at least dimension + 1");
  if (replicates < 1) throw ConfigError("calibration: replicates must be >= 1");
  if (tolerance <= 0.0) throw ConfigError("calibration: tolerance must be > 0");
}

Scenario apply_parameters(const Scenario& scenario, const std::vector<FreeParam>& params,
                          const std::vector<double>& values) {
  if (params.size() != values.size())
    throw ConfigError("calibration: parameter/value count mismatch");
  Scenario out = scenario;
  for (std::size_t i = 0; i < params.size(); ++i) {
    set_param(out.config, params[i].path, values[i]);
  }
  return out;
}

std::vector<double> fitted_series(const Scenario& scenario, int replicates, std::uint64_t seed) {
  RunOptions options;
  options.record_profiles = false;

  std::vector<std::future<Trajectory>> futures;
  futures.reserve(static_cast<std::size_t>(replicates));
  for (int r = 0; r < replicates; ++r) {
    futures.push_back(std::async(std::launch::async, [&scenario, &options, seed, r] {
      return run_scenario(scenario, seed + static_cast<std::uint64_t>(r), options);
    }));
  }

  std::vector<double> fit(scenario.targets.size(), 0.0);
  for (auto& fut : futures) {
    const Trajectory traj = fut.get();
    for (std::size_t i = 0; i < scenario.targets.size(); ++i) {
      fit[i] += cohort_sr_at_birth(traj, scenario.targets[i].t, scenario.targets[i].width,
                                   scenario.targets[i].group);
    }
  }
  for (double& v : fit) v /= replicates;
  return fit;
}

namespace {

struct Evaluation {
  double objective = k_penalty;
  std::vector<double> residuals;
  bool failed = true;
};

Evaluation evaluate_point(const Scenario& base, const CalibrationSpec& spec,
                          const std::vector<double>& x, std::uint64_t seed) {
  Evaluation ev;
  try {
    const Scenario s = apply_parameters(base, spec.params, x);
    s.validate();
    const std::vector<double> fit = fitted_series(s, spec.replicates, seed);
    double num = 0.0;
    double den = 0.0;
    ev.residuals.resize(fit.size());
    for (std::size_t i = 0; i < fit.size(); ++i) {
      if (!std::isfinite(fit[i])) return Evaluation{};
      const double r = fit[i] - s.targets[i].sr;
      ev.residuals[i] = r;
      num += s.targets[i].weight * r * r;
      den += s.targets[i].weight;
    }
    ev.objective = den > 0.0 ? num / den : 0.0;
    ev.failed = false;
  } catch (const std::exception&) {
    return Evaluation{};
  }
  return ev;
}

}  // namespace

CalibrationResult calibrate(const Scenario& scenario, const CalibrationSpec& spec,
                            std::uint64_t seed) {
  spec.validate();
  scenario.validate();
  if (scenario.targets.empty()) throw ConfigError("calibration: scenario has no targets");

  const std::size_t d = spec.params.size();
  CalibrationResult result;

  const auto clip = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = std::clamp(x[i], spec.params[i].lower, spec.params[i].upper);
    }
  };

  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> best_x(d, 0.0);
  std::vector<double> best_residuals(scenario.targets.size(), k_penalty);
  bool best_failed = true;

  // Replicate seeds stay fixed across evaluations (common random numbers).
  const auto try_eval = [&](const std::vector<double>& x) -> double {
    ++result.evaluations;
    const Evaluation ev = evaluate_point(scenario, spec, x, seed);
    if (ev.failed) {
      ++result.failed_evaluations;
      return k_penalty;
    }
    if (ev.objective < best_f || best_failed) {
      best_f = ev.objective;
      best_x = x;
      best_residuals = ev.residuals;
      best_failed = false;
    }
    return ev.objective;
  };
  const auto can_eval = [&] { return result.evaluations < spec.budget; };

  std::vector<double> start(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) start[i] = get_param(scenario.config, spec.params[i].path);
  clip(start);

  if (d == 0) {
    try_eval(start);
  } else {
    std::uint64_t mix = seed ^ 0x9e3779b97f4a7c15ull;
    splitmix64(mix);
    RngStream jitter(splitmix64(mix));

    while (can_eval()) {
      // Build a fresh simplex around the current start point.
      std::vector<std::vector<double>> xs;
      std::vector<double> fs;
      xs.push_back(start);
      for (std::size_t i = 0; i < d && can_eval(); ++i) {
        std::vector<double> v = start;
        const double range = spec.params[i].upper - spec.params[i].lower;
        double step = 0.25 * range;
        if (v[i] + step > spec.params[i].upper) step = -step;
        v[i] += step;
        clip(v);
        xs.push_back(v);
      }
      for (const auto& v : xs) {
        if (!can_eval()) break;
        fs.push_back(try_eval(v));
      }
      if (fs.size() != xs.size()) break;  // budget ran out mid-construction
      xs.resize(fs.size());

      // Nelder-Mead until the simplex collapses or the budget runs out.
      bool collapsed = false;
      while (can_eval() && !collapsed) {
        std::vector<std::size_t> order(xs.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        const std::size_t lo = order.front();
        const std::size_t hi = order.back();
        const std::size_t second_hi = order[order.size() - 2];

        double spread = fs[hi] - fs[lo];
        double size = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          const double range = spec.params[i].upper - spec.params[i].lower;
          double extent = 0.0;
          for (const auto& v : xs) extent = std::max(extent, std::abs(v[i] - xs[lo][i]));
          size = std::max(size, extent / range);
        }
        if (spread < 1e-12 || size < 1e-9) {
          collapsed = true;
          break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k < xs.size(); ++k) {
          if (k == hi) continue;
          for (std::size_t i = 0; i < d; ++i) centroid[i] += xs[k][i];
        }
        for (double& c : centroid) c /= static_cast<double>(xs.size() - 1);

        const auto blend = [&](double coeff) {
          std::vector<double> v(d);
          for (std::size_t i = 0; i < d; ++i)
            v[i] = centroid[i] + coeff * (centroid[i] - xs[hi][i]);
          clip(v);
          return v;
        };

        const std::vector<double> refl = blend(1.0);
        const double f_refl = try_eval(refl);
        if (f_refl < fs[lo]) {
          if (can_eval()) {
            const std::vector<double> exp = blend(2.0);
            const double f_exp = try_eval(exp);
            if (f_exp < f_refl) {
              xs[hi] = exp;
              fs[hi] = f_exp;
            } else {
              xs[hi] = refl;
              fs[hi] = f_refl;
            }
          } else {
            xs[hi] = refl;
            fs[hi] = f_refl;
          }
        } else if (f_refl < fs[second_hi]) {
          xs[hi] = refl;
          fs[hi] = f_refl;
        } else if (can_eval()) {
          const std::vector<double> contr = blend(f_refl < fs[hi] ? 0.5 : -0.5);
          const double f_contr = try_eval(contr);
          if (f_contr < std::min(f_refl, fs[hi])) {
            xs[hi] = contr;
            fs[hi] = f_contr;
          } else {
            // Shrink toward the best vertex.
            for (std::size_t k = 0; k < xs.size() && can_eval(); ++k) {
              if (k == lo) continue;
              for (std::size_t i = 0; i < d; ++i) xs[k][i] = 0.5 * (xs[k][i] + xs[lo][i]);
              clip(xs[k]);
              fs[k] = try_eval(xs[k]);
            }
          }
        }
      }

      if (best_f <= 1e-12) break;
      if (!can_eval()) break;

      // Restart from the best point with a small deterministic jitter.
      start = best_failed ? start : best_x;
      for (std::size_t i = 0; i < d; ++i) {
        const double range = spec.params[i].upper - spec.params[i].lower;
        start[i] += jitter.normal(0.0, 0.05 * range);
      }
      clip(start);
    }
  }

  result.best = best_x;
  result.objective = best_f;
  result.residuals = best_residuals;
  result.feasible = !best_failed;
  for (double r : best_residuals) {
    if (std::abs(r) > spec.tolerance) result.feasible = false;
  }
  return result;
}

}  // namespace srsim
