#include "srsim/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace srsim {

const char* scenario_mode_name(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::human: return "human";
    case ScenarioMode::plant: return "plant";
    case ScenarioMode::tracking: return "tracking";
  }
  return "unknown";
}

ScenarioMode scenario_mode_from_name(const std::string& name) {
  for (ScenarioMode m : {ScenarioMode::human, ScenarioMode::plant, ScenarioMode::tracking}) {
    if (name == scenario_mode_name(m)) return m;
  }
  throw ConfigError("unknown scenario mode '" + name + "' (expected human, plant or tracking)");
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("scenario: name must not be empty");
  config.validate();
  asexual.validate();
  if (!std::is_sorted(events.begin(), events.end(),
                      [](const TimedEvent& a, const TimedEvent& b) { return a.t < b.t; }))
    throw ConfigError("scenario: events must be ordered by time");
  if (!std::is_sorted(targets.begin(), targets.end(),
                      [](const TargetPoint& a, const TargetPoint& b) { return a.t < b.t; }))
    throw ConfigError("scenario: targets must be ordered by time");
  for (const TargetPoint& tp : targets) {
    if (tp.weight < 0.0) throw ConfigError("scenario: target weights must be >= 0");
    if (tp.sr < 0.0) throw ConfigError("scenario: target SR values must be >= 0");
    if (tp.width <= 0.0) throw ConfigError("scenario: target window width must be > 0");
  }
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const YAML::Node& node, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) fail(path + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + path + "." + key + "'");
  }
}

template <typename T>
void read_field(const YAML::Node& node, const char* key, const std::string& path, T& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    fail(path + "." + key + ": invalid value");
  }
}

void read_rates(const YAML::Node& node, const char* key, const std::string& path,
                std::vector<double>& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  if (!v.IsSequence()) fail(path + "." + key + ": expected a sequence");
  out.clear();
  for (const auto& e : v) {
    try {
      out.push_back(e.as<double>());
    } catch (const YAML::Exception&) {
      fail(path + "." + key + ": invalid number");
    }
  }
}

void read_window(const YAML::Node& node, const char* key, const std::string& path,
                 double (&out)[2]) {
  const YAML::Node v = node[key];
  if (!v) return;
  if (!v.IsSequence() || v.size() != 2) fail(path + "." + key + ": expected [lo, hi]");
  try {
    out[0] = v[0].as<double>();
    out[1] = v[1].as<double>();
  } catch (const YAML::Exception&) {
    fail(path + "." + key + ": invalid number");
  }
}

void read_schedule(const YAML::Node& node, const char* key, const std::string& path,
                   PiecewiseSchedule& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  if (!v.IsSequence()) fail(path + "." + key + ": expected a sequence of {t, value}");
  out.segments.clear();
  for (const auto& e : v) {
    check_keys(e, path + "." + key + "[]", {"t", "value"});
    if (!e["t"] || !e["value"]) fail(path + "." + key + ": each segment needs t and value");
    ScheduleSegment seg;
    try {
      seg.t_start = e["t"].as<double>();
      seg.value = e["value"].as<double>();
    } catch (const YAML::Exception&) {
      fail(path + "." + key + ": invalid number");
    }
    out.segments.push_back(seg);
  }
}

void apply_config(const YAML::Node& node, SimConfig& cfg) {
  check_keys(node, "config",
             {"hazard", "quality", "natal", "preconception", "maternal", "pairing", "abstinence",
              "draft", "mountain", "population", "environment"});

  if (const YAML::Node n = node["hazard"]) {
    check_keys(n, "config.hazard",
               {"band_starts", "male_rates", "female_rates", "fetal_male", "fetal_female",
                "harshness_exp_male", "harshness_exp_female", "quality_exp_male",
                "quality_exp_female", "gestation", "allow_inverted_sex_ordering"});
    read_rates(n, "band_starts", "config.hazard", cfg.hazard.band_starts);
    read_rates(n, "male_rates", "config.hazard", cfg.hazard.male_rates);
    read_rates(n, "female_rates", "config.hazard", cfg.hazard.female_rates);
    read_field(n, "fetal_male", "config.hazard", cfg.hazard.fetal_male);
    read_field(n, "fetal_female", "config.hazard", cfg.hazard.fetal_female);
    read_field(n, "harshness_exp_male", "config.hazard", cfg.hazard.harshness_exp_male);
    read_field(n, "harshness_exp_female", "config.hazard", cfg.hazard.harshness_exp_female);
    read_field(n, "quality_exp_male", "config.hazard", cfg.hazard.quality_exp_male);
    read_field(n, "quality_exp_female", "config.hazard", cfg.hazard.quality_exp_female);
    read_field(n, "gestation", "config.hazard", cfg.hazard.gestation);
    read_field(n, "allow_inverted_sex_ordering", "config.hazard",
               cfg.hazard.allow_inverted_sex_ordering);
  }

  if (const YAML::Node n = node["quality"]) {
    check_keys(n, "config.quality",
               {"w_genetic", "w_aging", "w_wisdom", "aging_rate", "wisdom_rate", "wisdom_floor",
                "combination"});
    read_field(n, "w_genetic", "config.quality", cfg.quality.w_genetic);
    read_field(n, "w_aging", "config.quality", cfg.quality.w_aging);
    read_field(n, "w_wisdom", "config.quality", cfg.quality.w_wisdom);
    read_field(n, "aging_rate", "config.quality", cfg.quality.aging_rate);
    read_field(n, "wisdom_rate", "config.quality", cfg.quality.wisdom_rate);
    read_field(n, "wisdom_floor", "config.quality", cfg.quality.wisdom_floor);
    if (n["combination"]) {
      const auto name = n["combination"].as<std::string>();
      if (name == "linear") {
        cfg.quality.combination = QualityCombination::linear;
      } else if (name == "geometric") {
        cfg.quality.combination = QualityCombination::geometric;
      } else {
        fail("config.quality.combination: expected linear or geometric");
      }
    }
  }

  if (const YAML::Node n = node["natal"]) {
    check_keys(n, "config.natal", {"alpha", "beta", "q_min", "male_shift", "heritability"});
    read_field(n, "alpha", "config.natal", cfg.natal.alpha);
    read_field(n, "beta", "config.natal", cfg.natal.beta);
    read_field(n, "q_min", "config.natal", cfg.natal.q_min);
    read_field(n, "male_shift", "config.natal", cfg.natal.male_shift);
    read_field(n, "heritability", "config.natal", cfg.natal.heritability);
  }

  if (const YAML::Node n = node["preconception"]) {
    check_keys(n, "config.preconception",
               {"p_base", "q_ref", "h_ref", "alpha_q", "alpha_h", "h_cat", "s_cat", "p_floor",
                "h_comfort", "comfort_collapse", "comfort_sustain_years", "comfort_ramp_years"});
    read_field(n, "p_base", "config.preconception", cfg.preconception.p_base);
    read_field(n, "q_ref", "config.preconception", cfg.preconception.q_ref);
    read_field(n, "h_ref", "config.preconception", cfg.preconception.h_ref);
    read_field(n, "alpha_q", "config.preconception", cfg.preconception.alpha_q);
    read_field(n, "alpha_h", "config.preconception", cfg.preconception.alpha_h);
    read_field(n, "h_cat", "config.preconception", cfg.preconception.h_cat);
    read_field(n, "s_cat", "config.preconception", cfg.preconception.s_cat);
    read_field(n, "p_floor", "config.preconception", cfg.preconception.p_floor);
    read_field(n, "h_comfort", "config.preconception", cfg.preconception.h_comfort);
    read_field(n, "comfort_collapse", "config.preconception", cfg.preconception.comfort_collapse);
    read_field(n, "comfort_sustain_years", "config.preconception",
               cfg.preconception.comfort_sustain_years);
    read_field(n, "comfort_ramp_years", "config.preconception",
               cfg.preconception.comfort_ramp_years);
  }

  if (const YAML::Node n = node["maternal"]) {
    check_keys(n, "config.maternal", {"n_crit", "m_max", "exponent"});
    read_field(n, "n_crit", "config.maternal", cfg.maternal.n_crit);
    read_field(n, "m_max", "config.maternal", cfg.maternal.m_max);
    read_field(n, "exponent", "config.maternal", cfg.maternal.exponent);
  }

  if (const YAML::Node n = node["pairing"]) {
    check_keys(n, "config.pairing",
               {"age_offset", "q_offset", "competition_noise", "match_noise", "male_window",
                "female_window", "conception_rate"});
    read_field(n, "age_offset", "config.pairing", cfg.pairing.age_offset);
    read_field(n, "q_offset", "config.pairing", cfg.pairing.q_offset);
    read_field(n, "competition_noise", "config.pairing", cfg.pairing.competition_noise);
    read_field(n, "match_noise", "config.pairing", cfg.pairing.match_noise);
    read_window(n, "male_window", "config.pairing", cfg.pairing.male_window);
    read_window(n, "female_window", "config.pairing", cfg.pairing.female_window);
    read_field(n, "conception_rate", "config.pairing", cfg.pairing.conception_rate);
  }

  if (const YAML::Node n = node["abstinence"]) {
    check_keys(n, "config.abstinence", {"grace_years", "beta", "recovery_tau"});
    read_field(n, "grace_years", "config.abstinence", cfg.abstinence.grace_years);
    read_field(n, "beta", "config.abstinence", cfg.abstinence.beta);
    read_field(n, "recovery_tau", "config.abstinence", cfg.abstinence.recovery_tau);
  }

  if (const YAML::Node n = node["draft"]) {
    check_keys(n, "config.draft", {"q_threshold", "fraction", "availability"});
    read_field(n, "q_threshold", "config.draft", cfg.draft.q_threshold);
    read_field(n, "fraction", "config.draft", cfg.draft.fraction);
    read_field(n, "availability", "config.draft", cfg.draft.availability);
  }

  if (const YAML::Node n = node["mountain"]) {
    check_keys(n, "config.mountain", {"group_fraction", "away_years", "home_years"});
    read_field(n, "group_fraction", "config.mountain", cfg.mountain.group_fraction);
    read_field(n, "away_years", "config.mountain", cfg.mountain.away_years);
    read_field(n, "home_years", "config.mountain", cfg.mountain.home_years);
  }

  if (const YAML::Node n = node["population"]) {
    check_keys(n, "config.population",
               {"initial_size", "carrying_capacity", "dt", "horizon", "record_interval"});
    if (n["initial_size"]) {
      try {
        cfg.population.initial_size = n["initial_size"].as<unsigned long long>();
      } catch (const YAML::Exception&) {
        fail("config.population.initial_size: invalid value");
      }
    }
    read_field(n, "carrying_capacity", "config.population", cfg.population.carrying_capacity);
    read_field(n, "dt", "config.population", cfg.population.dt);
    read_field(n, "horizon", "config.population", cfg.population.horizon);
    read_field(n, "record_interval", "config.population", cfg.population.record_interval);
  }

  if (const YAML::Node n = node["environment"]) {
    check_keys(n, "config.environment", {"sensing_lag", "harshness", "nutrition", "drift"});
    read_field(n, "sensing_lag", "config.environment", cfg.environment.sensing_lag);
    read_schedule(n, "harshness", "config.environment", cfg.environment.harshness);
    read_schedule(n, "nutrition", "config.environment", cfg.environment.nutrition);
    if (const YAML::Node d = n["drift"]) {
      check_keys(d, "config.environment.drift", {"start", "rate", "diffusion"});
      read_field(d, "start", "config.environment.drift", cfg.environment.drift.start);
      read_field(d, "rate", "config.environment.drift", cfg.environment.drift.rate);
      read_field(d, "diffusion", "config.environment.drift", cfg.environment.drift.diffusion);
    }
  }
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

YAML::Node num(double v) { return YAML::Node(format_number(v)); }

YAML::Node schedule_node(const PiecewiseSchedule& s) {
  YAML::Node out(YAML::NodeType::Sequence);
  for (const ScheduleSegment& seg : s.segments) {
    YAML::Node e(YAML::NodeType::Map);
    e["t"] = num(seg.t_start);
    e["value"] = num(seg.value);
    out.push_back(e);
  }
  return out;
}

YAML::Node rates_node(const std::vector<double>& v) {
  YAML::Node out(YAML::NodeType::Sequence);
  for (double x : v) out.push_back(num(x));
  return out;
}

YAML::Node window_node(const double (&w)[2]) {
  YAML::Node out(YAML::NodeType::Sequence);
  out.push_back(num(w[0]));
  out.push_back(num(w[1]));
  return out;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("parse error at line " + std::to_string(e.mark.line + 1) + ", column " +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) fail("scenario file: expected a top-level mapping");
  check_keys(root, "scenario file", {"scenario", "base", "config", "asexual", "events", "targets"});

  Scenario s;
  if (root["base"]) {
    s = builtin_scenario(root["base"].as<std::string>());
  }

  if (const YAML::Node meta = root["scenario"]) {
    check_keys(meta, "scenario", {"name", "mode"});
    read_field(meta, "name", "scenario", s.name);
    if (meta["mode"]) s.mode = scenario_mode_from_name(meta["mode"].as<std::string>());
  }
  if (s.name.empty()) fail("scenario: name is required (scenario.name or base)");

  if (root["config"]) apply_config(root["config"], s.config);

  if (const YAML::Node n = root["asexual"]) {
    check_keys(n, "asexual", {"mutation_scale", "fitness_exponent", "birth_rate"});
    read_field(n, "mutation_scale", "asexual", s.asexual.mutation_scale);
    read_field(n, "fitness_exponent", "asexual", s.asexual.fitness_exponent);
    read_field(n, "birth_rate", "asexual", s.asexual.birth_rate);
  }

  if (const YAML::Node n = root["events"]) {
    if (!n.IsSequence()) fail("events: expected a sequence of {t, type}");
    s.events.clear();
    for (const auto& e : n) {
      check_keys(e, "events[]", {"t", "type"});
      if (!e["t"] || !e["type"]) fail("events: each event needs t and type");
      TimedEvent ev;
      try {
        ev.t = e["t"].as<double>();
      } catch (const YAML::Exception&) {
        fail("events: invalid time");
      }
      ev.type = event_type_from_name(e["type"].as<std::string>());
      s.events.push_back(ev);
    }
  }

  if (const YAML::Node n = root["targets"]) {
    if (!n.IsSequence()) fail("targets: expected a sequence of {t, sr, weight, group, width}");
    s.targets.clear();
    for (const auto& e : n) {
      check_keys(e, "targets[]", {"t", "sr", "weight", "group", "width"});
      if (!e["t"] || !e["sr"]) fail("targets: each target needs t and sr");
      TargetPoint tp;
      try {
        tp.t = e["t"].as<double>();
        tp.sr = e["sr"].as<double>();
        if (e["weight"]) tp.weight = e["weight"].as<double>();
        if (e["group"]) tp.group = e["group"].as<int>();
        if (e["width"]) tp.width = e["width"].as<double>();
      } catch (const YAML::Exception&) {
        fail("targets: invalid number");
      }
      s.targets.push_back(tp);
    }
  }

  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  YAML::Node root(YAML::NodeType::Map);

  YAML::Node meta(YAML::NodeType::Map);
  meta["name"] = s.name;
  meta["mode"] = scenario_mode_name(s.mode);
  root["scenario"] = meta;

  const SimConfig& c = s.config;
  YAML::Node cfg(YAML::NodeType::Map);

  YAML::Node hz(YAML::NodeType::Map);
  hz["band_starts"] = rates_node(c.hazard.band_starts);
  hz["male_rates"] = rates_node(c.hazard.male_rates);
  hz["female_rates"] = rates_node(c.hazard.female_rates);
  hz["fetal_male"] = num(c.hazard.fetal_male);
  hz["fetal_female"] = num(c.hazard.fetal_female);
  hz["harshness_exp_male"] = num(c.hazard.harshness_exp_male);
  hz["harshness_exp_female"] = num(c.hazard.harshness_exp_female);
  hz["quality_exp_male"] = num(c.hazard.quality_exp_male);
  hz["quality_exp_female"] = num(c.hazard.quality_exp_female);
  hz["gestation"] = num(c.hazard.gestation);
  hz["allow_inverted_sex_ordering"] = c.hazard.allow_inverted_sex_ordering;
  cfg["hazard"] = hz;

  YAML::Node q(YAML::NodeType::Map);
  q["w_genetic"] = num(c.quality.w_genetic);
  q["w_aging"] = num(c.quality.w_aging);
  q["w_wisdom"] = num(c.quality.w_wisdom);
  q["aging_rate"] = num(c.quality.aging_rate);
  q["wisdom_rate"] = num(c.quality.wisdom_rate);
  q["wisdom_floor"] = num(c.quality.wisdom_floor);
  q["combination"] =
      c.quality.combination == QualityCombination::linear ? "linear" : "geometric";
  cfg["quality"] = q;

  YAML::Node na(YAML::NodeType::Map);
  na["alpha"] = num(c.natal.alpha);
  na["beta"] = num(c.natal.beta);
  na["q_min"] = num(c.natal.q_min);
  na["male_shift"] = num(c.natal.male_shift);
  na["heritability"] = num(c.natal.heritability);
  cfg["natal"] = na;

  YAML::Node pc(YAML::NodeType::Map);
  pc["p_base"] = num(c.preconception.p_base);
  pc["q_ref"] = num(c.preconception.q_ref);
  pc["h_ref"] = num(c.preconception.h_ref);
  pc["alpha_q"] = num(c.preconception.alpha_q);
  pc["alpha_h"] = num(c.preconception.alpha_h);
  pc["h_cat"] = num(c.preconception.h_cat);
  pc["s_cat"] = num(c.preconception.s_cat);
  pc["p_floor"] = num(c.preconception.p_floor);
  pc["h_comfort"] = num(c.preconception.h_comfort);
  pc["comfort_collapse"] = c.preconception.comfort_collapse;
  pc["comfort_sustain_years"] = num(c.preconception.comfort_sustain_years);
  pc["comfort_ramp_years"] = num(c.preconception.comfort_ramp_years);
  cfg["preconception"] = pc;

  YAML::Node mt(YAML::NodeType::Map);
  mt["n_crit"] = num(c.maternal.n_crit);
  mt["m_max"] = num(c.maternal.m_max);
  mt["exponent"] = num(c.maternal.exponent);
  cfg["maternal"] = mt;

  YAML::Node pr(YAML::NodeType::Map);
  pr["age_offset"] = num(c.pairing.age_offset);
  pr["q_offset"] = num(c.pairing.q_offset);
  pr["competition_noise"] = num(c.pairing.competition_noise);
  pr["match_noise"] = num(c.pairing.match_noise);
  pr["male_window"] = window_node(c.pairing.male_window);
  pr["female_window"] = window_node(c.pairing.female_window);
  pr["conception_rate"] = num(c.pairing.conception_rate);
  cfg["pairing"] = pr;

  YAML::Node ab(YAML::NodeType::Map);
  ab["grace_years"] = num(c.abstinence.grace_years);
  ab["beta"] = num(c.abstinence.beta);
  ab["recovery_tau"] = num(c.abstinence.recovery_tau);
  cfg["abstinence"] = ab;

  YAML::Node dr(YAML::NodeType::Map);
  dr["q_threshold"] = num(c.draft.q_threshold);
  dr["fraction"] = num(c.draft.fraction);
  dr["availability"] = num(c.draft.availability);
  cfg["draft"] = dr;

  YAML::Node mo(YAML::NodeType::Map);
  mo["group_fraction"] = num(c.mountain.group_fraction);
  mo["away_years"] = num(c.mountain.away_years);
  mo["home_years"] = num(c.mountain.home_years);
  cfg["mountain"] = mo;

  YAML::Node po(YAML::NodeType::Map);
  po["initial_size"] = c.population.initial_size;
  po["carrying_capacity"] = num(c.population.carrying_capacity);
  po["dt"] = num(c.population.dt);
  po["horizon"] = num(c.population.horizon);
  po["record_interval"] = num(c.population.record_interval);
  cfg["population"] = po;

  YAML::Node en(YAML::NodeType::Map);
  en["sensing_lag"] = num(c.environment.sensing_lag);
  en["harshness"] = schedule_node(c.environment.harshness);
  en["nutrition"] = schedule_node(c.environment.nutrition);
  YAML::Node dft(YAML::NodeType::Map);
  dft["start"] = num(c.environment.drift.start);
  dft["rate"] = num(c.environment.drift.rate);
  dft["diffusion"] = num(c.environment.drift.diffusion);
  en["drift"] = dft;
  cfg["environment"] = en;

  root["config"] = cfg;

  YAML::Node ax(YAML::NodeType::Map);
  ax["mutation_scale"] = num(s.asexual.mutation_scale);
  ax["fitness_exponent"] = num(s.asexual.fitness_exponent);
  ax["birth_rate"] = num(s.asexual.birth_rate);
  root["asexual"] = ax;

  YAML::Node evs(YAML::NodeType::Sequence);
  for (const TimedEvent& ev : s.events) {
    YAML::Node e(YAML::NodeType::Map);
    e["t"] = num(ev.t);
    e["type"] = event_type_name(ev.type);
    evs.push_back(e);
  }
  root["events"] = evs;

  YAML::Node tgs(YAML::NodeType::Sequence);
  for (const TargetPoint& tp : s.targets) {
    YAML::Node e(YAML::NodeType::Map);
    e["t"] = num(tp.t);
    e["sr"] = num(tp.sr);
    e["weight"] = num(tp.weight);
    e["group"] = tp.group;
    e["width"] = num(tp.width);
    tgs.push_back(e);
  }
  root["targets"] = tgs;

  YAML::Emitter out;
  out << root;
  return std::string(out.c_str()) + "\n";
}

namespace {

Scenario make_baseline_peace() {
  Scenario s;
  s.name = "baseline_peace";
  s.config.population.initial_size = 100000;
  s.config.population.carrying_capacity = 100000.0;
  s.config.population.horizon = 40.0;
  s.targets = {{20.0, 105.0, 1.0, -1, 8.0}, {30.0, 105.0, 1.0, -1, 8.0}};
  return s;
}

// baseline_peace plus a four-year mobilization; everything else identical,
// the birth-SR rise comes from the draft alone
Scenario make_war_draft() {
  Scenario s = make_baseline_peace();
  s.name = "war_draft";
  // fraction fitted to the wartime birth-cohort target below
  s.config.draft.fraction = 0.02;
  s.config.draft.availability = 0.05;
  s.events = {{10.0, EventType::draft_on}, {14.0, EventType::draft_off}};
  s.targets = {{12.0, 108.0, 1.0, -1, 4.0}};
  return s;
}

Scenario make_blockade() {
  Scenario s;
  s.name = "blockade";
  s.config.population.initial_size = 100000;
  s.config.population.carrying_capacity = 100000.0;
  s.config.population.horizon = 7.5;
  s.config.population.record_interval = 0.5;
  // two quiet years first so the dip reads against a settled baseline; the
  // siege bites at 2.5, the hunger winter peaks just after 3.0, relief is
  // gradual from 3.55 on
  s.config.environment.harshness.segments = {
      {0.0, 0.3}, {2.5, 1.1}, {2.95, 1.7}, {4.2, 1.1}, {6.0, 0.55}};
  s.config.environment.nutrition.segments = {{0.0, 1.0},  {2.6, 0.62}, {3.0, 0.34},
                                             {3.55, 0.52}, {4.2, 0.68}, {5.2, 0.85},
                                             {6.5, 1.0}};
  // mobilization fraction and the malnutrition filter fitted to the series
  s.config.draft.fraction = 0.03;
  s.config.maternal.m_max = 3.0;
  s.config.maternal.n_crit = 0.55;
  s.events = {{2.5, EventType::draft_on}, {6.5, EventType::draft_off}};
  // birth-year cohorts; the fourth is a loosely weighted shoulder, the series
  // only has to climb through it
  s.targets = {{2.5, 106.0, 1.0},
               {3.5, 101.0, 2.0},
               {4.5, 105.0, 1.0},
               {5.5, 107.0, 0.5},
               {6.5, 109.0, 1.0}};
  return s;
}

Scenario make_mountain_abstinence() {
  Scenario s;
  s.name = "mountain_abstinence";
  s.config.population.initial_size = 60000;
  s.config.population.carrying_capacity = 60000.0;
  s.config.population.horizon = 40.0;
  s.config.mountain.group_fraction = 0.10;
  s.config.mountain.away_years = 1.5;
  s.config.mountain.home_years = 0.25;
  // beta fitted to the herders' birth-cohort target below; see docs
  s.config.abstinence.beta = 2.01;
  s.config.abstinence.grace_years = 0.75;
  s.config.abstinence.recovery_tau = 0.5;
  s.events = {{2.0, EventType::mountain_on}, {38.0, EventType::mountain_off}};
  // one wide window over the whole herding plateau: the subgroup's births are
  // sparse, a year at a time would be all noise
  s.targets = {{22.0, 20.0, 1.0, 1, 28.0}};
  return s;
}

Scenario make_comfort_parthenogenesis() {
  Scenario s;
  s.name = "comfort_parthenogenesis";
  s.mode = ScenarioMode::plant;
  s.config.population.initial_size = 30000;
  s.config.population.carrying_capacity = 30000.0;
  s.config.population.horizon = 20.0;
  s.config.preconception.comfort_collapse = true;
  s.config.environment.harshness.segments = {{0.0, 0.3}, {5.0, 0.02}};
  s.targets = {{14.0, 1.0, 1.0}};
  return s;
}

Scenario make_ww1_double_dip() {
  Scenario s;
  s.name = "ww1_double_dip";
  s.config.population.initial_size = 100000;
  s.config.population.carrying_capacity = 100000.0;
  s.config.population.horizon = 26.0;
  s.config.population.record_interval = 0.5;
  s.config.environment.harshness.segments = {{0.0, 0.3},  {10.0, 0.85}, {13.5, 0.4},
                                             {17.0, 0.9}, {20.5, 0.35}};
  s.config.environment.nutrition.segments = {{0.0, 1.0},  {10.5, 0.55}, {13.2, 0.8},
                                             {17.5, 0.48}, {20.3, 0.82}, {22.5, 1.0}};
  s.events = {{10.0, EventType::draft_on},
              {13.0, EventType::draft_off},
              {17.0, EventType::draft_on},
              {20.0, EventType::draft_off}};
  return s;
}

Scenario make_tracking_race() {
  Scenario s;
  s.name = "tracking_race";
  s.mode = ScenarioMode::tracking;
  s.config.population.initial_size = 600;
  s.config.population.carrying_capacity = 600.0;
  s.config.population.horizon = 100.0;
  s.config.population.record_interval = 2.0;
  s.config.environment.drift.rate = 0.018;
  s.config.environment.drift.diffusion = 0.004;
  s.asexual.mutation_scale = 0.06;
  s.asexual.fitness_exponent = 2.5;
  s.asexual.birth_rate = 0.0;  // renewal-matched to the pairing rate
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = {
      "baseline_peace",     "war_draft",    "blockade", "mountain_abstinence",
      "comfort_parthenogenesis", "ww1_double_dip", "tracking_race"};
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  if (name == "baseline_peace") {
    s = make_baseline_peace();
  } else if (name == "war_draft") {
    s = make_war_draft();
  } else if (name == "blockade") {
    s = make_blockade();
  } else if (name == "mountain_abstinence") {
    s = make_mountain_abstinence();
  } else if (name == "comfort_parthenogenesis") {
    s = make_comfort_parthenogenesis();
  } else if (name == "ww1_double_dip") {
    s = make_ww1_double_dip();
  } else if (name == "tracking_race") {
    s = make_tracking_race();
  } else {
    std::string catalog;
    for (const std::string& n : builtin_scenario_names()) {
      if (!catalog.empty()) catalog += ", ";
      catalog += n;
    }
    throw ConfigError("unknown scenario '" + name + "' (catalog: " + catalog + ")");
  }
  s.validate();
  return s;
}

Trajectory run_scenario(const Scenario& scenario, std::uint64_t seed, const RunOptions& options) {
  scenario.validate();
  RunOptions opts = options;
  if (scenario.mode == ScenarioMode::tracking && !opts.tracking) {
    opts.tracking = &scenario.asexual;
  }
  return run(scenario.config, scenario.events, seed, opts);
}

}  // namespace srsim
