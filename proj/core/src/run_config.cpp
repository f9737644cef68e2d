#include "linksim/run_config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linksim/first_dose_curve.hpp"

namespace linksim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(const std::string& key, std::string_view text) {
  text = trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + std::string(text) + "'");
  }
  return value;
}

const std::string& single_input(const CLI::ConfigItem& item) {
  if (item.inputs.size() != 1) {
    throw std::invalid_argument("config key '" + item.name + "' expects a single value");
  }
  return item.inputs.front();
}

}  // namespace

std::vector<double> parse_proportion_list(const std::string& text) {
  std::vector<double> out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = trim(rest.substr(0, comma));
    if (token.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(parse_value<double>("scenarios", token));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty proportion list");
  return out;
}

void RunConfig::validate() const {
  sim.validate();
  if (missing_match.empty()) throw std::invalid_argument("missing_match must list at least one proportion");
  for (const auto& s : scenarios()) s.validate();
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::vector<ScenarioSpec> RunConfig::scenarios() const {
  std::vector<ScenarioSpec> out;
  out.reserve(missing_match.size());
  for (double p : missing_match) out.push_back({p, false_match, replications, alpha, seed, missing_base});
  return out;
}

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir) {
  const auto items = CLI::ConfigTOML().from_config(in);
  RunConfig config;
  bool curve_changed = false;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) {
      throw std::invalid_argument("config sections are not supported (key '" + item.fullname() + "')");
    }
    const auto& key = item.name;
    auto& sim = config.sim;
    if (key == "missing_match") {
      config.missing_match.clear();
      for (const auto& v : item.inputs) config.missing_match.push_back(parse_value<double>(key, v));
      continue;
    }
    const auto& value = single_input(item);
    if (key == "n_sim") sim.n_sim = parse_value<std::int64_t>(key, value);
    else if (key == "n_days") { sim.n_days = parse_value<Day>(key, value); curve_changed = true; }
    else if (key == "campaign_start_day") { sim.campaign_start_day = parse_value<Day>(key, value); curve_changed = true; }
    else if (key == "d_risk") sim.d_risk = parse_value<Day>(key, value);
    else if (key == "d_immune") sim.d_immune = parse_value<Day>(key, value);
    else if (key == "rr_vacc") sim.rr_vacc = parse_value<double>(key, value);
    else if (key == "p_event_year") sim.p_event_year = parse_value<double>(key, value);
    else if (key == "second_dose_gap_mrna") sim.second_dose_gap_mrna = parse_value<Day>(key, value);
    else if (key == "second_dose_gap_az") sim.second_dose_gap_az = parse_value<Day>(key, value);
    else if (key == "p_biontech") sim.vaccine_type_dist[0] = parse_value<double>(key, value);
    else if (key == "p_moderna") sim.vaccine_type_dist[1] = parse_value<double>(key, value);
    else if (key == "p_astrazeneca") sim.vaccine_type_dist[2] = parse_value<double>(key, value);
    else if (key == "p_janssen") sim.vaccine_type_dist[3] = parse_value<double>(key, value);
    else if (key == "first_dose_curve") {
      std::filesystem::path path(value);
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      config.first_dose_curve_path = path;
    }
    else if (key == "false_match") config.false_match = parse_value<double>(key, value);
    else if (key == "replications") config.replications = parse_value<int>(key, value);
    else if (key == "alpha") config.alpha = parse_value<double>(key, value);
    else if (key == "seed") config.seed = parse_value<std::uint64_t>(key, value);
    else if (key == "threads") config.threads = parse_value<int>(key, value);
    else if (key == "missing_match_base") {
      if (value == "population") config.missing_base = MissingMatchBase::Population;
      else if (value == "vaccinated") config.missing_base = MissingMatchBase::Vaccinated;
      else throw std::invalid_argument("missing_match_base must be \"population\" or \"vaccinated\"");
    }
    else if (key == "cox_origin") {
      if (value == "campaign_start") config.cox_origin = CoxTimeOrigin::CampaignStart;
      else if (value == "simulation_start") config.cox_origin = CoxTimeOrigin::SimulationStart;
      else throw std::invalid_argument("cox_origin must be \"campaign_start\" or \"simulation_start\"");
    }
    else if (key == "ties") {
      if (value == "efron") config.ties = TieMethod::Efron;
      else if (value == "breslow") config.ties = TieMethod::Breslow;
      else throw std::invalid_argument("ties must be \"efron\" or \"breslow\"");
    }
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }

  if (config.first_dose_curve_path) {
    config.sim.first_dose_curve = load_first_dose_curve(*config.first_dose_curve_path);
  } else if (curve_changed) {
    config.sim.first_dose_curve = default_first_dose_curve(config.sim.campaign_length());
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  return parse_run_config(in, path.parent_path());
}

}  // namespace linksim
