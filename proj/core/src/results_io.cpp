#include "linksim/results_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace linksim {

namespace {

double to_percent(double proportion) { return std::round(proportion * 100.0 * 1e9) / 1e9; }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text) {
  if (text.empty()) return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse number '" + text + "'");
  }
  return value;
}

long parse_long(const std::string& text) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse integer '" + text + "'");
  }
  return value;
}

Method parse_method(const std::string& text) {
  if (text == "cox") return Method::Cox;
  if (text == "sccs") return Method::Sccs;
  throw std::invalid_argument("unknown method '" + text + "'");
}

// Reads data lines after the expected header, skipping '#' comments.
template <typename F>
void for_each_row(std::istream& in, const char* header, std::size_t columns, F&& f) {
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != header) throw std::invalid_argument("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != columns) {
      throw std::invalid_argument("expected " + std::to_string(columns) + " columns, got " +
                                  std::to_string(fields.size()));
    }
    f(fields);
  }
  if (!header_seen) throw std::invalid_argument(std::string("missing CSV header: ") + header);
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return {};
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

void write_replications_csv(std::ostream& out, std::span<const ReplicationResult> results) {
  out << kReplicationsHeader << '\n';
  for (const auto& r : results) {
    out << r.scenario_id << ',' << format_double(to_percent(r.p_missing_match)) << ','
        << format_double(to_percent(r.p_false_match)) << ',' << r.replication << ',' << to_string(r.method) << ','
        << r.dose << ',' << format_double(r.estimate) << ',' << format_double(r.se_log) << ','
        << format_double(r.p_value) << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const ScenarioSummary> summaries, double true_rr) {
  out << "# bias = mean(estimate - true_rr) on the ratio scale; true_rr = " << format_double(true_rr)
      << "; non-converged fits excluded\n";
  out << kSummaryHeader << '\n';
  for (const auto& s : summaries) {
    out << s.scenario_id << ',' << format_double(to_percent(s.p_missing_match)) << ','
        << format_double(to_percent(s.p_false_match)) << ',' << to_string(s.method) << ',' << s.dose << ','
        << s.n_converged << ',' << format_double(s.bias) << ',' << format_double(s.se_bias) << ','
        << format_double(s.bias_ci_low) << ',' << format_double(s.bias_ci_high) << ','
        << format_double(s.mse) << ',' << format_double(s.se_mse) << ',' << format_double(s.power) << ','
        << format_double(s.power_ci_low) << ',' << format_double(s.power_ci_high) << ','
        << s.n_nonconverged << '\n';
  }
}

std::vector<ReplicationResult> read_replications_csv(std::istream& in) {
  std::vector<ReplicationResult> out;
  for_each_row(in, kReplicationsHeader, 10, [&](const std::vector<std::string>& f) {
    ReplicationResult r;
    r.scenario_id = static_cast<std::size_t>(parse_long(f[0]));
    r.p_missing_match = parse_double(f[1]) / 100.0;
    r.p_false_match = parse_double(f[2]) / 100.0;
    r.replication = static_cast<int>(parse_long(f[3]));
    r.method = parse_method(f[4]);
    r.dose = static_cast<int>(parse_long(f[5]));
    r.estimate = parse_double(f[6]);
    r.se_log = parse_double(f[7]);
    r.p_value = parse_double(f[8]);
    r.converged = parse_long(f[9]) != 0;
    out.push_back(r);
  });
  return out;
}

std::vector<ScenarioSummary> read_summary_csv(std::istream& in) {
  std::vector<ScenarioSummary> out;
  for_each_row(in, kSummaryHeader, 16, [&](const std::vector<std::string>& f) {
    ScenarioSummary s;
    s.scenario_id = static_cast<std::size_t>(parse_long(f[0]));
    s.p_missing_match = parse_double(f[1]) / 100.0;
    s.p_false_match = parse_double(f[2]) / 100.0;
    s.method = parse_method(f[3]);
    s.dose = static_cast<int>(parse_long(f[4]));
    s.n_converged = static_cast<std::size_t>(parse_long(f[5]));
    s.bias = parse_double(f[6]);
    s.se_bias = parse_double(f[7]);
    s.bias_ci_low = parse_double(f[8]);
    s.bias_ci_high = parse_double(f[9]);
    s.mse = parse_double(f[10]);
    s.se_mse = parse_double(f[11]);
    s.power = parse_double(f[12]);
    s.power_ci_low = parse_double(f[13]);
    s.power_ci_high = parse_double(f[14]);
    s.n_nonconverged = static_cast<std::size_t>(parse_long(f[15]));
    out.push_back(s);
  });
  return out;
}

}  // namespace linksim
