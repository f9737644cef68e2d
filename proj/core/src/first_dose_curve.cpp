#include "linksim/first_dose_curve.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linksim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("first-dose curve line " + std::to_string(line_no) +
                                ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> default_first_dose_curve(std::size_t length, const LogisticRamp& ramp) {
  std::vector<double> curve(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double x = (static_cast<double>(k) - ramp.midpoint) / ramp.scale;
    curve[k] = ramp.peak / (1.0 + std::exp(-x));
  }
  return curve;
}

std::vector<double> parse_first_dose_curve(std::istream& in) {
  std::vector<double> curve;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (row != "day,probability") {
        throw std::invalid_argument("first-dose curve: expected header 'day,probability', got '" +
                                    std::string(row) + "'");
      }
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("first-dose curve line " + std::to_string(line_no) +
                                  ": expected two comma-separated columns");
    }
    const auto day = parse_number<long>(trim(row.substr(0, comma)), line_no);
    const auto prob = parse_number<double>(trim(row.substr(comma + 1)), line_no);
    if (day != static_cast<long>(curve.size())) {
      throw std::invalid_argument("first-dose curve line " + std::to_string(line_no) + ": day " +
                                  std::to_string(day) + " breaks contiguity (expected " +
                                  std::to_string(curve.size()) + ")");
    }
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw std::invalid_argument("first-dose curve line " + std::to_string(line_no) +
                                  ": probability outside [0,1]");
    }
    curve.push_back(prob);
  }
  if (curve.empty()) throw std::invalid_argument("first-dose curve: no data rows");
  return curve;
}

std::vector<double> load_first_dose_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open first-dose curve file: " + path.string());
  return parse_first_dose_curve(in);
}

void write_first_dose_curve(std::ostream& out, const std::vector<double>& curve) {
  out << "day,probability\n";
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < curve.size(); ++k) out << k << ',' << curve[k] << '\n';
  out.precision(old_precision);
}

}  // namespace linksim
