#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "linksim/results_io.hpp"

namespace linksim {
namespace {

std::vector<ReplicationResult> sample_results() {
  std::vector<ReplicationResult> out;
  for (int rep = 0; rep < 2; ++rep)
    for (Method m : {Method::Cox, Method::Sccs})
      for (int dose : {1, 2}) {
        ReplicationResult r;
        r.scenario_id = 3;
        r.p_missing_match = 0.3;
        r.p_false_match = 0.00005;
        r.replication = rep;
        r.method = m;
        r.dose = dose;
        r.estimate = 3.0 + 0.1 * rep + dose / 7.0;
        r.se_log = 0.25;
        r.p_value = 1e-5 / (dose + rep);
        r.converged = true;
        out.push_back(r);
      }
  out.back().estimate = out.back().se_log = out.back().p_value = NAN;
  out.back().converged = false;
  return out;
}

TEST(ReplicationsCsv, HeaderAndPercentColumns) {
  std::stringstream buffer;
  write_replications_csv(buffer, sample_results());
  std::string line;
  std::getline(buffer, line);
  EXPECT_EQ(line, "scenario_id,pct_missing,pct_false,replication,method,dose,estimate,se_log,p_value,converged");
  std::getline(buffer, line);
  EXPECT_EQ(line.substr(0, 17), "3,30,0.005,0,cox,");
  std::string last;
  while (std::getline(buffer, line)) last = line;
  EXPECT_EQ(last, "3,30,0.005,1,sccs,2,,,,0");
}

TEST(ReplicationsCsv, RoundTrip) {
  const auto results = sample_results();
  std::stringstream buffer;
  write_replications_csv(buffer, results);
  const auto back = read_replications_csv(buffer);
  ASSERT_EQ(back.size(), results.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].scenario_id, results[i].scenario_id);
    EXPECT_DOUBLE_EQ(back[i].p_missing_match, results[i].p_missing_match);
    EXPECT_DOUBLE_EQ(back[i].p_false_match, results[i].p_false_match);
    EXPECT_EQ(back[i].method, results[i].method);
    EXPECT_EQ(back[i].dose, results[i].dose);
    EXPECT_EQ(back[i].converged, results[i].converged);
    if (results[i].converged) {
      EXPECT_EQ(back[i].estimate, results[i].estimate);
      EXPECT_EQ(back[i].p_value, results[i].p_value);
    } else {
      EXPECT_TRUE(std::isnan(back[i].estimate));
    }
  }
}

TEST(SummaryCsv, CommentHeaderAndRoundTrip) {
  ScenarioSummary s;
  s.scenario_id = 1;
  s.p_missing_match = 0.1;
  s.p_false_match = 0.00005;
  s.method = Method::Sccs;
  s.dose = 2;
  s.n_converged = 199;
  s.n_nonconverged = 1;
  s.bias = -0.123456789;
  s.se_bias = 0.1;
  s.bias_ci_low = -0.3;
  s.bias_ci_high = 0.07;
  s.mse = 1.5;
  s.se_mse = 0.2;
  s.power = 0.8;
  s.power_ci_low = 0.74;
  s.power_ci_high = 0.85;
  std::stringstream buffer;
  write_summary_csv(buffer, std::vector{s}, 3.24);
  std::string first;
  std::getline(buffer, first);
  EXPECT_EQ(first.front(), '#');
  EXPECT_NE(first.find("estimate - true_rr"), std::string::npos);
  EXPECT_NE(first.find("3.24"), std::string::npos);
  buffer.seekg(0);
  const auto back = read_summary_csv(buffer);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].bias, s.bias);
  EXPECT_EQ(back[0].power_ci_high, s.power_ci_high);
  EXPECT_EQ(back[0].n_nonconverged, 1u);
  EXPECT_EQ(back[0].method, Method::Sccs);
}

TEST(SummaryCsv, StartsWithRequiredColumns) {
  const std::string required =
      "scenario_id,pct_missing,pct_false,method,dose,n_converged,bias,se_bias,bias_ci_low,bias_ci_high,mse,se_mse,"
      "power,power_ci_low,power_ci_high";
  EXPECT_EQ(std::string(kSummaryHeader).substr(0, required.size()), required);
}

TEST(Csv, RejectsMalformedInput) {
  std::stringstream wrong_header("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_replications_csv(wrong_header), std::invalid_argument);
  std::stringstream short_row(std::string(kReplicationsHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_replications_csv(short_row), std::invalid_argument);
  std::stringstream bad_method(std::string(kReplicationsHeader) + "\n0,0,0,0,logit,1,1,1,1,1\n");
  EXPECT_THROW(read_replications_csv(bad_method), std::invalid_argument);
  std::stringstream empty;
  EXPECT_THROW(read_summary_csv(empty), std::invalid_argument);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(3.24), "3.24");
  EXPECT_EQ(format_double(NAN), "");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

}  // namespace
}  // namespace linksim
