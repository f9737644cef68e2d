#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "linksim/harness.hpp"

namespace linksim {

inline constexpr const char* kReplicationsHeader =
    "scenario_id,pct_missing,pct_false,replication,method,dose,estimate,se_log,p_value,converged";

inline constexpr const char* kSummaryHeader =
    "scenario_id,pct_missing,pct_false,method,dose,n_converged,bias,se_bias,bias_ci_low,bias_ci_high,"
    "mse,se_mse,power,power_ci_low,power_ci_high,n_nonconverged";

// Undefined values (NaN) are written as empty fields. Doubles use the
// shortest representation that round-trips.
void write_replications_csv(std::ostream& out, std::span<const ReplicationResult> results);

// Preceded by one '#' comment line stating the bias sign convention and true_rr.
void write_summary_csv(std::ostream& out, std::span<const ScenarioSummary> summaries, double true_rr);

std::vector<ReplicationResult> read_replications_csv(std::istream& in);
std::vector<ScenarioSummary> read_summary_csv(std::istream& in);

std::string format_double(double value);

}  // namespace linksim
