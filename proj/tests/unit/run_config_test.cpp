#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "linksim/first_dose_curve.hpp"
#include "linksim/run_config.hpp"

namespace linksim {
namespace {

RunConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  return parse_run_config(in, base);
}

TEST(RunConfig, EmptyFileGivesDefaults) {
  const auto c = parse("# nothing\n");
  EXPECT_EQ(c.sim, SimConfig::defaults());
  EXPECT_EQ(c.missing_match, (std::vector<double>{0, 0.1, 0.2, 0.3, 0.4, 0.5}));
  EXPECT_EQ(c.false_match, 0.00005);
  EXPECT_EQ(c.replications, 2000);
  EXPECT_EQ(c.alpha, 0.05);
  EXPECT_EQ(c.missing_base, MissingMatchBase::Population);
  EXPECT_EQ(c.cox_origin, CoxTimeOrigin::CampaignStart);
  EXPECT_EQ(c.ties, TieMethod::Efron);
  EXPECT_NO_THROW(c.validate());
}

TEST(RunConfig, AllKeys) {
  const auto c = parse(R"(
n_sim = 1000
n_days = 200
campaign_start_day = 100
d_risk = 14
d_immune = 30
rr_vacc = 2.5
p_event_year = 0.001
second_dose_gap_mrna = 21
second_dose_gap_az = 60
p_biontech = 0.5
p_moderna = 0.5
p_astrazeneca = 0
p_janssen = 0
missing_match = [0.0, 0.25]
false_match = 0.001
replications = 10
alpha = 0.1
seed = 42
threads = 3
missing_match_base = "vaccinated"
cox_origin = "simulation_start"
ties = "breslow"
)");
  EXPECT_EQ(c.sim.n_sim, 1000);
  EXPECT_EQ(c.sim.n_days, 200);
  EXPECT_EQ(c.sim.campaign_start_day, 100);
  EXPECT_EQ(c.sim.d_risk, 14);
  EXPECT_EQ(c.sim.d_immune, 30);
  EXPECT_EQ(c.sim.rr_vacc, 2.5);
  EXPECT_EQ(c.sim.p_event_year, 0.001);
  EXPECT_EQ(c.sim.second_dose_gap_mrna, 21);
  EXPECT_EQ(c.sim.second_dose_gap_az, 60);
  EXPECT_EQ(c.sim.vaccine_type_dist, (VaccineTypeDistribution{0.5, 0.5, 0, 0}));
  EXPECT_EQ(c.sim.first_dose_curve.size(), c.sim.campaign_length());
  EXPECT_EQ(c.missing_match, (std::vector<double>{0.0, 0.25}));
  EXPECT_EQ(c.false_match, 0.001);
  EXPECT_EQ(c.replications, 10);
  EXPECT_EQ(c.alpha, 0.1);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.threads, 3);
  EXPECT_EQ(c.missing_base, MissingMatchBase::Vaccinated);
  EXPECT_EQ(c.cox_origin, CoxTimeOrigin::SimulationStart);
  EXPECT_EQ(c.ties, TieMethod::Breslow);
  EXPECT_NO_THROW(c.validate());

  const auto scenarios = c.scenarios();
  ASSERT_EQ(scenarios.size(), 2u);
  EXPECT_EQ(scenarios[1].p_missing_match, 0.25);
  EXPECT_EQ(scenarios[1].p_false_match, 0.001);
  EXPECT_EQ(scenarios[1].replications, 10);
  EXPECT_EQ(scenarios[1].master_seed, 42u);
  EXPECT_EQ(scenarios[1].missing_base, MissingMatchBase::Vaccinated);
  const auto options = c.run_options();
  EXPECT_EQ(options.threads, 3);
  EXPECT_EQ(options.ties, TieMethod::Breslow);
}

TEST(RunConfig, RejectsUnknownKeysSectionsAndBadValues) {
  EXPECT_THROW(parse("n_simm = 5\n"), std::invalid_argument);
  EXPECT_THROW(parse("[sim]\nn_sim = 5\n"), std::invalid_argument);
  EXPECT_THROW(parse("n_sim = five\n"), std::invalid_argument);
  EXPECT_THROW(parse("cox_origin = \"tomorrow\"\n"), std::invalid_argument);
  EXPECT_THROW(parse("missing_match = [0.1, x]\n"), std::invalid_argument);
}

TEST(RunConfig, ValidationCatchesBadValues) {
  EXPECT_THROW(parse("replications = 0\n").validate(), std::invalid_argument);
  EXPECT_THROW(parse("alpha = 0\n").validate(), std::invalid_argument);
  EXPECT_THROW(parse("missing_match = [1.5]\n").validate(), std::invalid_argument);
  EXPECT_THROW(parse("p_janssen = 0.5\n").validate(), std::invalid_argument);
  EXPECT_THROW(parse("threads = 0\n").validate(), std::invalid_argument);
}

TEST(RunConfig, CurvePathRelativeToConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "linksim_run_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream curve(dir / "curve.csv");
    curve << "day,probability\n";
    for (int d = 0; d < 10; ++d) curve << d << ",0.01\n";
    std::ofstream config(dir / "sim.toml");
    config << "n_days = 20\ncampaign_start_day = 11\nfirst_dose_curve = \"curve.csv\"\n";
  }
  const auto c = load_run_config(dir / "sim.toml");
  EXPECT_EQ(c.first_dose_curve_path, dir / "curve.csv");
  EXPECT_EQ(c.sim.first_dose_curve, std::vector<double>(10, 0.01));
  EXPECT_NO_THROW(c.validate());
  std::filesystem::remove_all(dir);
}

TEST(RunConfig, MissingFile) {
  try {
    load_run_config("/no/such/dir/sim.toml");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/no/such/dir/sim.toml"), std::string::npos);
  }
}

TEST(RunConfig, BundledConfigIsValid) {
  const auto c = load_run_config(std::filesystem::path(LINKSIM_SOURCE_DIR) / "configs" / "sim.toml");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.sim, SimConfig::defaults());
}

TEST(ProportionList, Parses) {
  EXPECT_EQ(parse_proportion_list("0,0.1, 0.25"), (std::vector<double>{0, 0.1, 0.25}));
  EXPECT_THROW(parse_proportion_list(""), std::invalid_argument);
  EXPECT_THROW(parse_proportion_list("0,,1"), std::invalid_argument);
  EXPECT_THROW(parse_proportion_list("a"), std::invalid_argument);
}

}  // namespace
}  // namespace linksim
