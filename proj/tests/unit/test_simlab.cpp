#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "hypertest/simlab.hpp"
#include "hypertest/stats.hpp"
#include "test_util.hpp"

using namespace hypertest;
using testutil::code_of;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.n = 30;
  c.layers = {SimLayer{2, 0.1, 2.0, 1}, SimLayer{3, 0.02, 2.0, 1}};
  c.varsigma = 0.5;
  c.delta_target = 1.5;
  c.reps = 24;
  c.seed = 11;
  return c;
}

SimGrid parse(const std::string& text) {
  std::istringstream in(text);
  return parse_sim_config(in);
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidConfig);
    return e.what();
  }
  ADD_FAILURE() << "expected InvalidConfig";
  return {};
}

}  // namespace

TEST(SolveRateRatio, ZeroTarget) { EXPECT_EQ(solve_rate_ratio(0.01, 0.0, 100, 3), 1.0); }

TEST(SolveRateRatio, ReferenceRow) {
  EXPECT_NEAR(solve_rate_ratio(0.01, 1.0, 100, 3) / 2.26, 1.0, 0.05);
}

TEST(SolveRateRatio, HitsTarget) {
  for (double target : {0.5, 2.0, 7.0}) {
    const double r = solve_rate_ratio(0.1, target, 100, 2);
    DenseRegimeParams p;
    p.a = r * 0.1 * 100;
    p.b = 0.1 * 100;
    p.m = 2;
    EXPECT_NEAR(theoretical_evt(p, 100).delta, target, 1e-6);
  }
}

TEST(SolveRateRatio, Monotone) {
  double prev = 1.0;
  for (int d = 1; d <= 10; ++d) {
    const double r = solve_rate_ratio(0.01, d, 100, 3);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(SolveRateRatio, Errors) {
  EXPECT_EQ(code_of([] { solve_rate_ratio(0.01, 1e12, 100, 3); }), Errc::NoBracket);
  EXPECT_EQ(code_of([] { solve_rate_ratio(0.01, -1.0, 100, 3); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { solve_rate_ratio(0.0, 1.0, 100, 3); }), Errc::InvalidArgument);
}

TEST(SimConfig, ResolvedStatistics) {
  SimConfig c = small_config();
  EXPECT_EQ(c.resolved_statistics(), (std::vector<std::string>{"Z2", "Z3", "Z"}));
  c.layers.resize(1);
  EXPECT_EQ(c.resolved_statistics(), (std::vector<std::string>{"Z2"}));
}

TEST(SimConfig, Validate) {
  SimConfig c = small_config();
  EXPECT_NO_THROW(c.validate());
  c.statistics = {"Z4"};
  EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidConfig);
  c = small_config();
  c.weights = {1.0, 1.0};
  EXPECT_EQ(code_of([&] { c.validate(); }), Errc::WeightNormViolation);
  c = small_config();
  c.reps = 0;
  EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidConfig);
  c = small_config();
  c.varsigma = 0.7;
  EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidConfig);
}

TEST(RunExperiment, RowsAndRanges) {
  const SimResult r = run_experiment(small_config());
  ASSERT_EQ(r.rows.size(), 3u);
  for (const SimRow& row : r.rows) {
    EXPECT_EQ(row.reps_completed + row.reps_failed, 24u);
    EXPECT_GE(row.rejection_proportion, 0.0);
    EXPECT_LE(row.rejection_proportion, 1.0);
    const double p = row.rejection_proportion;
    EXPECT_NEAR(row.std_error, std::sqrt(p * (1 - p) / 24), 1e-15);
    EXPECT_EQ(row.wall_ms, 0u);
    EXPECT_EQ(row.m_list, (std::vector<std::size_t>{2, 3}));
  }
  EXPECT_EQ(r.rows[2].statistic_name, "Z");
}

TEST(RunExperiment, SingleReplicate) {
  SimConfig c = small_config();
  c.reps = 1;
  for (const SimRow& row : run_experiment(c).rows) {
    EXPECT_TRUE(row.rejection_proportion == 0.0 || row.rejection_proportion == 1.0);
    EXPECT_EQ(row.std_error, 0.0);
  }
}

TEST(RunExperiment, WorkerCountDoesNotChangeResults) {
  const SimConfig c = small_config();
  const SimResult one = run_experiment(c, RunOptions{1, false});
  const SimResult eight = run_experiment(c, RunOptions{8, false});
  EXPECT_EQ(one, eight);
  std::ostringstream a, b;
  write_csv(one, a);
  write_csv(eight, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunExperiment, SeedChangesResults) {
  SimConfig c = small_config();
  c.reps = 40;
  const SimResult first = run_experiment(c);
  c.seed = 12;
  EXPECT_NE(first, run_experiment(c));
}

TEST(RunExperiment, EmptyLayersCountAsFailures) {
  SimConfig c = small_config();
  c.layers = {SimLayer{3, 1e-9, 1.0, 1}};
  c.reps = 5;
  const SimResult r = run_experiment(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].reps_failed, 5u);
  EXPECT_EQ(r.rows[0].rejection_proportion, 0.0);
  EXPECT_TRUE(std::isnan(r.rows[0].mean_statistic));
}

TEST(RunGrid, ConcatenatesCells) {
  SimConfig a = small_config(), b = small_config();
  a.reps = b.reps = 4;
  b.cell_id = 1;
  const std::vector<SimConfig> cells{a, b};
  const SimResult r = run_grid(cells);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0].cell_id, 0u);
  EXPECT_EQ(r.rows[5].cell_id, 1u);
}

TEST(Csv, HeaderOnly) {
  std::ostringstream out;
  write_csv(SimResult{}, out);
  EXPECT_EQ(out.str(), std::string(kSimCsvHeader) + "\n");
  std::istringstream in(out.str());
  EXPECT_TRUE(parse_csv(in).rows.empty());
}

TEST(Csv, RoundTrip) {
  SimConfig c = small_config();
  c.reps = 6;
  SimResult r = run_experiment(c);
  r.rows[0].mean_statistic = std::numeric_limits<double>::quiet_NaN();
  r.rows[1].delta_target.reset();
  r.rows[1].b_list[0] = 0.1 + 0.2;
  std::ostringstream out;
  write_csv(r, out);
  std::istringstream in(out.str());
  const SimResult back = parse_csv(in);
  ASSERT_EQ(back.rows.size(), r.rows.size());
  std::ostringstream again;
  write_csv(back, again);
  EXPECT_EQ(out.str(), again.str());
  EXPECT_EQ(back.rows[1].b_list[0], 0.1 + 0.2);
  EXPECT_FALSE(back.rows[1].delta_target);
  EXPECT_TRUE(std::isnan(back.rows[0].mean_statistic));
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i != 0) EXPECT_EQ(back.rows[i], r.rows[i]);
  }
}

TEST(Csv, ColumnCount) {
  SimConfig c = small_config();
  c.reps = 2;
  std::ostringstream out;
  write_csv(run_experiment(c), out);
  std::istringstream in(out.str());
  std::string line;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 13);
  }
}

TEST(Csv, ParseErrors) {
  std::istringstream wrong_header("a,b,c\n");
  EXPECT_EQ(code_of([&] { parse_csv(wrong_header); }), Errc::ParseError);
  std::istringstream short_row(std::string(kSimCsvHeader) + "\n0,100,2\n");
  EXPECT_EQ(code_of([&] { parse_csv(short_row); }), Errc::ParseError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(SimConfigFile, ParsesGrid) {
  const SimGrid g = parse(
      "schema = 1\n"
      "# comment\n"
      "n = 40\n"
      "m = 2, 3\n"
      "b = 0.1, 0.01\n"
      "varsigma = 0.5, 0.3\n"
      "delta = 0, 1, 2\n"
      "reps = 10\n"
      "seed = 99\n");
  ASSERT_EQ(g.cells.size(), 6u);
  EXPECT_TRUE(g.seed_given);
  EXPECT_EQ(g.seed, 99u);
  EXPECT_EQ(g.cells[0].varsigma, 0.5);
  EXPECT_EQ(g.cells[3].varsigma, 0.3);
  EXPECT_EQ(g.cells[4].delta_target, 1.0);
  EXPECT_EQ(g.cells[0].layers[1].r, 1.0);
  EXPECT_GT(g.cells[2].layers[0].r, g.cells[1].layers[0].r);
  for (std::size_t i = 0; i < g.cells.size(); ++i) EXPECT_EQ(g.cells[i].cell_id, i);
}

TEST(SimConfigFile, ExplicitRatios) {
  const SimGrid g = parse("schema = 1\nm = 2\nb = 0.1\nr2 = 1, 1.5\n");
  ASSERT_EQ(g.cells.size(), 2u);
  EXPECT_EQ(g.cells[1].layers[0].r, 1.5);
  EXPECT_FALSE(g.cells[1].delta_target);
  EXPECT_FALSE(g.seed_given);
}

TEST(SimConfigFile, Errors) {
  EXPECT_NE(parse_error("m = 2\nb = 0.1\n").find("schema"), std::string::npos);
  EXPECT_NE(parse_error("schema = 2\nm = 2\nb = 0.1\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("schema = 1\nm = 2\nb = 0.1\nfoo = 3\n").find("line 4"), std::string::npos);
  EXPECT_NE(parse_error("schema = 1\nm = 2\nm = 3\nb = 0.1\n").find("duplicate"), std::string::npos);
  EXPECT_NE(parse_error("schema = 1\nm = 2\nb = x\n").find("line 3"), std::string::npos);
  EXPECT_NE(parse_error("schema = 1\nm = 2, 3\nb = 0.1\n").find("line 3"), std::string::npos);
  EXPECT_NE(parse_error("schema = 1\nm = 2\nb = 0.1\nno equals sign\n").find("line 4"),
            std::string::npos);
  parse_error("schema = 1\nm = 2, 3\nb = 0.1, 0.1\nweights = 1, 1\n");
}
