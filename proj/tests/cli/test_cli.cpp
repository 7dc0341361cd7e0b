#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hypertest/ingest.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path work(const std::string& name) {
  const fs::path dir = fs::path(HYPERTEST_WORK_DIR);
  fs::create_directories(dir);
  return dir / name;
}

CliRun run(const std::string& args) {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const fs::path out = work("stdout_" + tag), err = work("stderr_" + tag);
  const std::string cmd = std::string(HYPERTEST_BIN) + " " + args + " > " + out.string() + " 2> " +
                          err.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string config(const std::string& name) { return std::string(HYPERTEST_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST(CliHelp, ListsEveryGlobalFlag) {
  const CliRun r = run("--help");
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--seed", "--workers", "--output", "--format"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  for (const char* sub : {"generate", "count", "test", "estimate", "simulate", "classify", "ingest"}) {
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  }
}

TEST(CliHelp, ListsSubcommandFlags) {
  const CliRun r = run("test --help");
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--regime", "--l", "--kn", "--alpha", "--weights", "--input"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}

TEST(CliExitCodes, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("generate --n 10 --m 3").code, 2);
  EXPECT_EQ(run("classify --m 3 --alpha-exp 2 --format yaml").code, 2);
  EXPECT_EQ(run("count --input /nonexistent/file").code, 2);
  EXPECT_EQ(run("generate --n 10 --m 3 --p 0.1 --q 0.2 --seed 1 --output " +
                work("bad").string()).code, 2);
  EXPECT_EQ(run("generate --n 2 --m 3 --p 0.1 --seed 1 --output " + work("bad").string()).code, 2);
}

TEST(CliGenerate, RoundTripsThroughIngest) {
  const fs::path prefix = work("gen");
  const CliRun r = run("generate --n 100 --m 3 --k 2 --p 0.02 --q 0.01 --seed 7 --output " +
                    prefix.string());
  ASSERT_EQ(r.code, 0) << r.err;
  hypertest::LabeledDataset ds = hypertest::read_hyperedge_file(prefix.string() + ".edges");
  hypertest::read_label_file(ds, prefix.string() + ".labels");
  ASSERT_EQ(ds.hypergraph.layers().size(), 1u);
  EXPECT_TRUE(ds.hypergraph.has_layer(3));
  EXPECT_GT(ds.hypergraph.total_edges(), 100u);
  EXPECT_EQ(ds.label_set(), (std::vector<std::string>{"0", "1"}));

  const json manifest = json::parse(slurp(prefix.string() + ".manifest.json"));
  EXPECT_EQ(manifest["subcommand"], "generate");
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_EQ(manifest["outputs"].size(), 2u);
}

TEST(CliGenerate, Deterministic) {
  const fs::path a = work("det_a"), b = work("det_b");
  ASSERT_EQ(run("generate --n 60 --m 2 --p 0.1 --q 0.05 --seed 3 --output " + a.string()).code, 0);
  ASSERT_EQ(run("generate --n 60 --m 2 --p 0.1 --q 0.05 --seed 3 --output " + b.string()).code, 0);
  EXPECT_EQ(slurp(a.string() + ".edges"), slurp(b.string() + ".edges"));
  EXPECT_EQ(slurp(a.string() + ".labels"), slurp(b.string() + ".labels"));
  const fs::path c = work("det_c");
  ASSERT_EQ(run("generate --n 60 --m 2 --p 0.1 --q 0.05 --seed 4 --output " + c.string()).code, 0);
  EXPECT_NE(slurp(a.string() + ".edges"), slurp(c.string() + ".edges"));
}

TEST(CliGenerate, ZeroProbabilityGivesHeaderOnly) {
  const fs::path prefix = work("empty");
  ASSERT_EQ(run("generate --n 20 --m 3 --p 0 --seed 1 --output " + prefix.string()).code, 0);
  const std::string text = slurp(prefix.string() + ".edges");
  ASSERT_FALSE(text.empty());
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) EXPECT_EQ(line.front(), '#');
}

TEST(CliGenerate, PrintsDrawnSeed) {
  const CliRun r = run("generate --n 20 --m 2 --p 0.1 --output " + work("drawn").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("seed: "), std::string::npos);
}

TEST(CliCount, HandExample) {
  const fs::path f = work("tri.txt");
  write_file(f, "0 1 2\n2 3 4\n4 5 0\n");
  const CliRun r = run("count --input " + f.string() + " --l 1 --cycles 3 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["hyperedges"], 3);
  EXPECT_EQ(j["hypervees"], 3);
  EXPECT_EQ(j["hypertriangles"], 1);
  EXPECT_EQ(j["loose_cycles_3"], 1);
}

TEST(CliCount, CsvHasOneRowPerLayer) {
  const fs::path f = work("mixed_small.txt");
  write_file(f, "0 1\n1 2\n0 1 2\n2 3 4\n");
  const CliRun r = run("count --input " + f.string() + " --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(CliTest, DenseNeedsOverlapWithHint) {
  const fs::path f = work("tri.txt");
  write_file(f, "0 1 2\n2 3 4\n4 5 0\n");
  const CliRun r = run("test --regime dense --input " + f.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--l"), std::string::npos);
  EXPECT_NE(r.err.find("hyperedge proportion"), std::string::npos);
}

TEST(CliTest, DenseNullMostlyFailsToReject) {
  int accepted = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const fs::path prefix = work("er_" + std::to_string(seed));
    ASSERT_EQ(run("generate --n 60 --m 3 --p 0.01 --seed " + std::to_string(seed) + " --output " +
                  prefix.string()).code, 0);
    const CliRun r = run("test --regime dense --l 1 --format json --input " + prefix.string() + ".edges");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    if (j["decision_prime"] == "fail to reject") ++accepted;
  }
  EXPECT_GE(accepted, 18);
}

TEST(CliTest, CombinedMatchesHandCombination) {
  const fs::path two = work("layer2"), three = work("layer3");
  ASSERT_EQ(run("generate --n 80 --m 2 --p 0.08 --q 0.05 --seed 11 --output " + two.string()).code, 0);
  ASSERT_EQ(run("generate --n 80 --m 3 --p 0.004 --q 0.002 --seed 12 --output " + three.string()).code, 0);
  const fs::path mixed = work("mixed.edges");
  write_file(mixed, slurp(two.string() + ".edges") + slurp(three.string() + ".edges"));

  const auto prime = [&](int m) {
    const CliRun r = run("test --regime dense --l 1 --m " + std::to_string(m) +
                      " --format json --input " + mixed.string());
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out)["statistic_prime"].get<double>();
  };
  const double z2 = prime(2), z3 = prime(3);
  const CliRun r = run("test --regime combined --l 1 --weights 0.7071,0.7071 --format json --input " +
                    mixed.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["statistic"].get<double>(), (z2 + z3) / std::sqrt(2.0), 1e-9);
  EXPECT_EQ(j["layers"], json::array({2, 3}));

  const CliRun bad = run("test --regime combined --l 1 --weights 1,1 --input " + mixed.string());
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("WeightNormViolation"), std::string::npos);
}

TEST(CliTest, StatsErrorsExitOneWithName) {
  const fs::path f = work("disjoint.txt");
  write_file(f, "0 1 2\n3 4 5\n");
  const CliRun r = run("test --regime combined --l 1 --statistic standard --input " + f.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ZeroTriangles"), std::string::npos);

  const CliRun wrong_l = run("test --regime dense --l 2 --input " + f.string());
  EXPECT_EQ(wrong_l.code, 1);
  EXPECT_NE(wrong_l.err.find("OverlapOutOfRange"), std::string::npos);
}

TEST(CliTest, SparseReportAndOutputFile) {
  const fs::path prefix = work("sparse");
  ASSERT_EQ(run("generate --n 400 --m 3 --p 2e-5 --seed 5 --output " + prefix.string()).code, 0);
  const fs::path report_a = work("sparse_report_a.json"), report_b = work("sparse_report_b.json");
  for (const fs::path& rep : {report_a, report_b}) {
    const CliRun r = run("test --regime sparse --kn 3 --input " + prefix.string() + ".edges --output " +
                      rep.string());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("decision: "), std::string::npos);
  }
  EXPECT_EQ(slurp(report_a), slurp(report_b));
  const json j = json::parse(slurp(report_a));
  EXPECT_EQ(j["regime"], "sparse");
  EXPECT_EQ(j["kn"], 3);
  EXPECT_TRUE(j.contains("critical"));
  EXPECT_TRUE(fs::exists(report_a.string() + ".manifest.json"));
}

TEST(CliEstimate, ReportsFields) {
  const fs::path prefix = work("est");
  ASSERT_EQ(run("generate --n 600 --m 3 --p 3e-5 --q 1e-5 --seed 8 --output " + prefix.string()).code, 0);
  const CliRun r = run("estimate --kn 3 --format json --input " + prefix.string() + ".edges");
  ASSERT_TRUE(r.code == 0 || r.code == 1) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["kn"], 3);
  EXPECT_GT(j["lambda_hat"].get<double>(), 0.0);
  if (r.code == 0) {
    EXPECT_TRUE(j["a_hat"].is_number());
  } else {
    EXPECT_EQ(j["failure"], "NegativeRadicand");
  }
}

TEST(CliClassify, Examples) {
  EXPECT_NE(run("classify --m 3 --alpha-exp 2.5").out.find("indistinguishable (contiguous)"),
            std::string::npos);
  EXPECT_NE(run("classify --m 3 --alpha-exp 2 --kappa 1.2").out.find("verdict: distinguishable"),
            std::string::npos);
  const CliRun band = run("classify --m 3 --alpha-exp 2 --kappa 0.2 --k 2 --format json");
  ASSERT_EQ(band.code, 0);
  EXPECT_EQ(json::parse(band.out)["verdict"], "contiguous band");
  const CliRun missing = run("classify --m 3 --alpha-exp 2");
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("MissingKappa"), std::string::npos);
}

TEST(CliSimulate, DeterministicAcrossRunsAndWorkers) {
  const fs::path cfg = work("sim.cfg");
  write_file(cfg, "schema = 1\nn = 40\nm = 2, 3\nb = 0.1, 0.01\ndelta = 0, 2\nreps = 5\n");
  const fs::path a = work("sim_a.csv"), b = work("sim_b.csv"), c = work("sim_c.csv");
  ASSERT_EQ(run("simulate --config " + cfg.string() + " --reps 1 --seed 1 --workers 1 --output " +
                a.string()).code, 0);
  ASSERT_EQ(run("simulate --config " + cfg.string() + " --reps 1 --seed 1 --workers 1 --output " +
                b.string()).code, 0);
  ASSERT_EQ(run("simulate --config " + cfg.string() + " --reps 1 --seed 1 --workers 3 --output " +
                c.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
  const std::string csv = slurp(a);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  const json manifest = json::parse(slurp(a.string() + ".manifest.json"));
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_EQ(manifest["outputs"][0], a.string());
  const std::string first_manifest = slurp(a.string() + ".manifest.json");
  ASSERT_EQ(run("simulate --config " + cfg.string() + " --reps 1 --seed 1 --workers 2 --output " +
                a.string()).code, 0);
  EXPECT_EQ(slurp(a), csv);
  EXPECT_EQ(slurp(a.string() + ".manifest.json"), first_manifest);
}

TEST(CliSimulate, MalformedConfigExitsTwoWithLine) {
  const fs::path cfg = work("bad.cfg");
  write_file(cfg, "schema = 1\nm = 2\nb = 0.1\nbogus = 3\n");
  const CliRun r = run("simulate --config " + cfg.string() + " --seed 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 4"), std::string::npos);
  EXPECT_EQ(run("simulate --config " + work("missing.cfg").string()).code, 1);
}

TEST(CliSimulate, BundledConfigRuns) {
  const fs::path out = work("power_grid.csv");
  const CliRun r = run("simulate --config " + config("paper_fig3.cfg") + " --reps 2 --output " +
                    out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  // 11 delta values, three statistics each, plus the header
  const std::string csv = slurp(out);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 34);
}

TEST(CliIngest, FiltersAndWrites) {
  const fs::path edges = work("ingest.txt"), labels = work("ingest.labels");
  write_file(edges, "1 2\n1 3\n2 3\n1 2 3\n10 11\n10 12\n11 12\n3 10\n");
  write_file(labels, "1 A\n2 A\n3 A\n10 B\n11 B\n12 B\n");
  const fs::path prefix = work("ingest_out"), inc = work("ingest_inc.csv");
  const CliRun r = run("ingest --input " + edges.string() + " --labels " + labels.string() +
                    " --community A --format json --incidence " + inc.string() + " --output " +
                    prefix.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["vertices"], 3);
  EXPECT_EQ(j["hyperedges"], 4);
  hypertest::LabeledDataset back = hypertest::read_hyperedge_file(prefix.string() + ".edges");
  hypertest::read_label_file(back, prefix.string() + ".labels");
  EXPECT_EQ(back.label_set(), (std::vector<std::string>{"A"}));
  const std::string csv = slurp(inc);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2 + 3);

  EXPECT_EQ(run("ingest --input " + edges.string() + " --community A").code, 2);
  const CliRun unknown = run("ingest --input " + edges.string() + " --labels " + labels.string() +
                          " --community Z");
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("UnknownLabel"), std::string::npos);
}
