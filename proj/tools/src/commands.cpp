#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "hypertest/combinatorics.hpp"
#include "hypertest/generators.hpp"
#include "hypertest/ingest.hpp"
#include "hypertest/motifs.hpp"
#include "hypertest/simlab.hpp"
#include "hypertest/stats.hpp"
#include "report.hpp"

namespace hypertest::cli {

namespace {

std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  return out;
}

// Seeds come from --seed, then from a config file, then from the system; a
// drawn seed is printed so the run can be repeated.
std::uint64_t resolve_seed(const GlobalOptions& g, std::optional<std::uint64_t> fallback = {}) {
  if (g.seed) return *g.seed;
  if (fallback) return *fallback;
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

// stdout always gets the report; --output also stores it (JSON for text).
void emit_report(const Report& report, const GlobalOptions& g, RunManifest& manifest) {
  const Format format = parse_format(g.format);
  render(report, format, std::cout);
  if (g.output.empty()) return;
  {
    std::ofstream out = open_output(g.output);
    render(report, format == Format::Text ? Format::Json : format, out);
  }
  manifest.seed = g.seed;
  manifest.outputs.push_back(g.output);
  manifest.write(manifest_path(g.output));
}

const Hypergraph& select_layer(const LabeledDataset& ds, const std::optional<std::size_t>& m) {
  const auto& layers = ds.hypergraph.layers();
  if (m) {
    if (!ds.hypergraph.has_layer(*m)) {
      throw Error(Errc::InvalidArgument, "input has no hyperedges of size " + std::to_string(*m));
    }
    return ds.hypergraph.layer(*m);
  }
  if (layers.size() != 1) {
    std::string sizes;
    for (const auto& [size, g] : layers) sizes += (sizes.empty() ? "" : ", ") + std::to_string(size);
    throw UsageError("input has hyperedges of sizes " + sizes + "; choose one with --m");
  }
  return layers.begin()->second;
}

double plug_in_lambda(const Hypergraph& g) {
  const std::size_t n = g.num_vertices(), m = *g.uniform_size();
  return std::pow(static_cast<double>(n), static_cast<double>(m - 1)) *
         static_cast<double>(g.num_edges()) /
         (static_cast<double>(factorial(static_cast<unsigned>(m - 2))) * binomial(n, m));
}

std::string decision(bool reject) { return reject ? "reject" : "fail to reject"; }

std::string overlap_hint(const Hypergraph& g) {
  const std::size_t n = g.num_vertices(), m = *g.uniform_size();
  const double e_hat = static_cast<double>(g.num_edges()) / binomial(n, m);
  const double a_n = e_hat * std::pow(static_cast<double>(n), static_cast<double>(m - 1));
  std::ostringstream s;
  s << "layer m=" << m << ": hyperedge proportion " << format_double(e_hat) << " gives a_n ~ "
    << format_double(a_n);
  if (const auto l = suggest_overlap(e_hat, n, m)) {
    s << ", inside the band n^(l-1) << a_n << n^(l-2/3) for --l " << *l;
  } else {
    s << ", outside every band n^(l-1) << a_n << n^(l-2/3) with 1 <= l <= m/2";
  }
  return s.str();
}

Json dense_record(const DenseTestReport& r) {
  Json j;
  j["regime"] = "dense";
  j["n"] = r.n;
  j["m"] = r.m;
  j["l"] = r.l;
  j["e_hat"] = number(r.empirical.e_hat);
  j["v_hat"] = number(r.empirical.v_hat);
  j["t_hat"] = number(r.empirical.t_hat);
  j["scale"] = number(r.scale);
  j["statistic"] = number(r.statistic);
  j["statistic_prime"] = number(r.statistic_prime);
  j["alpha"] = number(r.alpha);
  j["critical"] = number(r.critical);
  j["reject"] = r.statistic ? Json(r.reject) : Json(nullptr);
  j["reject_prime"] = r.reject_prime;
  j["decision"] = r.statistic ? decision(r.reject) : "undefined (no hypertriangles)";
  j["decision_prime"] = decision(r.reject_prime);
  return j;
}

// Typed decimals such as 0.7071 never have an exactly unit norm; weights
// within 1e-3 of it are rescaled, anything else goes to the library check.
std::vector<double> normalize_typed_weights(std::vector<double> w) {
  double sq = 0.0;
  for (double c : w) sq += c * c;
  if (std::abs(std::sqrt(sq) - 1.0) < 1e-3) {
    const double norm = std::sqrt(sq);
    for (double& c : w) c /= norm;
  }
  return w;
}

void add_input_options(CLI::App* sub, std::string& input, std::size_t& max_edge_size) {
  sub->add_option("--input,-i", input, "hyperedge file")->required()->check(CLI::ExistingFile);
  sub->add_option("--max-edge-size", max_edge_size, "largest hyperedge size accepted")
      ->capture_default_str()
      ->check(CLI::Range(2, 64));
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 2;
  double p = 0.0;
  std::optional<double> q;
  std::optional<double> varsigma;
};

int run_generate(const GenerateArgs& a, const GlobalOptions& g) {
  const double q = a.q.value_or(a.p);
  if (a.m < 2) throw UsageError("--m must be at least 2");
  if (a.n < a.m) throw UsageError("--n must be at least --m");
  if (a.k < 1) throw UsageError("--k must be at least 1");
  if (a.p < 0.0 || a.p > 1.0 || q < 0.0 || q > 1.0) throw UsageError("--p and --q must lie in [0, 1]");
  if (q > a.p) throw UsageError("--q must not exceed --p");
  if (a.varsigma && (a.k != 2 || *a.varsigma <= 0.0 || *a.varsigma > 0.5)) {
    throw UsageError("--varsigma needs --k 2 and a value in (0, 0.5]");
  }

  LayerSpec spec;
  spec.n = a.n;
  spec.m = a.m;
  spec.p_within = a.p;
  spec.p_between = q;
  spec.communities = a.varsigma ? CommunityDistribution::imbalanced(*a.varsigma)
                                : CommunityDistribution::uniform(a.k);
  const std::uint64_t seed = resolve_seed(g);
  RngStream rng(seed, 0);
  LayerSample sample = sample_uniform_hsbm(spec, rng);

  LabeledDataset ds;
  ds.hypergraph = NonuniformHypergraph(a.n);
  const std::size_t edges = sample.graph.num_edges();
  ds.hypergraph.set_layer(a.m, std::move(sample.graph));
  ds.external_ids.resize(a.n);
  std::vector<std::string> labels(a.n);
  for (std::size_t v = 0; v < a.n; ++v) {
    ds.external_ids[v] = v;
    labels[v] = std::to_string(sample.labels[v]);
  }
  ds.labels = std::move(labels);

  const std::string prefix = g.output.empty() ? "hypergraph" : g.output;
  const std::string edge_path = prefix + ".edges", label_path = prefix + ".labels";
  std::ostringstream header;
  header << "hypertest generate n=" << a.n << " m=" << a.m << " k=" << spec.k()
         << " p=" << format_double(a.p) << " q=" << format_double(q);
  if (a.varsigma) header << " varsigma=" << format_double(*a.varsigma);
  header << " seed=" << seed;
  {
    std::ofstream out = open_output(edge_path);
    write_hyperedges(ds, out, header.str());
  }
  {
    std::ofstream out = open_output(label_path);
    write_labels(ds, out);
  }

  RunManifest manifest;
  manifest.subcommand = "generate";
  manifest.seed = seed;
  manifest.config = {{"n", a.n}, {"m", a.m}, {"k", spec.k()}, {"p", a.p}, {"q", q},
                     {"varsigma", number(a.varsigma)}};
  manifest.outputs = {edge_path, label_path};
  manifest.write(manifest_path(prefix));

  Json rec;
  rec["n"] = a.n;
  rec["m"] = a.m;
  rec["k"] = spec.k();
  rec["hyperedges"] = edges;
  rec["seed"] = seed;
  rec["edges_file"] = edge_path;
  rec["labels_file"] = label_path;
  render(Report{{rec}}, parse_format(g.format), std::cout);
  return 0;
}

// ---------------------------------------------------------------------------

struct CountArgs {
  std::string input;
  std::size_t max_edge_size = kDefaultMaxEdgeSize;
  std::optional<std::size_t> m;
  std::size_t l = 1;
  std::vector<std::size_t> cycles;
};

int run_count(const CountArgs& a, const GlobalOptions& g) {
  const LabeledDataset ds = read_hyperedge_file(a.input, a.max_edge_size);
  Report report;
  for (const auto& [m, layer] : ds.hypergraph.layers()) {
    if (a.m && *a.m != m) continue;
    const MotifCounts c = motif_census(layer, a.l, a.cycles);
    const std::size_t n = layer.num_vertices();
    Json rec;
    rec["m"] = m;
    rec["n"] = n;
    rec["l"] = a.l;
    rec["hyperedges"] = c.hyperedges;
    rec["hypervees"] = c.hypervees;
    rec["hypertriangles"] = c.hypertriangles;
    for (const auto& [h, x] : c.loose_cycles) rec["loose_cycles_" + std::to_string(h)] = x;
    rec["e_hat"] = number(static_cast<double>(c.hyperedges) / binomial(n, m));
    rec["v_hat"] = number(static_cast<double>(c.hypervees) / hypervee_placements(n, m, a.l));
    rec["t_hat"] =
        number(static_cast<double>(c.hypertriangles) / hypertriangle_placements(n, m, a.l));
    report.records.push_back(std::move(rec));
  }
  if (report.records.empty()) {
    throw Error(Errc::InvalidArgument, "input has no hyperedges of size " + std::to_string(*a.m));
  }
  RunManifest manifest;
  manifest.subcommand = "count";
  manifest.config = {{"input", a.input}, {"max_edge_size", a.max_edge_size},
                     {"m", a.m ? Json(*a.m) : Json(nullptr)}, {"l", a.l}, {"cycles", a.cycles}};
  if (!g.output.empty()) manifest.add_input(a.input);
  emit_report(report, g, manifest);
  return 0;
}

// ---------------------------------------------------------------------------

struct TestArgs {
  std::string input;
  std::size_t max_edge_size = kDefaultMaxEdgeSize;
  std::string regime;
  std::optional<std::size_t> m;
  std::vector<std::size_t> layers;
  std::vector<std::size_t> l;
  std::optional<std::size_t> kn;
  std::size_t k = 2;
  std::optional<double> a;
  std::optional<double> b;
  double alpha = 0.05;
  std::vector<double> weights;
  std::string statistic = "prime";
};

Json sparse_test(const TestArgs& a, const LabeledDataset& ds) {
  const Hypergraph& g = select_layer(ds, a.m);
  if (a.a.has_value() != a.b.has_value()) throw UsageError("--a and --b go together");
  SparseRegimeParams p;
  p.m = *g.uniform_size();
  p.k = a.k;
  if (a.a) {
    p.a = *a.a;
    p.b = *a.b;
  } else {
    // plug-in null: a = b with the observed average degree
    p.a = p.b = plug_in_lambda(g) * static_cast<double>(factorial(static_cast<unsigned>(p.m - 2)));
  }
  const std::size_t kn = a.kn ? *a.kn : select_kn(g.num_vertices(), lambda_m(p));
  const CycleTestReport r = cycle_test(g, p, kn, a.alpha);
  Json j;
  j["regime"] = "sparse";
  j["n"] = g.num_vertices();
  j["m"] = p.m;
  j["kn"] = r.kn;
  j["cycles"] = r.cycles;
  j["lambda"] = number(r.lambda);
  j["mu0"] = number(r.mu0);
  j["mu1"] = number(r.mu1);
  j["statistic"] = number(r.statistic);
  j["alpha"] = number(r.alpha);
  j["critical"] = number(r.critical);
  j["reject"] = r.reject;
  j["decision"] = decision(r.reject);
  return j;
}

Json dense_single(const TestArgs& a, const LabeledDataset& ds) {
  const Hypergraph& g = select_layer(ds, a.m);
  if (a.l.empty()) {
    throw UsageError("dense regime needs --l (overlap size)\nhint: " + overlap_hint(g));
  }
  if (a.l.size() != 1) throw UsageError("dense regime takes a single --l value");
  return dense_record(dense_test(g, a.l.front(), a.alpha));
}

Json combined(const TestArgs& a, const LabeledDataset& ds) {
  std::vector<std::size_t> sizes = a.layers;
  if (sizes.empty()) {
    for (const auto& [m, g] : ds.hypergraph.layers()) sizes.push_back(m);
  }
  std::vector<const Hypergraph*> graphs;
  for (std::size_t m : sizes) graphs.push_back(&select_layer(ds, m));
  if (a.l.empty()) {
    std::string hints;
    for (const Hypergraph* g : graphs) hints += "\nhint: " + overlap_hint(*g);
    throw UsageError("combined regime needs --l (one value, or one per layer)" + hints);
  }
  if (a.l.size() != 1 && a.l.size() != sizes.size()) {
    throw UsageError("--l takes one value or one per layer (" + std::to_string(sizes.size()) + ")");
  }
  std::vector<DenseTestReport> per_layer;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    per_layer.push_back(dense_test(*graphs[i], a.l.size() == 1 ? a.l[0] : a.l[i], a.alpha));
  }
  const DenseStatistic which =
      a.statistic == "standard" ? DenseStatistic::Standard : DenseStatistic::Prime;
  CombinedTestReport r;
  if (a.weights.empty()) {
    r = combined_test(per_layer, std::nullopt, which);
  } else {
    const std::vector<double> w = normalize_typed_weights(a.weights);
    r = combined_test(per_layer, std::span<const double>(w), which);
  }
  Json j;
  j["regime"] = "combined";
  j["n"] = ds.num_vertices();
  j["layers"] = r.layers;
  j["l"] = a.l;
  j["statistic_kind"] = a.statistic;
  Json stats = Json::array();
  for (double s : r.statistics) stats.push_back(number(s));
  j["statistics"] = stats;
  j["weights"] = r.weights;
  j["statistic"] = number(r.statistic);
  j["delta"] = number(r.delta);
  j["alpha"] = number(r.alpha);
  j["critical"] = number(r.critical);
  j["reject"] = r.reject;
  j["decision"] = decision(r.reject);
  return j;
}

int run_test(const TestArgs& a, const GlobalOptions& g) {
  if (a.regime != "sparse" && (a.kn || a.a || a.b)) {
    throw UsageError("--kn, --a and --b apply to the sparse regime only");
  }
  if (a.regime != "combined" && (!a.weights.empty() || !a.layers.empty())) {
    throw UsageError("--weights and --layers apply to the combined regime only");
  }
  if (a.regime == "sparse" && !a.l.empty()) throw UsageError("--l does not apply to the sparse regime");
  const LabeledDataset ds = read_hyperedge_file(a.input, a.max_edge_size);
  Json rec;
  if (a.regime == "sparse") {
    rec = sparse_test(a, ds);
  } else if (a.regime == "dense") {
    rec = dense_single(a, ds);
  } else {
    rec = combined(a, ds);
  }
  RunManifest manifest;
  manifest.subcommand = "test";
  manifest.config = {{"input", a.input},
                     {"max_edge_size", a.max_edge_size},
                     {"regime", a.regime},
                     {"m", a.m ? Json(*a.m) : Json(nullptr)},
                     {"layers", a.layers},
                     {"l", a.l},
                     {"kn", a.kn ? Json(*a.kn) : Json(nullptr)},
                     {"k", a.k},
                     {"a", number(a.a)},
                     {"b", number(a.b)},
                     {"alpha", a.alpha},
                     {"weights", a.weights},
                     {"statistic", a.statistic}};
  if (!g.output.empty()) manifest.add_input(a.input);
  emit_report(Report{{rec}}, g, manifest);
  return 0;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string input;
  std::size_t max_edge_size = kDefaultMaxEdgeSize;
  std::optional<std::size_t> m;
  std::size_t k = 2;
  std::optional<std::size_t> kn;
};

int run_estimate(const EstimateArgs& a, const GlobalOptions& g) {
  const LabeledDataset ds = read_hyperedge_file(a.input, a.max_edge_size);
  const Hypergraph& layer = select_layer(ds, a.m);
  const std::size_t n = layer.num_vertices(), m = *layer.uniform_size();
  const std::size_t kn = a.kn ? *a.kn : select_kn(n, plug_in_lambda(layer));
  const std::uint64_t cycles = count_loose_cycles(layer, kn);
  const EstimateReport r = estimate_ab(layer.num_edges(), static_cast<double>(cycles), n, m, a.k, kn);

  Json rec;
  rec["edges"] = r.edges;
  rec["cycles"] = number(r.cycles);
  rec["kn"] = r.kn;
  rec["m"] = r.m;
  rec["k"] = r.k;
  rec["n"] = r.n;
  rec["lambda_hat"] = number(r.lambda_hat);
  rec["f_hat"] = number(r.f_hat);
  rec["a_hat"] = number(r.a_hat);
  rec["b_hat"] = number(r.b_hat);
  rec["failure"] = r.failure ? Json(std::string(error_name(*r.failure))) : Json(nullptr);

  RunManifest manifest;
  manifest.subcommand = "estimate";
  manifest.config = {{"input", a.input}, {"max_edge_size", a.max_edge_size},
                     {"m", m}, {"k", a.k}, {"kn", kn}};
  if (!g.output.empty()) manifest.add_input(a.input);
  emit_report(Report{{rec}}, g, manifest);
  if (r.failure) {
    std::cerr << "error: " << error_name(*r.failure)
              << ": cycle count too small for the edge count; no estimate\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<std::size_t> reps;
  bool timing = false;
};

int run_simulate(const SimulateArgs& a, const GlobalOptions& g) {
  std::ifstream in(a.config);
  if (!in) throw Error(Errc::IoError, "cannot open '" + a.config + "'");
  SimGrid grid = parse_sim_config(in);
  const std::uint64_t seed =
      resolve_seed(g, grid.seed_given ? std::optional<std::uint64_t>(grid.seed) : std::nullopt);
  if (a.reps && *a.reps == 0) throw UsageError("--reps must be positive");
  for (SimConfig& c : grid.cells) {
    c.seed = seed;
    if (a.reps) c.reps = *a.reps;
  }
  const SimResult result = run_grid(grid.cells, RunOptions{g.workers, a.timing});
  if (g.output.empty()) {
    write_csv(result, std::cout);
    return 0;
  }
  emit_csv(result, g.output);
  RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.seed = seed;
  manifest.config = {{"config", a.config},
                     {"cells", grid.cells.size()},
                     {"reps", a.reps ? Json(*a.reps) : Json(nullptr)},
                     {"timing", a.timing}};
  manifest.add_input(a.config);
  manifest.outputs = {g.output};
  manifest.write(manifest_path(g.output));
  return 0;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::size_t m = 0;
  std::size_t k = 2;
  double alpha_exp = 0.0;
  std::optional<double> kappa;
  std::vector<std::size_t> l;
};

std::string kind_name(RegimeKind k) {
  switch (k) {
    case RegimeKind::Indistinguishable: return "indistinguishable";
    case RegimeKind::BoundedDegree: return "bounded_degree";
    case RegimeKind::DenseTestable: return "dense_testable";
    case RegimeKind::UnknownBand: return "unknown_band";
  }
  return "unknown_band";
}

int run_classify(const ClassifyArgs& a, const GlobalOptions& g) {
  const RegimeVerdict v = regime_classify(a.m, a.k, a.alpha_exp, a.kappa, a.l);
  Json rec;
  rec["verdict"] = describe(v);
  rec["kind"] = kind_name(v.kind);
  rec["m"] = a.m;
  rec["k"] = a.k;
  rec["alpha_exp"] = number(a.alpha_exp);
  rec["kappa"] = number(a.kappa);
  rec["l"] = v.l ? Json(*v.l) : Json(nullptr);
  rec["kappa_threshold"] = v.constants ? number(v.constants->kappa_threshold) : Json(nullptr);
  RunManifest manifest;
  manifest.subcommand = "classify";
  manifest.config = {{"m", a.m}, {"k", a.k}, {"alpha_exp", a.alpha_exp},
                     {"kappa", number(a.kappa)}, {"l", a.l}};
  emit_report(Report{{rec}}, g, manifest);
  return 0;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string input;
  std::size_t max_edge_size = kDefaultMaxEdgeSize;
  std::string labels;
  std::optional<std::string> community;
  std::size_t min_degree = 0;
  std::size_t max_degree = std::numeric_limits<std::size_t>::max();
  bool iterate = false;
  std::string incidence;
};

int run_ingest(const IngestArgs& a, const GlobalOptions& g) {
  if (a.community && a.labels.empty()) throw UsageError("--community needs --labels");
  if (a.min_degree > a.max_degree) throw UsageError("--min-degree exceeds --max-degree");
  LabeledDataset ds = read_hyperedge_file(a.input, a.max_edge_size);
  if (!a.labels.empty()) read_label_file(ds, a.labels);
  if (a.community) ds = induce_subnetwork(ds, *a.community);
  ds = degree_filter(ds, a.min_degree, a.max_degree, a.iterate);

  RunManifest manifest;
  manifest.subcommand = "ingest";
  manifest.config = {{"input", a.input},
                     {"max_edge_size", a.max_edge_size},
                     {"labels", a.labels},
                     {"community", a.community ? Json(*a.community) : Json(nullptr)},
                     {"min_degree", a.min_degree},
                     {"max_degree", a.max_degree},
                     {"iterate", a.iterate}};
  manifest.add_input(a.input);
  if (!a.labels.empty()) manifest.add_input(a.labels);

  if (!g.output.empty()) {
    const std::string edge_path = g.output + ".edges";
    std::ofstream out = open_output(edge_path);
    write_hyperedges(ds, out, "hypertest ingest of " + a.input);
    manifest.outputs.push_back(edge_path);
    if (ds.labels) {
      const std::string label_path = g.output + ".labels";
      std::ofstream lout = open_output(label_path);
      write_labels(ds, lout);
      manifest.outputs.push_back(label_path);
    }
  }
  if (!a.incidence.empty()) {
    std::ofstream out = open_output(a.incidence);
    out << "edge,size,vertex\n";
    std::size_t edge = 0;
    for (const auto& [m, layer] : ds.hypergraph.layers()) {
      for (EdgeId e = 0; e < layer.num_edges(); ++e, ++edge) {
        for (Vertex v : layer.edge(e)) out << edge << ',' << m << ',' << ds.external_ids[v] << '\n';
      }
    }
    manifest.outputs.push_back(a.incidence);
  }
  if (!manifest.outputs.empty()) {
    manifest.seed = g.seed;
    manifest.write(manifest_path(g.output.empty() ? a.incidence : g.output));
  }

  Json rec;
  rec["vertices"] = ds.num_vertices();
  rec["hyperedges"] = ds.hypergraph.total_edges();
  for (const auto& [m, layer] : ds.hypergraph.layers()) {
    rec["edges_m" + std::to_string(m)] = layer.num_edges();
  }
  rec["labels"] = ds.label_set();
  render(Report{{rec}}, parse_format(g.format), std::cout);
  return 0;
}

}  // namespace

void add_subcommands(CLI::App& app, GlobalOptions& global, std::function<int()>& action) {
  auto bind = [&](CLI::App* sub, auto args, auto run) {
    sub->fallthrough();
    sub->footer("Global flags --seed, --workers, --output and --format are listed by 'hypertest --help'.");
    sub->callback([&action, &global, args, run] { action = [&global, args, run] { return run(*args, global); }; });
  };

  {
    auto a = std::make_shared<GenerateArgs>();
    CLI::App* sub = app.add_subcommand(
        "generate", "sample an m-uniform block model; writes <output>.edges and <output>.labels");
    sub->add_option("--n", a->n, "number of vertices")->required();
    sub->add_option("--m", a->m, "hyperedge size")->required();
    sub->add_option("--k", a->k, "number of communities")->capture_default_str();
    sub->add_option("--p", a->p, "within-community hyperedge probability")->required();
    sub->add_option("--q", a->q, "across-community probability (default: --p)");
    sub->add_option("--varsigma", a->varsigma,
                    "two communities with the smaller one drawn at this probability");
    bind(sub, a, run_generate);
  }
  {
    auto a = std::make_shared<CountArgs>();
    CLI::App* sub = app.add_subcommand("count", "motif census and empirical densities per layer");
    add_input_options(sub, a->input, a->max_edge_size);
    sub->add_option("--m", a->m, "only this layer");
    sub->add_option("--l", a->l, "overlap for hypervees and hypertriangles")->capture_default_str();
    sub->add_option("--cycles", a->cycles, "loose cycle lengths to count")->delimiter(',');
    bind(sub, a, run_count);
  }
  {
    auto a = std::make_shared<TestArgs>();
    CLI::App* sub = app.add_subcommand("test", "test for community structure");
    add_input_options(sub, a->input, a->max_edge_size);
    sub->add_option("--regime", a->regime, "sparse, dense or combined")
        ->required()
        ->check(CLI::IsMember({"sparse", "dense", "combined"}));
    sub->add_option("--m", a->m, "layer tested (sparse, dense)");
    sub->add_option("--layers", a->layers, "layers combined (default: all)")->delimiter(',');
    sub->add_option("--l", a->l, "overlap; one value or one per layer")->delimiter(',');
    sub->add_option("--kn", a->kn, "loose cycle length (default: chosen from n and the degree)");
    sub->add_option("--k", a->k, "communities under the alternative (sparse)")->capture_default_str();
    sub->add_option("--a", a->a, "known within-community rate a (sparse)");
    sub->add_option("--b", a->b, "known across-community rate b (sparse)");
    sub->add_option("--alpha", a->alpha, "significance level")->capture_default_str();
    sub->add_option("--weights", a->weights, "combination weights, unit norm")->delimiter(',');
    sub->add_option("--statistic", a->statistic, "dense statistic combined: prime or standard")
        ->capture_default_str()
        ->check(CLI::IsMember({"prime", "standard"}));
    bind(sub, a, run_test);
  }
  {
    auto a = std::make_shared<EstimateArgs>();
    CLI::App* sub = app.add_subcommand("estimate", "moment estimates of a and b from cycle counts");
    add_input_options(sub, a->input, a->max_edge_size);
    sub->add_option("--m", a->m, "layer used");
    sub->add_option("--k", a->k, "number of communities")->capture_default_str();
    sub->add_option("--kn", a->kn, "loose cycle length (default: chosen from n and the degree)");
    bind(sub, a, run_estimate);
  }
  {
    auto a = std::make_shared<SimulateArgs>();
    CLI::App* sub = app.add_subcommand(
        "simulate", "Monte Carlo rejection proportions; CSV to --output or stdout");
    sub->add_option("--config,-c", a->config, "schema = 1 simulation config")->required();
    sub->add_option("--reps", a->reps, "replicates per cell (overrides the config)");
    sub->add_flag("--timing", a->timing, "record wall_ms per cell (output no longer reproducible)");
    bind(sub, a, run_simulate);
  }
  {
    auto a = std::make_shared<ClassifyArgs>();
    CLI::App* sub = app.add_subcommand("classify", "regime of p ~ n^-alpha_exp");
    sub->add_option("--m", a->m, "hyperedge size")->required();
    sub->add_option("--k", a->k, "number of communities")->capture_default_str();
    sub->add_option("--alpha-exp", a->alpha_exp, "exponent of the hyperedge probability")->required();
    sub->add_option("--kappa", a->kappa, "signal-to-noise ratio (needed at alpha_exp = m-1)");
    sub->add_option("--l", a->l, "candidate overlaps (default: all)")->delimiter(',');
    bind(sub, a, run_classify);
  }
  {
    auto a = std::make_shared<IngestArgs>();
    CLI::App* sub = app.add_subcommand(
        "ingest", "read, filter and rewrite a dataset; writes <output>.edges and <output>.labels");
    add_input_options(sub, a->input, a->max_edge_size);
    sub->add_option("--labels", a->labels, "label file")->check(CLI::ExistingFile);
    sub->add_option("--community", a->community, "keep only vertices with this label");
    sub->add_option("--min-degree", a->min_degree, "smallest total degree kept");
    sub->add_option("--max-degree", a->max_degree, "largest total degree kept");
    sub->add_flag("--iterate", a->iterate, "repeat the degree filter until nothing changes");
    sub->add_option("--incidence", a->incidence, "also write an edge,size,vertex CSV");
    bind(sub, a, run_ingest);
  }
}

}  // namespace hypertest::cli
