#include "hypertest/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "hypertest/error.hpp"
#include "hypertest/generators.hpp"
#include "hypertest/motifs.hpp"
#include "hypertest/philox.hpp"
#include "hypertest/stats.hpp"

namespace hypertest {
namespace {

std::string layer_name(std::size_t m) { return "Z" + std::to_string(m); }

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
  throw Error(Errc::InvalidConfig, "line " + std::to_string(line) + ": " + what);
}

struct ReplicateOutcome {
  std::vector<std::optional<double>> values;  // one per requested statistic
};

class CellRunner {
 public:
  explicit CellRunner(const SimConfig& cfg) : cfg_(cfg), names_(cfg.resolved_statistics()) {
    const auto communities = CommunityDistribution::imbalanced(cfg.varsigma);
    for (const SimLayer& layer : cfg.layers) {
      LayerSpec spec;
      spec.n = cfg.n;
      spec.m = layer.m;
      spec.p_within = layer.r * layer.b;
      spec.p_between = layer.b;
      spec.communities = communities;
      specs_.push_back(spec);
    }
    if (cfg.weights.empty()) {
      weights_.assign(cfg.layers.size(), 1.0 / std::sqrt(static_cast<double>(cfg.layers.size())));
    } else {
      weights_ = cfg.weights;
    }
  }

  const std::vector<std::string>& names() const { return names_; }

  ReplicateOutcome run(std::uint32_t rep) const {
    RngStream rng = RngStream::for_replicate(cfg_.seed, cfg_.cell_id, rep);
    const NonuniformSample sample = sample_nonuniform(specs_, true, rng);

    std::vector<std::optional<double>> per_layer;
    per_layer.reserve(cfg_.layers.size());
    for (const SimLayer& layer : cfg_.layers) {
      const Hypergraph& g = sample.graph.layer(layer.m);
      if (g.empty()) {
        per_layer.emplace_back(std::nullopt);  // ZeroDensity
        continue;
      }
      const EmpiricalEVT evt = empirical_evt(g, layer.l);
      per_layer.emplace_back(
          dense_test_from_evt(evt, cfg_.n, layer.m, layer.l, cfg_.alpha).statistic_prime);
    }

    ReplicateOutcome out;
    for (const std::string& name : names_) {
      if (name == "Z") {
        double z = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < per_layer.size(); ++i) {
          if (!per_layer[i]) {
            ok = false;
            break;
          }
          z += weights_[i] * *per_layer[i];
        }
        out.values.push_back(ok ? std::optional<double>(z) : std::nullopt);
        continue;
      }
      for (std::size_t i = 0; i < cfg_.layers.size(); ++i) {
        if (layer_name(cfg_.layers[i].m) == name) out.values.push_back(per_layer[i]);
      }
    }
    return out;
  }

 private:
  const SimConfig& cfg_;
  std::vector<std::string> names_;
  std::vector<LayerSpec> specs_;
  std::vector<double> weights_;
};

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

void SimConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(Errc::InvalidConfig, what); };
  if (reps < 1) bad("reps must be at least 1");
  if (!(varsigma > 0.0 && varsigma <= 0.5)) bad("varsigma must lie in (0, 0.5]");
  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha must lie in (0, 1)");
  if (layers.empty()) bad("at least one layer is required");
  std::set<std::size_t> sizes;
  for (const SimLayer& layer : layers) {
    if (layer.m < 2 || layer.m > n) bad("layer size m=" + std::to_string(layer.m) + " out of range");
    if (!sizes.insert(layer.m).second) bad("duplicate layer size m=" + std::to_string(layer.m));
    if (layer.l == 0 || 2 * layer.l > layer.m) {
      bad("overlap l=" + std::to_string(layer.l) + " inadmissible for m=" + std::to_string(layer.m));
    }
    if (!(layer.b > 0.0 && layer.b <= 1.0)) bad("b must lie in (0, 1]");
    if (!(layer.r >= 1.0)) bad("rate ratio r must be at least 1");
    if (layer.r * layer.b > 1.0) bad("r * b exceeds 1 for m=" + std::to_string(layer.m));
  }
  if (!weights.empty()) {
    if (weights.size() != layers.size()) bad("need one weight per layer");
    double norm = 0.0;
    for (double w : weights) norm += w * w;
    if (!(std::fabs(norm - 1.0) < 1e-12)) {
      throw Error(Errc::WeightNormViolation, "sum of squared weights must be 1");
    }
  }
  for (const std::string& name : resolved_statistics()) {
    if (name == "Z") continue;
    bool found = false;
    for (const SimLayer& layer : layers) found = found || layer_name(layer.m) == name;
    if (!found) bad("unknown statistic " + name);
  }
}

std::vector<std::string> SimConfig::resolved_statistics() const {
  if (!statistics.empty()) return statistics;
  std::vector<std::string> out;
  for (const SimLayer& layer : layers) out.push_back(layer_name(layer.m));
  if (layers.size() > 1) out.emplace_back("Z");
  return out;
}

SimResult run_experiment(const SimConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const CellRunner runner(cfg);
  const double critical = normal_quantile(cfg.alpha);

  std::vector<ReplicateOutcome> outcomes(cfg.reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    while (true) {
      const std::size_t rep = next.fetch_add(1);
      if (rep >= cfg.reps) return;
      try {
        outcomes[rep] = runner.run(static_cast<std::uint32_t>(rep));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.reps);
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, cfg.reps));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const auto elapsed = std::chrono::steady_clock::now() - started;
  SimResult result;
  const auto& names = runner.names();
  for (std::size_t s = 0; s < names.size(); ++s) {
    SimRow row;
    row.cell_id = cfg.cell_id;
    row.n = cfg.n;
    for (const SimLayer& layer : cfg.layers) {
      row.m_list.push_back(layer.m);
      row.b_list.push_back(layer.b);
      row.r_list.push_back(layer.r);
    }
    row.varsigma = cfg.varsigma;
    row.delta_target = cfg.delta_target;
    row.statistic_name = names[s];
    std::size_t rejections = 0;
    double sum = 0.0;
    for (const ReplicateOutcome& o : outcomes) {
      if (!o.values[s]) {
        ++row.reps_failed;
        continue;
      }
      ++row.reps_completed;
      sum += *o.values[s];
      if (std::fabs(*o.values[s]) > critical) ++rejections;
    }
    const double reps = static_cast<double>(cfg.reps);
    row.rejection_proportion = static_cast<double>(rejections) / reps;
    row.std_error = std::sqrt(row.rejection_proportion * (1.0 - row.rejection_proportion) / reps);
    row.mean_statistic = row.reps_completed > 0
                             ? sum / static_cast<double>(row.reps_completed)
                             : std::numeric_limits<double>::quiet_NaN();
    if (opts.record_timing) {
      row.wall_ms = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

SimResult run_grid(std::span<const SimConfig> cells, const RunOptions& opts) {
  SimResult all;
  for (const SimConfig& cell : cells) {
    SimResult r = run_experiment(cell, opts);
    all.rows.insert(all.rows.end(), std::make_move_iterator(r.rows.begin()),
                    std::make_move_iterator(r.rows.end()));
  }
  return all;
}

double solve_rate_ratio(double b, double target_delta, std::size_t n, std::size_t m,
                        std::size_t k, std::size_t l) {
  if (!(target_delta >= 0.0)) throw Error(Errc::InvalidArgument, "target delta must be >= 0");
  if (!(b > 0.0)) throw Error(Errc::InvalidArgument, "b must be positive");
  const double scale = std::pow(static_cast<double>(n), static_cast<double>(m - 1));
  const auto delta_at = [&](double r) {
    DenseRegimeParams p;
    p.a = r * b * scale;
    p.b = b * scale;
    p.m = m;
    p.k = k;
    p.l = l;
    return theoretical_evt(p, n).delta;
  };
  if (target_delta == 0.0) return 1.0;

  constexpr double kMaxRatio = 1e6;
  double lo = 1.0;
  double hi = 2.0;
  while (delta_at(hi) < target_delta) {
    lo = hi;
    if (hi >= kMaxRatio) {
      throw Error(Errc::NoBracket, "delta " + format_double(target_delta) +
                                       " is not reached for r <= 1e6");
    }
    hi = std::min(hi * 2.0, kMaxRatio);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double d = delta_at(mid);
    if (std::fabs(d - target_delta) < 1e-6) return mid;
    (d < target_delta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SimGrid parse_sim_config(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) config_error(lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) config_error(lineno, "empty key");
    if (!entries.emplace(key, std::make_pair(value, lineno)).second) {
      config_error(lineno, "duplicate key '" + key + "'");
    }
  }

  std::set<std::string> used;
  const auto get = [&](const std::string& key) -> const std::pair<std::string, std::size_t>* {
    used.insert(key);
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  const auto doubles = [&](const std::string& key) -> std::optional<std::vector<double>> {
    const auto* e = get(key);
    if (!e) return std::nullopt;
    std::vector<double> out;
    for (const std::string& item : split(e->first, ',')) {
      const auto v = parse_number<double>(item);
      if (!v) config_error(e->second, "'" + key + "': not a number: '" + item + "'");
      out.push_back(*v);
    }
    return out;
  };
  const auto sizes = [&](const std::string& key) -> std::optional<std::vector<std::size_t>> {
    const auto* e = get(key);
    if (!e) return std::nullopt;
    std::vector<std::size_t> out;
    for (const std::string& item : split(e->first, ',')) {
      const auto v = parse_number<std::size_t>(item);
      if (!v) config_error(e->second, "'" + key + "': not a non-negative integer: '" + item + "'");
      out.push_back(*v);
    }
    return out;
  };
  const auto line_of = [&](const std::string& key) {
    const auto it = entries.find(key);
    return it == entries.end() ? std::size_t{0} : it->second.second;
  };

  const auto schema = sizes("schema");
  if (!schema) config_error(0, "missing 'schema = 1'");
  if (schema->size() != 1 || schema->front() != 1) {
    config_error(line_of("schema"), "unsupported schema version");
  }

  SimGrid grid;
  SimConfig base;
  if (const auto n = sizes("n")) {
    if (n->size() != 1) config_error(line_of("n"), "'n' takes one value");
    base.n = n->front();
  }
  const auto ms = sizes("m");
  if (!ms) config_error(0, "missing key 'm'");
  const auto bs = doubles("b");
  if (!bs) config_error(0, "missing key 'b'");
  if (bs->size() != ms->size()) config_error(line_of("b"), "'b' needs one value per layer size");
  std::vector<std::size_t> ls(ms->size(), 1);
  if (const auto l = sizes("l")) {
    if (l->size() != ms->size()) config_error(line_of("l"), "'l' needs one value per layer size");
    ls = *l;
  }
  std::vector<double> varsigmas{0.5};
  if (const auto v = doubles("varsigma")) varsigmas = *v;
  if (const auto reps = sizes("reps")) {
    if (reps->size() != 1) config_error(line_of("reps"), "'reps' takes one value");
    base.reps = reps->front();
  }
  if (const auto alpha = doubles("alpha")) {
    if (alpha->size() != 1) config_error(line_of("alpha"), "'alpha' takes one value");
    base.alpha = alpha->front();
  }
  if (const auto* seed = get("seed")) {
    const auto v = parse_number<std::uint64_t>(seed->first);
    if (!v) config_error(seed->second, "'seed' must be an unsigned 64-bit integer");
    grid.seed = *v;
    grid.seed_given = true;
  }
  if (const auto* stats = get("statistics")) base.statistics = split(stats->first, ',');
  if (const auto w = doubles("weights")) base.weights = *w;

  // rate ratios: solved from 'delta', or listed per layer as 'r<m>'
  const auto deltas = doubles("delta");
  std::map<std::size_t, std::vector<double>> explicit_r;
  for (std::size_t m : *ms) {
    if (const auto r = doubles("r" + std::to_string(m))) explicit_r[m] = *r;
  }
  std::size_t points = deltas ? deltas->size() : 0;
  for (const auto& [m, r] : explicit_r) {
    if (points != 0 && r.size() != points) {
      config_error(line_of("r" + std::to_string(m)), "ratio list length differs from 'delta'");
    }
    points = r.size();
  }
  if (points == 0) points = 1;
  if (!explicit_r.empty() && explicit_r.size() != ms->size()) {
    config_error(line_of("r" + std::to_string(explicit_r.begin()->first)),
                 "ratio lists must be given for every layer or none");
  }

  for (const auto& [key, value] : entries) {
    if (!used.contains(key)) config_error(value.second, "unknown key '" + key + "'");
  }

  std::uint32_t cell = 0;
  for (double varsigma : varsigmas) {
    for (std::size_t i = 0; i < points; ++i) {
      SimConfig c = base;
      c.cell_id = cell++;
      c.varsigma = varsigma;
      c.seed = grid.seed;
      if (deltas) c.delta_target = (*deltas)[i];
      for (std::size_t j = 0; j < ms->size(); ++j) {
        SimLayer layer;
        layer.m = (*ms)[j];
        layer.b = (*bs)[j];
        layer.l = ls[j];
        if (!explicit_r.empty()) {
          layer.r = explicit_r[layer.m][i];
        } else if (deltas) {
          try {
            layer.r = solve_rate_ratio(layer.b, (*deltas)[i], c.n, layer.m, 2, layer.l);
          } catch (const Error& e) {
            config_error(line_of("delta"), e.what());
          }
        }
        c.layers.push_back(layer);
      }
      try {
        c.validate();
      } catch (const Error& e) {
        if (e.code() != Errc::InvalidConfig && e.code() != Errc::WeightNormViolation) throw;
        config_error(0, e.what());
      }
      grid.cells.push_back(std::move(c));
    }
  }
  return grid;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_csv(const SimResult& result, std::ostream& out) {
  out << kSimCsvHeader << '\n';
  for (const SimRow& r : result.rows) {
    out << r.cell_id << ',' << r.n << ',' << join(r.m_list) << ',' << join(r.b_list) << ','
        << join(r.r_list) << ',' << format_double(r.varsigma) << ','
        << (r.delta_target ? format_double(*r.delta_target) : std::string()) << ','
        << r.statistic_name << ',' << format_double(r.rejection_proportion) << ','
        << format_double(r.std_error) << ',' << format_double(r.mean_statistic) << ','
        << r.reps_completed << ',' << r.reps_failed << ',' << r.wall_ms << '\n';
  }
}

void emit_csv(const SimResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  write_csv(result, out);
  out.flush();
  if (!out) throw Error(Errc::IoError, "write to " + path + " failed");
}

SimResult parse_csv(std::istream& in) {
  const auto fail = [](std::size_t line, const std::string& what) -> void {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line) || line != kSimCsvHeader) fail(1, "missing or unexpected header");
  SimResult result;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 14) fail(lineno, "expected 14 fields, got " + std::to_string(f.size()));
    const auto num = [&](const std::string& s) {
      if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
      const auto v = parse_number<double>(s);
      if (!v) fail(lineno, "bad number '" + s + "'");
      return *v;
    };
    const auto count = [&](const std::string& s) {
      const auto v = parse_number<std::uint64_t>(s);
      if (!v) fail(lineno, "bad count '" + s + "'");
      return *v;
    };
    SimRow r;
    r.cell_id = static_cast<std::uint32_t>(count(f[0]));
    r.n = count(f[1]);
    for (const auto& s : split(f[2], ';')) r.m_list.push_back(count(s));
    for (const auto& s : split(f[3], ';')) r.b_list.push_back(num(s));
    for (const auto& s : split(f[4], ';')) r.r_list.push_back(num(s));
    r.varsigma = num(f[5]);
    if (!f[6].empty()) r.delta_target = num(f[6]);
    r.statistic_name = f[7];
    r.rejection_proportion = num(f[8]);
    r.std_error = num(f[9]);
    r.mean_statistic = num(f[10]);
    r.reps_completed = count(f[11]);
    r.reps_failed = count(f[12]);
    r.wall_ms = count(f[13]);
    result.rows.push_back(std::move(r));
  }
  return result;
}

}  // namespace hypertest
