#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypertest {

/// One m-uniform layer of a simulated nonuniform model: within-community
/// probability r * b, across-community probability b.
struct SimLayer {
  std::size_t m = 2;
  double b = 0.0;
  double r = 1.0;
  std::size_t l = 1;
};

/// One cell of a Monte Carlo grid.
struct SimConfig {
  std::uint32_t cell_id = 0;
  std::size_t n = 100;
  std::vector<SimLayer> layers;
  double varsigma = 0.5;  ///< probability of the smaller of two communities
  std::optional<double> delta_target;  ///< echoed only
  std::size_t reps = 500;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  /// Statistic names: "Z<m>" for a layer, "Z" for the weighted combination.
  /// Empty means every layer plus "Z" when there is more than one layer.
  std::vector<std::string> statistics;
  /// Weights for "Z", one per layer; empty means equal unit-norm weights.
  std::vector<double> weights;

  /// Throws InvalidConfig.
  void validate() const;
  std::vector<std::string> resolved_statistics() const;
};

/// One CSV row: a statistic's summary over the replicates of one cell.
struct SimRow {
  std::uint32_t cell_id = 0;
  std::size_t n = 0;
  std::vector<std::size_t> m_list;
  std::vector<double> b_list;
  std::vector<double> r_list;
  double varsigma = 0.5;
  std::optional<double> delta_target;
  std::string statistic_name;
  double rejection_proportion = 0.0;
  double std_error = 0.0;
  double mean_statistic = 0.0;  ///< over completed replicates; NaN when none
  std::size_t reps_completed = 0;
  std::size_t reps_failed = 0;
  std::uint64_t wall_ms = 0;

  friend bool operator==(const SimRow&, const SimRow&) = default;
};

struct SimResult {
  std::vector<SimRow> rows;
  friend bool operator==(const SimResult&, const SimResult&) = default;
};

struct RunOptions {
  unsigned workers = 1;
  /// Record elapsed wall time per cell. Off by default so that outputs are
  /// byte-identical across runs.
  bool record_timing = false;
};

/// Runs every replicate of one cell. Replicate i draws from
/// RngStream::for_replicate(seed, cell_id, i), so the result does not depend
/// on the number of workers. Replicates whose statistic is undefined count
/// as non-rejections and are tallied in reps_failed.
SimResult run_experiment(const SimConfig& cfg, const RunOptions& opts = {});

/// Cells in order; rows are concatenated.
SimResult run_grid(std::span<const SimConfig> cells, const RunOptions& opts = {});

/// Ratio r >= 1 with delta(a = r b) = target for the balanced two-community
/// model with unit weights, by bisection to |delta - target| < 1e-6.
/// Throws NoBracket when the target needs r > 1e6.
double solve_rate_ratio(double b, double target_delta, std::size_t n, std::size_t m,
                        std::size_t k = 2, std::size_t l = 1);

/// A grid of cells read from a flat key/value config file.
struct SimGrid {
  std::vector<SimConfig> cells;
  std::uint64_t seed = 1;
  bool seed_given = false;
};

/// Parses a `schema = 1` simulation config. Throws InvalidConfig with the
/// offending line number.
SimGrid parse_sim_config(std::istream& in);

inline constexpr std::string_view kSimCsvHeader =
    "cell_id,n,m_list,b_list,r_list,varsigma,delta_target,statistic_name,"
    "rejection_proportion,std_error,mean_statistic,reps_completed,reps_failed,wall_ms";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

void write_csv(const SimResult& result, std::ostream& out);
/// Writes the CSV to `path`. Throws IoError.
void emit_csv(const SimResult& result, const std::string& path);
/// Throws ParseError with a line number.
SimResult parse_csv(std::istream& in);

}  // namespace hypertest
