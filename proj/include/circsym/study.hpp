#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "circsym/simulate.hpp"

namespace circsym {

/// A level/power table: rows are sample sizes, columns are the values of one
/// varied parameter (`column_key`, e.g. "u" or "lambda").
///
/// Config text, one `key = value` per line, '#' starts a comment, lists are
/// comma separated:
///
///   distribution = shifted_cn2   # scalar_gaussian shifted_cn2 discrete4
///                                # circle_uniform contaminated highdim_cn
///   u = 0, 0.2, 0.4
///   lambda = 0.01
///   n = 20, 50
///   m = 1000
///   b = 200
///
/// Recognized keys: distribution, u, rho_re, rho_im, czz, d, a_seed, lambda,
/// mu, n, m, b, alpha, seed, columns. At most one of
/// {lambda, mu, u, rho_re, rho_im, czz, d} may hold several values; it becomes
/// the column key (`columns` may name it explicitly, defaulting to lambda).
struct StudySpec {
  std::string distribution = "circle_uniform";
  std::map<std::string, double> parameters;  // fixed scalar parameters
  std::string column_key = "lambda";
  std::vector<double> column_values{1.0};
  std::vector<std::size_t> ns;
  std::size_t m = 1000;
  std::size_t b = kDefaultBootstrapReplicates;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  /// Parameter value for a column, falling back to the fixed value or `fallback`.
  double parameter(const std::string& key, std::size_t column, double fallback) const;
  DistributionSpec distribution_for(std::size_t column) const;
  KernelSpec kernel_for(std::size_t column) const;
};

/// Throws ConfigError naming the offending key.
StudySpec parse_study(std::istream& in);
StudySpec parse_study_string(const std::string& text);
/// Throws ConfigError for unreadable files as well.
StudySpec load_study(const std::string& path);

struct PowerTable {
  StudySpec spec;
  /// cells[row][column]
  std::vector<std::vector<CellResult>> cells;
  /// stream id of each cell under spec.seed
  std::vector<std::vector<std::uint64_t>> cell_streams;
};

/// Evaluates every cell with level_power_cell. Cell (r, c) uses stream
/// (seed, r * columns + c). `progress` is called after each cell.
PowerTable run_table(const StudySpec& spec, unsigned threads = 1,
                     const std::function<void(std::size_t done, std::size_t total)>& progress = {});

/// Wide CSV: header `n,<key>=<value>,...`, one row per sample size.
void write_table_csv(std::ostream& out, const PowerTable& table);

}  // namespace circsym
