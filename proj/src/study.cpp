#include "circsym/study.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "circsym/error.hpp"

namespace circsym {

namespace {

const std::vector<std::string> kListKeys{"lambda", "mu", "u", "rho_re", "rho_im", "czz", "d"};
const std::vector<std::string> kScalarKeys{"a_seed", "m", "b", "alpha", "seed"};
const std::vector<std::string> kDistributions{"scalar_gaussian", "shifted_cn2",    "discrete4",
                                              "circle_uniform",  "contaminated",   "highdim_cn"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "not a number: '" + text + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "not a non-negative integer: '" + text + "'");
  return value;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

bool contains(const std::vector<std::string>& keys, const std::string& key) {
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

double StudySpec::parameter(const std::string& key, std::size_t column, double fallback) const {
  if (key == column_key) return column_values.at(column);
  const auto it = parameters.find(key);
  return it == parameters.end() ? fallback : it->second;
}

DistributionSpec StudySpec::distribution_for(std::size_t column) const {
  DistributionSpec spec;
  if (distribution == "scalar_gaussian") {
    spec = ScalarGaussianRho{{parameter("rho_re", column, 0.0), parameter("rho_im", column, 0.0)},
                             parameter("czz", column, 1.0)};
  } else if (distribution == "shifted_cn2") {
    spec = ShiftedCN2{parameter("u", column, 0.0)};
  } else if (distribution == "discrete4") {
    spec = Discrete4{};
  } else if (distribution == "circle_uniform") {
    spec = CircleUniform{};
  } else if (distribution == "contaminated") {
    spec = Contaminated{};
  } else if (distribution == "highdim_cn") {
    const double d = parameter("d", column, 2.0);
    if (d < 1.0 || d != std::floor(d)) throw ConfigError("d", "must be a positive integer");
    spec = HighDimCN{static_cast<std::size_t>(d),
                     static_cast<std::uint64_t>(parameter("a_seed", column, 0.0))};
  } else {
    throw ConfigError("distribution", "unknown distribution '" + distribution + "'");
  }
  return spec;
}

KernelSpec StudySpec::kernel_for(std::size_t column) const {
  const double lambda = parameter("lambda", column, 1.0);
  const double mu = parameter("mu", column, 2.0);
  try {
    return KernelSpec::stable(lambda, mu);
  } catch (const DomainError& e) {
    throw ConfigError(column_key == "mu" ? "mu" : "lambda", e.what());
  }
}

StudySpec parse_study(std::istream& in) {
  StudySpec spec;
  std::map<std::string, std::vector<std::string>> lists;
  std::string explicit_columns;
  bool have_n = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "distribution") {
      if (!contains(kDistributions, value)) throw ConfigError(key, "unknown distribution '" + value + "'");
      spec.distribution = value;
    } else if (key == "columns") {
      if (!contains(kListKeys, value)) throw ConfigError(key, "cannot vary '" + value + "'");
      explicit_columns = value;
    } else if (key == "n") {
      have_n = true;
      for (const auto& item : split_list(value)) {
        const auto n = parse_unsigned(key, item);
        if (n == 0) throw ConfigError(key, "sample sizes must be positive");
        spec.ns.push_back(static_cast<std::size_t>(n));
      }
    } else if (contains(kListKeys, key)) {
      auto& items = lists[key];
      items = split_list(value);
      for (const auto& item : items) parse_number(key, item);
    } else if (key == "m" || key == "b") {
      const auto v = parse_unsigned(key, value);
      if (v == 0) throw ConfigError(key, "must be positive");
      (key == "m" ? spec.m : spec.b) = static_cast<std::size_t>(v);
    } else if (key == "seed") {
      spec.seed = parse_unsigned(key, value);
    } else if (key == "a_seed") {
      spec.parameters[key] = static_cast<double>(parse_unsigned(key, value));
    } else if (key == "alpha") {
      spec.alpha = parse_number(key, value);
      if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw ConfigError(key, "must lie in (0, 1)");
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  std::string column_key = explicit_columns;
  for (const auto& [key, items] : lists) {
    if (items.size() > 1) {
      if (!column_key.empty() && column_key != key) {
        throw ConfigError(key, "only one parameter may vary (already varying '" + column_key + "')");
      }
      column_key = key;
    }
  }
  if (column_key.empty()) column_key = "lambda";
  spec.column_key = column_key;
  spec.column_values.clear();
  for (const auto& [key, items] : lists) {
    if (key == column_key) {
      for (const auto& item : items) spec.column_values.push_back(parse_number(key, item));
    } else if (!items.empty()) {
      spec.parameters[key] = parse_number(key, items.front());
    }
  }
  if (!lists.contains(column_key)) {
    if (column_key != "lambda") throw ConfigError(column_key, "empty grid");
    spec.column_values.push_back(1.0);
  }
  if (spec.column_values.empty()) throw ConfigError(column_key, "empty grid");
  if (spec.ns.empty()) throw ConfigError("n", have_n ? "empty grid" : "missing sample sizes: empty grid");

  // Surface invalid parameter values now rather than mid-run.
  for (std::size_t c = 0; c < spec.column_values.size(); ++c) {
    spec.kernel_for(c);
    try {
      validate(spec.distribution_for(c));
    } catch (const DomainError& e) {
      throw ConfigError(spec.column_key, e.what());
    }
  }
  return spec;
}

StudySpec parse_study_string(const std::string& text) {
  std::istringstream in(text);
  return parse_study(in);
}

StudySpec load_study(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open study config '" + path + "'");
  return parse_study(in);
}

PowerTable run_table(const StudySpec& spec, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& progress) {
  PowerTable table;
  table.spec = spec;
  const std::size_t rows = spec.ns.size();
  const std::size_t cols = spec.column_values.size();
  table.cells.assign(rows, std::vector<CellResult>(cols));
  table.cell_streams.assign(rows, std::vector<std::uint64_t>(cols));
  BootstrapConfig cfg;
  cfg.b = spec.b;
  std::size_t done = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    const Sampler sampler(spec.distribution_for(c));
    const KernelSpec kernel = spec.kernel_for(c);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::uint64_t id = r * cols + c;
      table.cell_streams[r][c] = id;
      table.cells[r][c] =
          level_power_cell(sampler, spec.ns[r], kernel, spec.m, cfg, spec.alpha, RngStream(spec.seed, id), threads);
      if (progress) progress(++done, rows * cols);
    }
  }
  return table;
}

void write_table_csv(std::ostream& out, const PowerTable& table) {
  const StudySpec& spec = table.spec;
  out << "n";
  for (double v : spec.column_values) out << ',' << spec.column_key << '=' << v;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < spec.ns.size(); ++r) {
    out << spec.ns[r];
    for (const auto& cell : table.cells[r]) {
      std::snprintf(buf, sizeof buf, "%.4f", cell.rate);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace circsym
