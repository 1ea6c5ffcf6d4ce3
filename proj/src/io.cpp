#include "circsym/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "circsym/error.hpp"

namespace circsym {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    cells.push_back(a == std::string::npos ? std::string() : cell.substr(a, b - a + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> to_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data();
  if (*begin == '+') ++begin;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(begin, cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

/// Numeric rows of a CSV stream; skips blank lines and a header row.
std::vector<std::vector<double>> read_table(std::istream& in, std::size_t& first_row) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t row_no = 0;
  std::size_t width = 0;
  first_row = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_row(line);
    const bool is_first = rows.empty() && first_row == 0;
    std::vector<double> values;
    values.reserve(cells.size());
    bool numeric = true;
    std::size_t bad_column = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = to_number(cells[c]);
      if (!v) {
        numeric = false;
        bad_column = c + 1;
        break;
      }
      values.push_back(*v);
    }
    if (is_first && !numeric) {  // header
      first_row = row_no + 1;
      continue;
    }
    if (!numeric) throw ParseError("non-numeric cell '" + cells[bad_column - 1] + "'", row_no, bad_column);
    if (rows.empty()) {
      width = values.size();
      if (first_row == 0) first_row = row_no;
    } else if (values.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, found " + std::to_string(values.size()),
                       row_no, std::min(width, values.size()) + 1);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("no data rows");
  return rows;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

ComplexSample parse_complex_csv(std::istream& in, CsvLayout layout) {
  std::size_t first_row = 0;
  const auto rows = read_table(in, first_row);
  const std::size_t width = rows.front().size();
  Eigen::MatrixXd w;
  if (layout == CsvLayout::ReIm) {
    if (width % 2 != 0) throw ParseError("ReIm layout needs an even column count, found " + std::to_string(width), first_row, width);
    w.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < width; ++c) w(r, c) = rows[r][c];
    }
  } else {
    if (width != 2) throw ParseError("PolarDeg layout needs 2 columns, found " + std::to_string(width), first_row, width);
    w.resize(static_cast<Eigen::Index>(rows.size()), 2);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double rad = rows[r][1] * std::numbers::pi / 180.0;
      w(r, 0) = rows[r][0] * std::cos(rad);
      w(r, 1) = rows[r][0] * std::sin(rad);
    }
  }
  return ComplexSample(std::move(w));
}

ComplexSample ingest_complex_csv(const std::string& path, CsvLayout layout) {
  auto in = open_input(path);
  return parse_complex_csv(in, layout);
}

ComplexSample parse_wind(std::istream& in, std::optional<double> cutoff) {
  std::size_t first_row = 0;
  const auto rows = read_table(in, first_row);
  if (rows.front().size() != 2) {
    throw ParseError("wind records need 2 columns (speed, direction), found " + std::to_string(rows.front().size()),
                     first_row, 0);
  }
  std::vector<std::complex<double>> z;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double speed = rows[r][0];
    if (speed < 0.0) throw ParseError("negative wind speed", first_row + r, 1);
    if (cutoff && !(speed < *cutoff)) continue;
    const double theta = (90.0 - rows[r][1]) * std::numbers::pi / 180.0;
    z.push_back(std::polar(speed, theta));
  }
  if (z.empty()) throw ParseError("no wind records left after the speed cutoff");
  return ComplexSample::from_scalars(z);
}

ComplexSample ingest_wind(const std::string& path, std::optional<double> cutoff) {
  auto in = open_input(path);
  return parse_wind(in, cutoff);
}

void write_sample_csv(std::ostream& out, const ComplexSample& x) {
  const std::size_t d = x.d();
  for (std::size_t i = 0; i < d; ++i) out << (i ? "," : "") << "re" << i + 1;
  for (std::size_t i = 0; i < d; ++i) out << ",im" << i + 1;
  out << '\n';
  char buf[40];
  const auto& w = x.embedding();
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", w(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

std::string file_digest(const std::string& path) {
  auto in = open_input(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void write_svg_plot(std::ostream& out, const std::vector<PlotSeries>& series,
                    const std::string& x_label, const std::string& y_label) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 20, bottom = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x0 < x1)) x0 -= 1, x1 += 1;
  if (!(y0 < y1)) y0 -= 1, y1 += 1;
  const auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * (width - left - right); };
  const auto py = [&](double v) { return height - bottom - (v - y0) / (y1 - y0) * (height - top - bottom); };

  char buf[64];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    std::snprintf(buf, sizeof buf, "%.3g", xv);
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", yv);
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (top + height - bottom) / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[j]), py(s.y[j]));
      out << buf;
    }
    out << "\"/>\n";
    const double ly = top + 14 + 16 * static_cast<double>(i);
    out << "<line x1=\"" << width - right - 150 << "\" y1=\"" << ly << "\" x2=\"" << width - right - 120 << "\" y2=\""
        << ly << "\" stroke=\"black\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    out << "<text x=\"" << width - right - 114 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace circsym
