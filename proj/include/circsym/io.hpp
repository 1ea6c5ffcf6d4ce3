#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "circsym/sample.hpp"

namespace circsym {

enum class CsvLayout {
  ReIm,      ///< re_1..re_d, im_1..im_d
  PolarDeg,  ///< modulus, angle in degrees
};

/// Reads a comma-separated complex sample. A first row with any non-numeric
/// cell is taken as a header. Throws ParseError with 1-based row/column.
ComplexSample ingest_complex_csv(const std::string& path, CsvLayout layout);
ComplexSample parse_complex_csv(std::istream& in, CsvLayout layout);

/// Wind records (speed mph, direction in degrees from North) as
/// z = speed * exp(i (90 - direction) pi / 180). Rows with speed >= cutoff are
/// dropped. Negative speeds are a ParseError.
ComplexSample ingest_wind(const std::string& path, std::optional<double> cutoff = std::nullopt);
ComplexSample parse_wind(std::istream& in, std::optional<double> cutoff = std::nullopt);

/// ReIm CSV with a re1..,im1.. header, %.17g formatting (round-trips exactly).
void write_sample_csv(std::ostream& out, const ComplexSample& x);

/// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Minimal static SVG line plot. Each series becomes one polyline with a legend entry.
void write_svg_plot(std::ostream& out, const std::vector<PlotSeries>& series,
                    const std::string& x_label, const std::string& y_label);

}  // namespace circsym
