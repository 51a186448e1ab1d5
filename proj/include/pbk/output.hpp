#pragma once

// Flat-file outputs: CSV tables with 17 significant digits and small
// self-contained SVG plots.

#include <ostream>
#include <string>
#include <vector>

namespace pbk {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

/// %.17g; enough digits for every double to read back unchanged.
std::string format_number(double x);

/// UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

/// Optional "# generated <timestamp> by <producer>" line, the header row, then
/// one line per row.
void write_csv(std::ostream& out, const Table& table, const std::string& producer,
               bool timestamp);

/// Parses what write_csv produced; comment lines are skipped.
Table read_csv(std::istream& in);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Values on a regular grid, row-major with rows running along y.
struct HeatmapPlot {
  std::string title;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
};

std::string render_svg(const LinePlot& plot);
std::string render_svg(const HeatmapPlot& plot);

}  // namespace pbk
