#include "pbk/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <limits>
#include <sstream>

#include "pbk/types.hpp"

namespace pbk {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw DomainError("Table: row width does not match header");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("Table: no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_csv(std::ostream& out, const Table& table, const std::string& producer,
               bool timestamp) {
  if (timestamp) out << "# generated " << utc_timestamp() << " by " << producer << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (header) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      header = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    t.add_row(std::move(row));
  }
  return t;
}

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 460;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    switch (c) {
      case '&': r += "&amp;"; break;
      case '<': r += "&lt;"; break;
      case '>': r += "&gt;"; break;
      case '"': r += "&quot;"; break;
      default: r += c;
    }
  }
  return r;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double v, bool logarithmic) {
  char buf[32];
  if (logarithmic)
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(v)));
  else
    std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo < hi)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

// Ticks at integer exponents on log axes, else five even steps.
std::vector<double> ticks(const Range& r, bool logarithmic) {
  std::vector<double> t;
  if (logarithmic && r.hi - r.lo >= 1.0) {
    const double step = std::max(1.0, std::ceil((r.hi - r.lo) / 8.0));
    for (double v = std::ceil(r.lo); v <= r.hi + 1e-12; v += step) t.push_back(v);
    return t;
  }
  for (int i = 0; i <= 4; ++i) t.push_back(r.lo + (r.hi - r.lo) * i / 4.0);
  return t;
}

void header(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(title) << "</text>\n";
}

}  // namespace

std::string render_svg(const LinePlot& plot) {
  const auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
  const auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0) && (!plot.log_y || y > 0);
  };

  Range rx;
  Range ry;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (usable(s.x[i], s.y[i])) {
        rx.include(tx(s.x[i]));
        ry.include(ty(s.y[i]));
      }
  if (!std::isfinite(rx.lo)) {
    rx = {0.0, 1.0};
    ry = {0.0, 1.0};
  }
  rx.pad();
  ry.pad();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double v) { return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
  const auto py = [&](double v) { return kTop + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::ostringstream s;
  header(s, plot.title);
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : ticks(rx, plot.log_x)) {
    s << "<line x1=\"" << num(px(v)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px(v))
      << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(px(v)) << "\" y=\"" << kTop + ph + 20
      << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(v, plot.log_x) << "</text>\n";
  }
  for (double v : ticks(ry, plot.log_y)) {
    s << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py(v)) << "\" x2=\"" << kLeft
      << "\" y2=\"" << num(py(v)) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py(v) + 4)
      << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(v, plot.log_y) << "</text>\n";
  }
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(plot.x_label) << "</text>\n"
    << "<text transform=\"translate(20," << kTop + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">" << escape(plot.y_label)
    << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& ser = plot.series[k];
    const char* color = kPalette[k % kPalette.size()];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i)
      if (usable(ser.x[i], ser.y[i]))
        s << num(px(tx(ser.x[i]))) << ',' << num(py(ty(ser.y[i]))) << ' ';
    s << "\"/>\n";
    for (std::size_t i = 0; i < ser.x.size(); ++i)
      if (usable(ser.x[i], ser.y[i]))
        s << "<circle cx=\"" << num(px(tx(ser.x[i]))) << "\" cy=\"" << num(py(ty(ser.y[i])))
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(k);
    s << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\""
      << kWidth - kRight + 32 << "\" y2=\"" << ly << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
      << escape(ser.label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

namespace {

// Piecewise-linear map from [0, 1] to a dark-blue .. yellow ramp.
std::string ramp(double v) {
  static constexpr std::array<std::array<double, 3>, 5> stops = {{{13, 8, 135},
                                                                   {126, 3, 168},
                                                                   {204, 71, 120},
                                                                   {248, 149, 64},
                                                                   {240, 249, 33}}};
  v = std::clamp(std::isfinite(v) ? v : 0.0, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(v), stops.size() - 2);
  const double f = v - static_cast<double>(i);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

}  // namespace

std::string render_svg(const HeatmapPlot& plot) {
  if (plot.nx < 1 || plot.ny < 1 || plot.values.size() != std::size_t(plot.nx) * plot.ny)
    throw DomainError("render_svg: heatmap grid does not match its values");
  double top = 0.0;
  for (double v : plot.values)
    if (std::isfinite(v)) top = std::max(top, v);

  const double side = std::min(kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  const double cw = side / plot.nx;
  const double ch = side / plot.ny;
  std::ostringstream s;
  header(s, plot.title);
  for (int j = 0; j < plot.ny; ++j)
    for (int i = 0; i < plot.nx; ++i) {
      const double v = plot.values[std::size_t(j) * plot.nx + i];
      s << "<rect x=\"" << num(kLeft + i * cw) << "\" y=\"" << num(kTop + side - (j + 1) * ch)
        << "\" width=\"" << num(cw + 0.05) << "\" height=\"" << num(ch + 0.05) << "\" fill=\""
        << ramp(top > 0 ? v / top : 0.0) << "\"/>\n";
    }
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << side << "\" height=\""
    << side << "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto label = [&](double x, double y, double v, const char* anchor) {
    s << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
      << "\" font-size=\"11\">" << tick_label(v, false) << "</text>\n";
  };
  label(kLeft, kTop + side + 18, plot.x_min, "start");
  label(kLeft + side, kTop + side + 18, plot.x_max, "end");
  label(kLeft - 6, kTop + side, plot.y_min, "end");
  label(kLeft - 6, kTop + 10, plot.y_max, "end");
  // Color bar, linear from 0 to the grid maximum.
  const double bx = kLeft + side + 30;
  for (int i = 0; i < 50; ++i)
    s << "<rect x=\"" << bx << "\" y=\"" << num(kTop + side - (i + 1) * side / 50)
      << "\" width=\"18\" height=\"" << num(side / 50 + 0.05) << "\" fill=\"" << ramp(i / 49.0)
      << "\"/>\n";
  label(bx + 24, kTop + side, 0.0, "start");
  label(bx + 24, kTop + 10, top, "start");
  s << "</svg>\n";
  return s.str();
}

}  // namespace pbk
