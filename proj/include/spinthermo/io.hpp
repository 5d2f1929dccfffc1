// File formats emitted by the command-line tool:
//   CSV  - '#' metadata comment lines, one header line, numbers as %.17g
//   JSON - a single object {metadata, spec, values | report}
//   SVG  - standalone 800x600 line plot for one-dimensional curves
#pragma once

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spinthermo/analysis.hpp"
#include "spinthermo/bures_model.hpp"

namespace spinthermo::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "spinthermo";
inline constexpr const char* kToolVersion = "1.0.0";

/// Shortest printf form that round-trips a double.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Human-facing 15 significant digits.
inline std::string format_display(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

struct RunMetadata {
  std::string command;
  std::vector<std::pair<std::string, json>> parameters;
  double max_quadrature_error = 0.0;
  std::vector<std::size_t> failures;
  std::optional<double> duration_seconds;  // only when timing was requested

  json to_json() const {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    json p = json::object();
    for (const auto& [k, v] : parameters) p[k] = v;
    j["parameters"] = p;
    j["max_quadrature_error"] = max_quadrature_error;
    j["failures"] = failures;
    if (duration_seconds) j["duration_seconds"] = *duration_seconds;
    return j;
  }

  std::vector<std::string> comment_lines() const {
    std::vector<std::string> out;
    out.push_back(std::string("tool: ") + kToolName + " " + kToolVersion);
    out.push_back("command: " + command);
    for (const auto& [k, v] : parameters) out.push_back(k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()));
    out.push_back("max_quadrature_error: " + format_real(max_quadrature_error));
    std::string f = "failures: " + std::to_string(failures.size());
    for (std::size_t i : failures) f += " " + std::to_string(i);
    out.push_back(f);
    if (duration_seconds) out.push_back("duration_seconds: " + format_real(*duration_seconds));
    return out;
  }
};

/// Generic numeric CSV document; parsing and re-writing is byte-exact for
/// files produced by write_csv.
struct CsvDocument {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& os, const CsvDocument& doc) {
  for (const auto& c : doc.comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < doc.header.size(); ++i) os << (i ? "," : "") << doc.header[i];
  os << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
    os << '\n';
  }
}

inline CsvDocument read_csv(std::istream& is) {
  CsvDocument doc;
  std::string line;
  bool have_header = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(is, line)) {
    if (line.rfind("# ", 0) == 0) {
      doc.comments.push_back(line.substr(2));
      continue;
    }
    if (!have_header) {
      doc.header = split(line);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line)) {
      std::size_t used = 0;
      row.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::runtime_error("read_csv: malformed number '" + cell + "'");
    }
    if (row.size() != doc.header.size()) throw std::runtime_error("read_csv: row width does not match header");
    doc.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("read_csv: missing header line");
  return doc;
}

inline json grid_spec_json(const GridSpec& s) {
  json j;
  j["min1"] = s.min1;
  j["max1"] = s.max1;
  j["steps1"] = s.steps1;
  j["min2"] = s.min2;
  j["max2"] = s.max2;
  j["steps2"] = s.steps2;
  return j;
}

inline CsvDocument surface_csv(const SurfaceGrid& g, const RunMetadata& meta) {
  CsvDocument doc;
  doc.comments = meta.comment_lines();
  doc.header = {"beta1", "beta2", "value"};
  doc.rows.reserve(g.values.size());
  for (int i = 0; i < g.spec.steps1; ++i)
    for (int j = 0; j < g.spec.steps2; ++j) doc.rows.push_back({g.spec.axis1(i), g.spec.axis2(j), g.at(i, j)});
  return doc;
}

inline json surface_json(const SurfaceGrid& g, const RunMetadata& meta) {
  json j;
  j["metadata"] = meta.to_json();
  json spec = grid_spec_json(g.spec);
  spec["model"] = std::string(to_string(g.model));
  spec["quantity"] = std::string(to_string(g.quantity));
  spec["order"] = "row-major, beta1 outer";
  j["spec"] = spec;
  j["values"] = g.values;
  return j;
}

inline CsvDocument curve_csv(const std::vector<CurvePoint>& pts, const RunMetadata& meta) {
  CsvDocument doc;
  doc.comments = meta.comment_lines();
  doc.header = {"beta", "brillouin", "alternative", "difference"};
  for (const auto& p : pts) doc.rows.push_back({p.beta, p.brillouin, p.alternative, p.difference()});
  return doc;
}

inline json extremum_json(const ExtremumReport& r, const RunMetadata& meta) {
  json j;
  j["metadata"] = meta.to_json();
  j["spec"] = {{"objective", "tanh(beta) - I2(beta)/I1(beta)"}, {"scan_min", 0.1}, {"scan_max", 5.0}, {"scan_points", 50}};
  j["report"] = {{"argmax", r.argmax},
                 {"max_value", r.max_value},
                 {"bracket", json::array({r.bracket_lo, r.bracket_hi})},
                 {"iterations", r.iterations}};
  return j;
}

inline json quad_json(const QuadResult& q) {
  return {{"value", q.value}, {"error_estimate", q.error_estimate}, {"evaluations", q.evaluations}, {"converged", q.converged}};
}

/// Three-way comparison of the reduced three-observable partition functions
/// against full Bures-ball quadrature.
struct Eq15Report {
  InverseTemps3 temps;
  QuadResult paper;
  QuadResult direct;
  QuadResult full3d;
  double match_tolerance = 1e-8;  // relative, against full3d

  static double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
  bool paper_matches() const { return rel(paper.value, full3d.value) <= match_tolerance; }
  bool direct_matches() const { return rel(direct.value, full3d.value) <= match_tolerance; }
  std::string verdict() const {
    if (paper_matches() && direct_matches()) return "both";
    if (direct_matches()) return "direct";
    if (paper_matches()) return "paper";
    return "neither";
  }
  bool converged() const { return paper.converged && direct.converged && full3d.converged; }
};

inline Eq15Report eq15_report(const InverseTemps3& temps, const Tolerance& tol) {
  return {temps, bures::partition_3(temps, tol, ReducedForm3::paper),
          bures::partition_3(temps, tol, ReducedForm3::direct),
          bures::partition_3(temps, tol, ReducedForm3::full3d)};
}

inline json eq15_json(const Eq15Report& r, const RunMetadata& meta) {
  auto pair = [](double a, double b) {
    return json{{"absolute", std::abs(a - b)}, {"relative", Eq15Report::rel(a, b)}};
  };
  json j;
  j["metadata"] = meta.to_json();
  j["spec"] = {{"beta1", r.temps.beta1}, {"beta2", r.temps.beta2}, {"beta3", r.temps.beta3},
               {"match_tolerance", r.match_tolerance}};
  j["report"] = {{"paper", quad_json(r.paper)},
                 {"direct", quad_json(r.direct)},
                 {"full3d", quad_json(r.full3d)},
                 {"differences",
                  {{"paper_vs_full3d", pair(r.paper.value, r.full3d.value)},
                   {"direct_vs_full3d", pair(r.direct.value, r.full3d.value)},
                   {"paper_vs_direct", pair(r.paper.value, r.direct.value)}}},
                 {"verdict", r.verdict()}};
  return j;
}

/// Overlay of tanh(beta) and I2/I1(beta) on a fixed 800x600 canvas.
inline std::string curve_svg(const std::vector<CurvePoint>& pts) {
  if (pts.size() < 2) throw std::domain_error("curve_svg: need at least two points");
  constexpr double width = 800, height = 600, left = 80, right = 30, top = 40, bottom = 70;
  const double xmin = pts.front().beta, xmax = pts.back().beta;
  const double ymin = -1.0, ymax = 1.0;
  auto px = [&](double b) { return left + (b - xmin) / (xmax - xmin) * (width - left - right); };
  auto py = [&](double v) { return top + (ymax - v) / (ymax - ymin) * (height - top - bottom); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto polyline = [&](auto value, const char* colour) {
    std::string s = "  <polyline fill=\"none\" stroke=\"";
    s += colour;
    s += "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + num(px(pts[i].beta)) + "," + num(py(value(pts[i])));
    return s + "\"/>\n";
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
     << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  // axes through the origin when it is in range, else along the frame
  const double x0 = (xmin <= 0 && xmax >= 0) ? px(0) : left;
  os << "  <line x1=\"" << num(left) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(width - right) << "\" y2=\""
     << num(py(0)) << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << num(x0) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x0) << "\" y2=\""
     << num(height - bottom) << "\" stroke=\"black\"/>\n";
  for (double v : {-1.0, -0.5, 0.5, 1.0})
    os << "  <text x=\"" << num(left - 10) << "\" y=\"" << num(py(v) + 4) << "\" font-size=\"12\" text-anchor=\"end\">"
       << num(v) << "</text>\n";
  for (double b : {xmin, 0.5 * (xmin + xmax), xmax})
    os << "  <text x=\"" << num(px(b)) << "\" y=\"" << num(height - bottom + 18)
       << "\" font-size=\"12\" text-anchor=\"middle\">" << num(b) << "</text>\n";
  os << polyline([](const CurvePoint& p) { return p.brillouin; }, "#1f77b4");
  os << polyline([](const CurvePoint& p) { return p.alternative; }, "#d62728");
  os << "  <text x=\"" << num(0.5 * (left + width - right)) << "\" y=\"" << num(height - 20)
     << "\" font-size=\"16\" text-anchor=\"middle\">β</text>\n";
  os << "  <text x=\"20\" y=\"" << num(0.5 * (top + height - bottom))
     << "\" font-size=\"16\" text-anchor=\"middle\">−E</text>\n";
  os << "  <text x=\"" << num(left + 20) << "\" y=\"" << num(top + 10)
     << "\" font-size=\"13\" fill=\"#1f77b4\">tanh β</text>\n";
  os << "  <text x=\"" << num(left + 20) << "\" y=\"" << num(top + 28)
     << "\" font-size=\"13\" fill=\"#d62728\">I2(β)/I1(β)</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace spinthermo::io
