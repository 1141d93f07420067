#pragma once

// Instance files.
//
//   demand:      id,x,y,weight,radius
//   sites:       id,x,y[,cover_radius]
//   facilities:  id,x,y[,cover_radius]   (same schema as sites)
//
// Comma separated, header row required, column order free, extra columns
// ignored. Fields are not quoted. Numbers use '.' as the decimal point
// regardless of the process locale.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"
#include "instance.hpp"

namespace dircover {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + (column.empty() ? "" : " column '" + column + "'") +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

class CsvTable {
 public:
  CsvTable(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
      if (trim(line).empty()) continue;
      if (header_.empty()) {
        for (auto f : split_csv_line(line)) header_.emplace_back(f);
        header_line_ = lineno;
        continue;
      }
      rows_.push_back({lineno, {}});
      for (auto f : split_csv_line(line)) rows_.back().fields.emplace_back(f);
      if (rows_.back().fields.size() != header_.size())
        throw ParseError(source_, lineno, "",
                         "expected " + std::to_string(header_.size()) + " fields, found " +
                             std::to_string(rows_.back().fields.size()));
    }
    if (header_.empty()) throw ParseError(source_, 1, "", "missing header row");
  }

  std::optional<std::size_t> column(const std::string& name) const {
    auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header_.begin());
  }

  std::size_t require(const std::string& name) const {
    auto c = column(name);
    if (!c) throw ParseError(source_, header_line_, name, "missing required column");
    return *c;
  }

  struct Row {
    std::size_t line;
    std::vector<std::string> fields;
  };

  const std::vector<Row>& rows() const { return rows_; }
  const std::string& source() const { return source_; }

  double number(const Row& row, std::size_t col, const std::string& name) const {
    const std::string& text = row.fields[col];
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
      throw ParseError(source_, row.line, name, "not a finite number: '" + text + "'");
    return v;
  }

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::size_t header_line_ = 1;
  std::vector<Row> rows_;
};

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline std::vector<DemandPoint> read_demand_csv(std::istream& in, const std::string& source = "<demand>") {
  detail::CsvTable t(in, source);
  const auto cid = t.require("id"), cx = t.require("x"), cy = t.require("y"), cw = t.require("weight"),
             cr = t.require("radius");
  std::vector<DemandPoint> out;
  std::map<std::string, std::size_t> seen;
  for (const auto& row : t.rows()) {
    DemandPoint d;
    d.id = row.fields[cid];
    if (d.id.empty()) throw ParseError(source, row.line, "id", "empty id");
    d.center = {t.number(row, cx, "x"), t.number(row, cy, "y")};
    d.weight = t.number(row, cw, "weight");
    d.radius = t.number(row, cr, "radius");
    if (!(d.radius > 0.0)) throw ParseError(source, row.line, "radius", "radius must be positive");
    if (d.weight < 0.0) throw ParseError(source, row.line, "weight", "weight must be nonnegative");
    if (auto [it, fresh] = seen.emplace(d.id, row.line); !fresh)
      throw ParseError(source, row.line, "id", "duplicate id '" + d.id + "' (first on line " + std::to_string(it->second) + ")");
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<CandidateSite> read_sites_csv(std::istream& in, const std::string& source = "<sites>") {
  detail::CsvTable t(in, source);
  const auto cid = t.require("id"), cx = t.require("x"), cy = t.require("y");
  const auto cradius = t.column("cover_radius");
  std::vector<CandidateSite> out;
  std::map<std::string, std::size_t> seen;
  for (const auto& row : t.rows()) {
    CandidateSite s;
    s.id = row.fields[cid];
    if (s.id.empty()) throw ParseError(source, row.line, "id", "empty id");
    s.location = {t.number(row, cx, "x"), t.number(row, cy, "y")};
    if (cradius && !row.fields[*cradius].empty()) {
      const double r = t.number(row, *cradius, "cover_radius");
      if (!(r > 0.0)) throw ParseError(source, row.line, "cover_radius", "cover radius must be positive");
      s.cover_radius = r;
    }
    if (auto [it, fresh] = seen.emplace(s.id, row.line); !fresh)
      throw ParseError(source, row.line, "id", "duplicate id '" + s.id + "' (first on line " + std::to_string(it->second) + ")");
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_demand_csv(std::ostream& out, std::span<const DemandPoint> demand) {
  out << "id,x,y,weight,radius\n";
  for (const auto& d : demand)
    out << d.id << ',' << detail::format_number(d.center.x) << ',' << detail::format_number(d.center.y) << ','
        << detail::format_number(d.weight) << ',' << detail::format_number(d.radius) << '\n';
}

inline void write_sites_csv(std::ostream& out, std::span<const CandidateSite> sites) {
  const bool any_radius = std::any_of(sites.begin(), sites.end(), [](const auto& s) { return s.cover_radius.has_value(); });
  out << (any_radius ? "id,x,y,cover_radius\n" : "id,x,y\n");
  for (const auto& s : sites) {
    out << s.id << ',' << detail::format_number(s.location.x) << ',' << detail::format_number(s.location.y);
    if (any_radius) out << ',' << (s.cover_radius ? detail::format_number(*s.cover_radius) : std::string());
    out << '\n';
  }
}

namespace detail {

template <class Fn>
auto with_input_file(const std::string& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "", "cannot open file");
  return fn(in);
}

template <class Fn>
void with_output_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  fn(out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace detail

inline std::vector<DemandPoint> load_demand_csv(const std::string& path) {
  return detail::with_input_file(path, [&](std::istream& in) { return read_demand_csv(in, path); });
}

inline std::vector<CandidateSite> load_sites_csv(const std::string& path) {
  return detail::with_input_file(path, [&](std::istream& in) { return read_sites_csv(in, path); });
}

/// Facilities file: sites schema, missing radii filled with default_radius.
inline std::vector<Facility> load_facilities_csv(const std::string& path, double default_radius) {
  std::vector<Facility> out;
  for (const auto& s : load_sites_csv(path)) out.push_back({s.location, s.cover_radius.value_or(default_radius)});
  return out;
}

inline Instance load_instance(const std::string& demand_path, const std::optional<std::string>& sites_path = std::nullopt,
                              double cover_radius = 3.0) {
  Instance inst;
  inst.demand_points = load_demand_csv(demand_path);
  if (inst.demand_points.empty()) throw ParseError(demand_path, 0, "", "no demand rows");
  if (sites_path) {
    inst.candidate_sites = load_sites_csv(*sites_path);
    if (inst.candidate_sites.empty()) throw ParseError(*sites_path, 0, "", "no site rows");
  }
  inst.default_cover_radius = cover_radius;
  inst.validate();
  return inst;
}

inline void save_instance(const Instance& inst, const std::string& demand_path,
                          const std::optional<std::string>& sites_path = std::nullopt) {
  detail::with_output_file(demand_path, [&](std::ostream& out) { write_demand_csv(out, inst.demand_points); });
  if (sites_path)
    detail::with_output_file(*sites_path, [&](std::ostream& out) { write_sites_csv(out, inst.candidate_sites); });
}

}  // namespace dircover
