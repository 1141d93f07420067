#pragma once

// Solver results and their JSON form.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"

namespace dircover {

struct SolveReport {
  std::string solver;
  std::uint64_t seed = 0;
  double objective = 0.0;
  std::vector<Point2> facilities;
  std::vector<std::size_t> site_indices;  // discrete solvers only
  double cover_radius = 0.0;              // shared radius; 0 when per-site
  std::uint64_t evaluations = 0;
  double wall_time = 0.0;  // seconds
  std::vector<double> trace;
  std::vector<double> start_objectives;  // multistart only
  nlohmann::ordered_json config = nlohmann::ordered_json::object();

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits (the report's number precision).
inline double round_significant(double v, int digits = 12) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

inline nlohmann::ordered_json to_json(const SolveReport& r) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return round_significant(v); };
  ordered_json facilities = ordered_json::array();
  for (const auto& p : r.facilities) facilities.push_back({{"x", num(p.x)}, {"y", num(p.y)}});
  ordered_json trace = ordered_json::array();
  for (double v : r.trace) trace.push_back(num(v));
  ordered_json starts = ordered_json::array();
  for (double v : r.start_objectives) starts.push_back(num(v));
  return ordered_json{
      {"solver", r.solver},
      {"seed", r.seed},
      {"objective", num(r.objective)},
      {"cover_radius", num(r.cover_radius)},
      {"facilities", facilities},
      {"site_indices", r.site_indices},
      {"evaluations", r.evaluations},
      {"wall_time", num(r.wall_time)},
      {"trace", trace},
      {"start_objectives", starts},
      {"config", r.config},
  };
}

inline SolveReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    SolveReport r;
    r.solver = j.at("solver").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.objective = j.at("objective").get<double>();
    r.cover_radius = j.at("cover_radius").get<double>();
    for (const auto& f : j.at("facilities")) r.facilities.push_back({f.at("x").get<double>(), f.at("y").get<double>()});
    r.site_indices = j.at("site_indices").get<std::vector<std::size_t>>();
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.trace = j.at("trace").get<std::vector<double>>();
    r.start_objectives = j.at("start_objectives").get<std::vector<double>>();
    r.config = j.value("config", nlohmann::ordered_json::object());
    if (!(r.objective >= 0.0 && r.objective <= 1.0)) throw ReportError("objective outside [0,1]");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

inline std::string report_to_string(const SolveReport& r) { return to_json(r).dump(2) + "\n"; }

inline SolveReport report_from_string(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ReportError(std::string("report is not valid JSON: ") + e.what());
  }
  return report_from_json(j);
}

inline void write_report(const SolveReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << report_to_string(report);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline SolveReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportError("cannot open report '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return report_from_string(ss.str());
  } catch (const ReportError& e) {
    throw ReportError(path + ": " + e.what());
  }
}

}  // namespace dircover
