#pragma once

// Command-line front end. Exit codes: 0 success, 1 computational failure,
// 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dircover/dircover.hpp"

namespace dircover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct BackendOptions {
  std::string backend = "quadrature";
  int order = 10;
  double hex_m = 220.0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;

  void add_to(CLI::App& app) {
    app.add_option("--backend", backend, "Cover estimator")
        ->check(CLI::IsMember({"quadrature", "hexagonal", "montecarlo"}))
        ->capture_default_str();
    app.add_option("--order", order, "Quadrature order")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--hex-m", hex_m, "Hexagonal selection bound M")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--samples", samples, "Monte Carlo samples per demand point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  CoverEvaluator make() const {
    if (backend == "hexagonal") return CoverEvaluator::hexagonal(hex_m);
    if (backend == "montecarlo") return CoverEvaluator::montecarlo(samples, seed);
    return CoverEvaluator::quadrature(order);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j{{"name", backend}};
    if (backend == "quadrature") j["order"] = order;
    else if (backend == "hexagonal") j["hex_m"] = hex_m;
    else {
      j["samples"] = samples;
      j["seed"] = seed;
    }
    return j;
  }
};

inline std::string fmt(double v, int precision = 12) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(precision) << v;
  return s.str();
}

inline std::string fixed(double v, int decimals) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::fixed << std::setprecision(decimals) << v;
  return s.str();
}

/// Writes `text` to `path`, or to `out` when path is empty or "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

inline void apply_radius_override(std::vector<DemandPoint>& demand, std::optional<double> radius) {
  if (!radius) return;
  if (!(*radius > 0.0)) throw std::invalid_argument("--radius must be positive");
  for (auto& d : demand) d.radius = *radius;
}

struct CoverCommand {
  std::string demand_path;
  std::string facilities_path;
  bool example = false;
  std::optional<double> radius;
  double cover_radius = 3.0;
  BackendOptions backend;
  std::string out;

  std::string run() const {
    Instance inst;
    std::vector<Facility> facilities;
    if (example) {
      auto ex = paper_example_instance(radius.value_or(1.0));
      inst.demand_points = {ex.demand};
      facilities = ex.facilities;
    } else {
      if (demand_path.empty()) throw std::invalid_argument("cover: --demand or --example is required");
      if (facilities_path.empty()) throw std::invalid_argument("cover: --facilities is required");
      inst.demand_points = load_demand_csv(demand_path);
      apply_radius_override(inst.demand_points, radius);
      facilities = load_facilities_csv(facilities_path, cover_radius);
    }
    inst.default_cover_radius = cover_radius;
    inst.validate();
    for (const auto& f : facilities) validate(f);

    const auto evaluator = backend.make();
    std::ostringstream csv;
    csv << "id,cover\n";
    for (std::size_t i = 0; i < inst.demand_points.size(); ++i) {
      const auto& d = inst.demand_points[i];
      csv << d.id << ',' << fmt(evaluator.cover(d, facilities, i)) << '\n';
    }
    const double total = total_weighted_cover(inst, facilities, evaluator);
    csv << "total," << fmt(total) << '\n';
    return csv.str();
  }
};

struct DiscreteCommand {
  std::string demand_path;
  std::string sites_path;
  std::size_t p = 0;
  double cover_radius = 3.0;
  std::optional<double> radius;
  BackendOptions backend;
  GaConfig ga;
  bool enumerate = false;
  std::uint64_t budget = 2'000'000;
  bool timing = false;
  std::string out;

  SolveReport run(std::ostream& err) const {
    Instance inst = load_instance(demand_path, sites_path, cover_radius);
    apply_radius_override(inst.demand_points, radius);
    const auto evaluator = backend.make();
    SiteObjective objective(inst, evaluator);
    SolveReport report = enumerate ? enumerate_report(objective, p, budget) : genetic_solve(objective, p, ga);
    report.seed = ga.seed;
    report.config["backend"] = backend.to_json();
    report.config["cover_radius"] = cover_radius;
    report.config["demand"] = demand_path;
    report.config["sites"] = sites_path;
    err << report.solver << ": objective " << fmt(report.objective) << " in " << fixed(report.wall_time, 3) << " s\n";
    if (!timing) report.wall_time = 0.0;
    return report;
  }
};

struct ContinuousCommand {
  std::string demand_path;
  std::optional<std::size_t> p;
  std::size_t starts = 100;
  std::string start_from;
  double cover_radius = 3.0;
  std::optional<double> radius;
  BackendOptions backend;
  NmConfig nm;
  CooperConfig cooper;
  bool no_hull = false;
  std::size_t threads = default_thread_count();
  bool timing = false;
  std::string out;
  std::string plot;

  SolveReport run(std::ostream& out_stream, std::ostream& err) const {
    Instance inst = load_instance(demand_path, std::nullopt, cover_radius);
    apply_radius_override(inst.demand_points, radius);
    MultistartConfig ms;
    ms.starts = starts;
    ms.hull_projection = !no_hull;
    ms.threads = threads;
    ms.seed = backend.seed;
    ms.cooper = cooper;
    std::size_t facilities = p.value_or(0);
    double start_objective = -1.0;
    if (!start_from.empty()) {
      const SolveReport seed_report = read_report(start_from);
      if (p && *p != seed_report.facilities.size())
        throw std::invalid_argument("-p " + std::to_string(*p) + " does not match the " +
                                    std::to_string(seed_report.facilities.size()) + " facilities in " + start_from);
      ms.mode = StartMode::given_sites;
      ms.given = seed_report.facilities;
      facilities = ms.given.size();
      start_objective = seed_report.objective;
    } else if (!p) {
      throw std::invalid_argument("solve-continuous: -p is required without --start-from");
    }
    const auto evaluator = backend.make();
    SolveReport report = multistart_continuous(inst, facilities, ms, nm, evaluator);
    report.config["backend"] = backend.to_json();
    report.config["cover_radius"] = cover_radius;
    report.config["demand"] = demand_path;
    if (!start_from.empty()) {
      report.config["start_from"] = start_from;
      report.config["start_from_objective"] = start_objective;
    }
    err << report.solver << ": objective " << fmt(report.objective) << " in " << fixed(report.wall_time, 3) << " s\n";
    if (!timing) report.wall_time = 0.0;
    if (!plot.empty()) emit(plot, plot_csv(inst, report), out_stream);
    return report;
  }

  /// Circles for external plotting: demand discs then facility discs.
  static std::string plot_csv(const Instance& inst, const SolveReport& report) {
    std::ostringstream s;
    s << "kind,id,x,y,radius\n";
    for (const auto& d : inst.demand_points)
      s << "demand," << d.id << ',' << fmt(d.center.x) << ',' << fmt(d.center.y) << ',' << fmt(d.radius) << '\n';
    for (std::size_t k = 0; k < report.facilities.size(); ++k)
      s << "facility,f" << k << ',' << fmt(report.facilities[k].x) << ',' << fmt(report.facilities[k].y) << ','
        << fmt(report.cover_radius) << '\n';
    return s.str();
  }
};

struct GenInstanceCommand {
  SyntheticSpec spec;
  std::string demand_out;
  std::string sites_out;

  void run() const {
    const Instance inst = gen_synthetic(spec);
    save_instance(inst, demand_out, sites_out.empty() ? std::nullopt : std::optional<std::string>(sites_out));
  }
};

struct BenchCommand {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0;
  int order = 10;
  std::size_t threads = default_thread_count();
  std::string out;

  struct Row {
    double radius;
    MonteCarloEstimate sim;
    double gauss;
    double hex[3];
  };

  /// Demand radii 1.0, 1.1, ..., 2.0 against the six-facility example.
  std::vector<Row> compute() const {
    const auto rule = make_quadrature_rule(order);
    const HexPattern patterns[3] = {make_hex_pattern(52), make_hex_pattern(110), make_hex_pattern(220)};
    std::vector<Row> rows(11);
    parallel_for(rows.size(), threads, [&](std::size_t k) {
      const double radius = (10.0 + static_cast<double>(k)) / 10.0;
      const auto ex = paper_example_instance(radius);
      Row& row = rows[k];
      row.radius = radius;
      row.sim = joint_cover_montecarlo(ex.demand, ex.facilities, samples, mix_seed(seed, k));
      row.gauss = joint_cover_quadrature(ex.demand, ex.facilities, rule);
      for (int h = 0; h < 3; ++h) row.hex[h] = joint_cover_hexagonal(ex.demand, ex.facilities, patterns[h]);
    });
    return rows;
  }

  static std::string to_csv(const std::vector<Row>& rows) {
    std::ostringstream s;
    s << "R,Sim,Gauss,N=199,N=397,N=805\n";
    double dev[4] = {0, 0, 0, 0};
    for (const auto& r : rows) {
      s << fixed(r.radius, 1) << ',' << fixed(r.sim.fraction, 6) << ',' << fixed(r.gauss, 6);
      for (double h : r.hex) s << ',' << fixed(h, 6);
      s << '\n';
      dev[0] += std::abs(r.gauss - r.sim.fraction);
      for (int h = 0; h < 3; ++h) dev[h + 1] += std::abs(r.hex[h] - r.sim.fraction);
    }
    s << "Average,";
    for (double d : dev) s << ',' << fixed(d / static_cast<double>(rows.size()), 6);
    s << '\n';
    return s.str();
  }
};

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Directional gradual cover: evaluation and facility location solvers", "dircover"};
  app.require_subcommand(1);

  CoverCommand cover;
  auto* c = app.add_subcommand("cover", "Per-demand-point joint cover and the weighted total");
  c->add_option("--demand", cover.demand_path, "Demand CSV (id,x,y,weight,radius)");
  c->add_option("--facilities", cover.facilities_path, "Facilities CSV (id,x,y[,cover_radius])");
  c->add_flag("--example", cover.example, "Use the built-in six-facility example instead of files");
  c->add_option("--radius", cover.radius, "Override every demand radius");
  c->add_option("--cover-radius", cover.cover_radius, "Cover radius for facilities without one")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cover.backend.add_to(*c);
  c->add_option("--seed", cover.backend.seed, "Monte Carlo seed")->capture_default_str();
  c->add_option("--out", cover.out, "Output CSV (default stdout)");

  DiscreteCommand disc;
  auto* d = app.add_subcommand("solve-discrete", "Select p of the candidate sites (genetic algorithm)");
  d->add_option("--demand", disc.demand_path, "Demand CSV")->required();
  d->add_option("--sites", disc.sites_path, "Candidate sites CSV (id,x,y[,cover_radius])")->required();
  d->add_option("-p", disc.p, "Number of facilities")->required()->check(CLI::PositiveNumber);
  d->add_option("--cover-radius", disc.cover_radius, "Cover radius D")->check(CLI::PositiveNumber)->capture_default_str();
  d->add_option("--radius", disc.radius, "Override every demand radius");
  disc.backend.add_to(*d);
  d->add_option("--pop", disc.ga.population_size, "Population size")->capture_default_str();
  d->add_option("--generations", disc.ga.generations, "Generations")->capture_default_str();
  d->add_option("--parents", disc.ga.second_parent_candidates, "Candidate second parents P")->capture_default_str();
  d->add_option("--improve-fraction", disc.ga.initial_improve_fraction, "Share of the initial population improved by ascent")
      ->capture_default_str();
  d->add_option("--seed", disc.ga.seed, "Random seed")->capture_default_str();
  d->add_flag("--enumerate", disc.enumerate, "Solve exactly by total enumeration");
  d->add_option("--budget", disc.budget, "Largest number of subsets --enumerate may visit")->capture_default_str();
  d->add_flag("--timing", disc.timing, "Record wall time in the report (makes it run-dependent)");
  d->add_option("--out", disc.out, "Report JSON (default stdout)");

  ContinuousCommand cont;
  auto* s = app.add_subcommand("solve-continuous", "Locate p facilities anywhere in the plane (Nelder-Mead multistart)");
  s->add_option("--demand", cont.demand_path, "Demand CSV")->required();
  s->add_option("-p", cont.p, "Number of facilities")->check(CLI::PositiveNumber);
  s->add_option("--starts", cont.starts, "Number of starting solutions")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--start-from", cont.start_from, "Start from the facilities of a report (e.g. solve-discrete output)");
  s->add_option("--cover-radius", cont.cover_radius, "Cover radius D")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--radius", cont.radius, "Override every demand radius");
  cont.backend.add_to(*s);
  s->add_option("--seed", cont.backend.seed, "Random seed")->capture_default_str();
  s->add_option("--alpha", cont.nm.alpha, "Reflection coefficient")->capture_default_str();
  s->add_option("--beta", cont.nm.beta, "Contraction coefficient")->capture_default_str();
  s->add_option("--gamma", cont.nm.gamma, "Expansion coefficient")->capture_default_str();
  s->add_option("--vertices", cont.nm.vertex_count, "Simplex vertices K")->capture_default_str();
  s->add_option("--epsilon", cont.nm.epsilon, "Simplex stopping tolerance")->capture_default_str();
  s->add_option("--max-iterations", cont.nm.max_iterations, "Simplex iteration cap")->capture_default_str();
  s->add_option("--square-side", cont.nm.init_square_side, "Initial simplex square side (default 2(D-R), >= 0.5)");
  s->add_option("--cycle-epsilon", cont.cooper.epsilon, "Stop cycling when a pass gains less")->capture_default_str();
  s->add_option("--max-passes", cont.cooper.max_passes, "Cycling pass cap")->capture_default_str();
  s->add_flag("--no-hull", cont.no_hull, "Skip projecting facilities into the demand hull");
  s->add_option("--threads", cont.threads, "Worker threads (default $DIRCOVER_THREADS or 1)")->check(CLI::PositiveNumber);
  s->add_flag("--timing", cont.timing, "Record wall time in the report (makes it run-dependent)");
  s->add_option("--out", cont.out, "Report JSON (default stdout)");
  s->add_option("--plot", cont.plot, "Plot data CSV of demand and facility discs");

  GenInstanceCommand gen;
  auto* g = app.add_subcommand("gen-instance", "Write a seeded synthetic instance");
  g->add_option("-n", gen.spec.demand_count, "Demand points")->capture_default_str();
  g->add_option("-m", gen.spec.site_count, "Candidate sites")->capture_default_str();
  g->add_option("--xmin", gen.spec.region.xmin)->capture_default_str();
  g->add_option("--xmax", gen.spec.region.xmax)->capture_default_str();
  g->add_option("--ymin", gen.spec.region.ymin)->capture_default_str();
  g->add_option("--ymax", gen.spec.region.ymax)->capture_default_str();
  g->add_option("--weight-min", gen.spec.weight_min)->capture_default_str();
  g->add_option("--weight-max", gen.spec.weight_max)->capture_default_str();
  g->add_option("--radius", gen.spec.radius, "Demand radius")->capture_default_str();
  g->add_option("--seed", gen.spec.seed)->capture_default_str();
  g->add_option("--demand-out", gen.demand_out, "Demand CSV path")->required();
  g->add_option("--sites-out", gen.sites_out, "Sites CSV path");

  BenchCommand bench;
  auto* b = app.add_subcommand("bench", "Cover estimates of the six-facility example for R = 1.0 .. 2.0");
  b->add_option("--samples", bench.samples, "Monte Carlo samples per radius")->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--order", bench.order, "Quadrature order")->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--threads", bench.threads)->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "Table CSV (default stdout)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dircover: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (c->parsed()) {
      emit(cover.out, cover.run(), out);
    } else if (d->parsed()) {
      emit(disc.out, report_to_string(disc.run(err)), out);
    } else if (s->parsed()) {
      emit(cont.out, report_to_string(cont.run(out, err)), out);
    } else if (g->parsed()) {
      gen.run();
    } else if (b->parsed()) {
      emit(bench.out, BenchCommand::to_csv(bench.compute()), out);
    }
  } catch (const ParseError& e) {
    err << "dircover: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ReportError& e) {
    err << "dircover: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "dircover: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dircover: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dircover::cli
