#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace dircover;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

fs::path dir() {
  auto d = fs::temp_directory_path() / "dircover_cli_tests";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string last_line(const std::string& text) {
  auto t = text;
  if (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

std::string small_instance(const std::string& tag, std::size_t n = 12, std::size_t m = 8) {
  const std::string d = (dir() / (tag + "_demand.csv")).string();
  const std::string s = (dir() / (tag + "_sites.csv")).string();
  const auto r = run({"gen-instance", "-n", std::to_string(n), "-m", std::to_string(m), "--seed", "3", "--demand-out", d,
                      "--sites-out", s});
  EXPECT_EQ(r.code, 0) << r.err;
  return tag;
}

std::string demand_of(const std::string& tag) { return (dir() / (tag + "_demand.csv")).string(); }
std::string sites_of(const std::string& tag) { return (dir() / (tag + "_sites.csv")).string(); }

}  // namespace

TEST(Cli, CoverExampleQuadrature) {
  const auto r = run({"cover", "--example", "--backend", "quadrature", "--radius", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto line = last_line(r.out);
  ASSERT_EQ(line.rfind("total,", 0), 0u);
  EXPECT_NEAR(std::stod(line.substr(6)), 0.923, 5e-4);
}

TEST(Cli, CoverEmptyFacilities) {
  const auto demand = write("e_demand.csv", "id,x,y,weight,radius\na,0,0,1,1\nb,5,5,2,1\n");
  const auto facilities = write("e_fac.csv", "id,x,y\n");
  const auto r = run({"cover", "--demand", demand, "--facilities", facilities});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "id,cover\na,0\nb,0\ntotal,0\n");
}

TEST(Cli, CoverMonteCarloDeterministic) {
  const std::vector<std::string> args{"cover", "--example", "--backend", "montecarlo", "--samples", "200000", "--seed", "7"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"cover", "--example", "--backend", "simplex"}).code, 2);
  EXPECT_EQ(run({"cover", "--demand", "/nonexistent.csv", "--facilities", "/nonexistent.csv"}).code, 2);
  const auto bad = write("bad_demand.csv", "id,x,y,weight,radius\na,0,0,1,0\n");
  const auto fac = write("one_fac.csv", "id,x,y\nf,0,0\n");
  const auto r = run({"cover", "--demand", bad, "--facilities", fac});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2 column 'radius'"), std::string::npos) << r.err;
  // unwritable output is a run failure, not a usage error
  EXPECT_EQ(run({"cover", "--example", "--out", "/nonexistent/dir/out.csv"}).code, 1);
}

TEST(Cli, SolveDiscreteEnumerateAndGa) {
  const auto tag = small_instance("disc");
  const auto e = run({"solve-discrete", "--demand", demand_of(tag), "--sites", sites_of(tag), "-p", "2", "--enumerate"});
  ASSERT_EQ(e.code, 0) << e.err;
  const auto g = run({"solve-discrete", "--demand", demand_of(tag), "--sites", sites_of(tag), "-p", "2", "--pop", "20",
                      "--generations", "200", "--seed", "4"});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto er = report_from_string(e.out), gr = report_from_string(g.out);
  EXPECT_EQ(er.solver, "enumerate");
  EXPECT_EQ(gr.solver, "genetic");
  EXPECT_LE(gr.objective, er.objective);
  EXPECT_EQ(gr.config.at("ga").at("population_size"), 20);
  EXPECT_EQ(gr.config.at("backend").at("name"), "quadrature");
  EXPECT_EQ(gr.wall_time, 0.0);
}

TEST(Cli, SolveDiscreteAllSites) {
  const auto tag = small_instance("all", 10, 4);
  const auto r = run({"solve-discrete", "--demand", demand_of(tag), "--sites", sites_of(tag), "-p", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(report_from_string(r.out).site_indices, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(run({"solve-discrete", "--demand", demand_of(tag), "--sites", sites_of(tag), "-p", "5"}).code, 2);
}

TEST(Cli, SolveDiscreteByteIdentical) {
  const auto tag = small_instance("det");
  const std::vector<std::string> args{"solve-discrete", "--demand", demand_of(tag), "--sites", sites_of(tag), "-p", "3",
                                      "--generations", "100", "--seed", "11"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, SolveContinuousFromDiscreteAndPlot) {
  const auto tag = small_instance("cont");
  const auto disc_path = (dir() / "cont_disc.json").string();
  ASSERT_EQ(run({"solve-discrete", "--demand", demand_of(tag), "--sites", sites_of(tag), "-p", "2", "--generations", "50",
                 "--out", disc_path})
                .code,
            0);
  const auto plot = (dir() / "cont_plot.csv").string();
  const auto out = (dir() / "cont.json").string();
  const auto r = run({"solve-continuous", "--demand", demand_of(tag), "--start-from", disc_path, "--starts", "1", "--out", out,
                      "--plot", plot});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto disc = read_report(disc_path), cont = read_report(out);
  EXPECT_GE(cont.objective, disc.objective);
  EXPECT_EQ(cont.config.at("start_mode"), "given_sites");
  const auto csv = slurp(plot);
  EXPECT_EQ(csv.rfind("kind,id,x,y,radius\n", 0), 0u);
  EXPECT_NE(csv.find("facility,f1,"), std::string::npos);
  EXPECT_NE(csv.find("demand,d11,"), std::string::npos);
  // -p disagreeing with the start report is a usage error
  EXPECT_EQ(run({"solve-continuous", "--demand", demand_of(tag), "--start-from", disc_path, "-p", "3"}).code, 2);
  EXPECT_EQ(run({"solve-continuous", "--demand", demand_of(tag)}).code, 2);
}

TEST(Cli, SolveContinuousByteIdentical) {
  const auto tag = small_instance("cdet");
  const std::vector<std::string> args{"solve-continuous", "--demand", demand_of(tag), "-p", "2", "--starts", "3", "--seed", "5"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GenInstanceRoundTrips) {
  const auto tag = small_instance("gen", 7, 3);
  const auto inst = load_instance(demand_of(tag), sites_of(tag));
  EXPECT_EQ(inst.demand_count(), 7u);
  EXPECT_EQ(inst.site_count(), 3u);
  EXPECT_EQ(run({"gen-instance", "-n", "0", "--demand-out", demand_of("bad")}).code, 2);
}

TEST(Cli, BenchLayout) {
  const auto r = run({"bench", "--samples", "20000", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "R,Sim,Gauss,N=199,N=397,N=805");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 12);
  EXPECT_EQ(last_line(r.out).rfind("Average,,", 0), 0u);
  EXPECT_EQ(run({"bench", "--samples", "20000", "--seed", "1"}).out, r.out);
}
