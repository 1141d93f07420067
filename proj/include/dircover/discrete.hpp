#pragma once

// Choosing p of m candidate sites: exhaustive enumeration, swap-based
// ascent (full and restricted), reverse greedy, and the genetic algorithm
// built from them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cover.hpp"
#include "instance.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace dircover {

/// Distinct site indices, kept sorted.
class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
      throw std::invalid_argument("SiteSet: repeated site index");
  }

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }

  bool contains(std::size_t site) const { return std::binary_search(indices_.begin(), indices_.end(), site); }

  /// Replaces `out` (must be present) by `in` (must be absent).
  SiteSet swapped(std::size_t out, std::size_t in) const {
    SiteSet s;
    s.indices_.reserve(indices_.size());
    bool placed = false;
    for (std::size_t v : indices_) {
      if (v == out) continue;
      if (!placed && in < v) {
        s.indices_.push_back(in);
        placed = true;
      }
      s.indices_.push_back(v);
    }
    if (!placed) s.indices_.push_back(in);
    return s;
  }

  SiteSet without(std::size_t out) const {
    SiteSet s;
    s.indices_.reserve(indices_.size());
    for (std::size_t v : indices_)
      if (v != out) s.indices_.push_back(v);
    return s;
  }

  friend bool operator==(const SiteSet&, const SiteSet&) = default;
  friend auto operator<=>(const SiteSet&, const SiteSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Number of sites two sets share.
inline std::size_t similarity(const SiteSet& a, const SiteSet& b) {
  std::size_t c = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

/// C(n, k), saturating at the largest uint64.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

/// Total weighted cover of a site selection, with call counting and a
/// bounded memo. One instance per solver run; not thread safe.
class SiteObjective {
 public:
  SiteObjective(const Instance& instance, const CoverEvaluator& evaluator, std::size_t memo_limit = std::size_t{1} << 20)
      : instance_(&instance), evaluator_(&evaluator), memo_limit_(memo_limit) {
    if (instance.candidate_sites.empty()) throw std::invalid_argument("SiteObjective: instance has no candidate sites");
    if (!(instance.total_weight() > 0.0)) throw std::invalid_argument("SiteObjective: total demand weight is zero");
    sites_.reserve(instance.site_count());
    for (std::size_t j = 0; j < instance.site_count(); ++j) sites_.push_back(instance.site_facility(j));
  }

  double operator()(const SiteSet& s) {
    ++evaluations_;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    facilities_.clear();
    for (std::size_t j : s) facilities_.push_back(sites_.at(j));
    const double v = total_weighted_cover(*instance_, facilities_, *evaluator_);
    if (memo_.size() < memo_limit_) memo_.emplace(s, v);
    return v;
  }

  std::size_t site_count() const { return sites_.size(); }
  std::uint64_t evaluations() const { return evaluations_; }
  const Instance& instance() const { return *instance_; }
  const CoverEvaluator& evaluator() const { return *evaluator_; }
  const Facility& site(std::size_t j) const { return sites_.at(j); }

 private:
  struct Hash {
    std::size_t operator()(const SiteSet& s) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (std::size_t v : s) h = (h ^ v) * 0x100000001b3ULL;
      return static_cast<std::size_t>(h);
    }
  };

  const Instance* instance_;
  const CoverEvaluator* evaluator_;
  std::size_t memo_limit_;
  std::vector<Facility> sites_;
  std::vector<Facility> facilities_;
  std::unordered_map<SiteSet, double, Hash> memo_;
  std::uint64_t evaluations_ = 0;
};

inline void check_site_set(const SiteSet& s, std::size_t site_count) {
  if (!s.empty() && s.indices().back() >= site_count)
    throw std::invalid_argument("site index " + std::to_string(s.indices().back()) + " out of range");
}

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationResult {
  SiteSet sites;
  double objective = 0.0;
};

/// Exact maximizer over all p-subsets; ties go to the lexicographically
/// smallest index set.
inline EnumerationResult enumerate_optimal(SiteObjective& objective, std::size_t p,
                                           std::uint64_t budget = 2'000'000) {
  const std::size_t m = objective.site_count();
  if (p < 1 || p > m) throw std::invalid_argument("enumerate_optimal: need 1 <= p <= m");
  const std::uint64_t subsets = binomial(m, p);
  if (subsets > budget)
    throw EnumerationBudgetExceeded("enumerate_optimal: C(" + std::to_string(m) + "," + std::to_string(p) + ") = " +
                                    std::to_string(subsets) + " subsets exceeds budget " + std::to_string(budget));
  std::vector<std::size_t> combo(p);
  std::iota(combo.begin(), combo.end(), std::size_t{0});
  EnumerationResult best{SiteSet(combo), -1.0};
  while (true) {
    SiteSet s(combo);
    const double v = objective(s);
    if (v > best.objective) best = {std::move(s), v};
    std::size_t i = p;
    while (i > 0 && combo[i - 1] == m - p + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t k = i; k < p; ++k) combo[k] = combo[k - 1] + 1;
  }
  return best;
}

/// Swap ascent with partners limited to `candidates`. Each sweep evaluates
/// every (selected, candidate) swap and applies the best strictly improving
/// one; the swapped-out site becomes a candidate. `trace`, if given,
/// receives the start objective and the objective after each accepted swap.
inline SiteSet restricted_ascent(SiteSet start, std::vector<std::size_t> candidates, SiteObjective& objective,
                                 std::vector<double>* trace = nullptr) {
  check_site_set(start, objective.site_count());
  std::sort(candidates.begin(), candidates.end());
  for (std::size_t c : candidates) {
    if (c >= objective.site_count()) throw std::invalid_argument("restricted_ascent: candidate out of range");
    if (start.contains(c)) throw std::invalid_argument("restricted_ascent: candidate already selected");
  }
  double current = objective(start);
  if (trace) trace->push_back(current);
  while (!candidates.empty()) {
    double best_value = current;
    std::size_t best_out = 0, best_in = 0;
    bool found = false;
    for (std::size_t out : start) {
      for (std::size_t in : candidates) {
        const double v = objective(start.swapped(out, in));
        if (v > best_value) {
          best_value = v;
          best_out = out;
          best_in = in;
          found = true;
        }
      }
    }
    if (!found) break;
    start = start.swapped(best_out, best_in);
    candidates.erase(std::find(candidates.begin(), candidates.end(), best_in));
    candidates.insert(std::upper_bound(candidates.begin(), candidates.end(), best_out), best_out);
    current = best_value;
    if (trace) trace->push_back(current);
  }
  return start;
}

inline std::vector<std::size_t> unselected_sites(const SiteSet& s, std::size_t site_count) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < site_count; ++j)
    if (!s.contains(j)) out.push_back(j);
  return out;
}

/// Best-improvement swap ascent against every non-selected site.
inline SiteSet ascent(SiteSet start, SiteObjective& objective, std::vector<double>* trace = nullptr) {
  check_site_set(start, objective.site_count());
  auto candidates = unselected_sites(start, objective.site_count());
  return restricted_ascent(std::move(start), std::move(candidates), objective, trace);
}

/// Drops the least damaging site until p remain (ties: smallest index).
inline SiteSet reverse_greedy(SiteSet selected, std::size_t p, SiteObjective& objective,
                              std::vector<double>* trace = nullptr) {
  check_site_set(selected, objective.site_count());
  if (selected.size() <= p) throw std::invalid_argument("reverse_greedy: selection must have more than p sites");
  while (selected.size() > p) {
    double best = -1.0;
    std::size_t drop = 0;
    for (std::size_t s : selected) {
      const double v = objective(selected.without(s));
      if (v > best) {
        best = v;
        drop = s;
      }
    }
    selected = selected.without(drop);
    if (trace) trace->push_back(best);
  }
  return selected;
}

struct PopulationMember {
  SiteSet sites;
  double objective = 0.0;
};

/// First parent uniform; P distinct candidates from the rest; the candidate
/// sharing fewest sites with the first parent wins (ties uniform).
/// Returns population indices.
inline std::pair<std::size_t, std::size_t> select_parents(std::span<const PopulationMember> population,
                                                          std::size_t candidates, Rng& rng) {
  const std::size_t pop = population.size();
  if (candidates < 1) throw std::invalid_argument("select_parents: P must be >= 1");
  if (candidates >= pop) throw std::invalid_argument("select_parents: P must be smaller than the population");
  const std::size_t first = rng.index(pop);
  const auto draws = sample_distinct(pop - 1, candidates, rng);
  std::vector<std::size_t> tied;
  std::size_t best_c = std::numeric_limits<std::size_t>::max();
  for (std::size_t d : draws) {
    const std::size_t idx = d < first ? d : d + 1;
    const std::size_t c = similarity(population[first].sites, population[idx].sites);
    if (c < best_c) {
      best_c = c;
      tied.assign(1, idx);
    } else if (c == best_c) {
      tied.push_back(idx);
    }
  }
  const std::size_t second = tied.size() == 1 ? tied.front() : tied[rng.index(tied.size())];
  return {first, second};
}

/// Intermediate states of one merge, for inspection.
struct MergeTrace {
  SiteSet assembled;  // common sites plus random picks from the rest
  double assembled_objective = 0.0;
  SiteSet after_restricted_ascent;
  std::vector<std::size_t> mutation_candidates;
};

/// Offspring of two parents: keep shared sites, fill with random sites held
/// by one parent only, improve by restricted ascent against the unused
/// ones, then again against floor(p/2) random sites outside the solution.
inline PopulationMember merge_offspring(const SiteSet& parent1, const SiteSet& parent2, SiteObjective& objective, Rng& rng,
                                        MergeTrace* trace = nullptr) {
  if (parent1.size() != parent2.size() || parent1.empty())
    throw std::invalid_argument("merge_offspring: parents must be non-empty and of equal size");
  const std::size_t p = parent1.size();
  const std::size_t m = objective.site_count();

  std::vector<std::size_t> common, exclusive;
  std::set_intersection(parent1.begin(), parent1.end(), parent2.begin(), parent2.end(), std::back_inserter(common));
  std::set_symmetric_difference(parent1.begin(), parent1.end(), parent2.begin(), parent2.end(),
                                std::back_inserter(exclusive));
  const std::size_t fill = p - common.size();
  const auto picks = sample_distinct(exclusive.size(), fill, rng);
  std::vector<bool> picked(exclusive.size(), false);
  for (std::size_t k : picks) {
    common.push_back(exclusive[k]);
    picked[k] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < exclusive.size(); ++k)
    if (!picked[k]) rest.push_back(exclusive[k]);

  SiteSet solution(std::move(common));
  if (trace) {
    trace->assembled = solution;
    trace->assembled_objective = objective(solution);
  }
  solution = restricted_ascent(std::move(solution), std::move(rest), objective);
  if (trace) trace->after_restricted_ascent = solution;

  const auto pool = unselected_sites(solution, m);
  const std::size_t draw = std::min(p / 2, pool.size());
  std::vector<std::size_t> mutation;
  for (std::size_t k : sample_distinct(pool.size(), draw, rng)) mutation.push_back(pool[k]);
  if (trace) trace->mutation_candidates = mutation;
  solution = restricted_ascent(std::move(solution), std::move(mutation), objective);

  const double value = objective(solution);
  return {std::move(solution), value};
}

struct GaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 10000;
  std::size_t second_parent_candidates = 2;
  double initial_improve_fraction = 0.20;
  std::uint64_t seed = 0;

  void validate() const {
    if (population_size < 2) throw std::invalid_argument("GaConfig: population size must be >= 2");
    if (second_parent_candidates < 1) throw std::invalid_argument("GaConfig: P must be >= 1");
    if (second_parent_candidates >= population_size)
      throw std::invalid_argument("GaConfig: P must be smaller than the population size");
    if (!(initial_improve_fraction >= 0.0 && initial_improve_fraction <= 1.0))
      throw std::invalid_argument("GaConfig: improve fraction must be in [0,1]");
  }

  nlohmann::ordered_json to_json() const {
    return {{"population_size", population_size},
            {"generations", generations},
            {"second_parent_candidates", second_parent_candidates},
            {"initial_improve_fraction", initial_improve_fraction},
            {"seed", seed}};
  }
};

/// Called with the generation number (0 = initial population) and the
/// population after that generation.
using GaObserver = std::function<void(std::size_t, std::span<const PopulationMember>)>;

inline SolveReport genetic_solve(SiteObjective& objective, std::size_t p, const GaConfig& config,
                                 const GaObserver& observer = {}) {
  config.validate();
  const std::size_t m = objective.site_count();
  if (p < 1 || p > m) throw std::invalid_argument("genetic_solve: need 1 <= p <= m");
  // With fewer subsets than population slots the population is the whole
  // search space, listed in lexicographic order.
  const std::uint64_t subsets = binomial(m, p);
  const bool exhaustive = subsets <= config.population_size;
  const std::size_t pop_size = exhaustive ? static_cast<std::size_t>(subsets) : config.population_size;
  const std::size_t parents = std::min(config.second_parent_candidates, pop_size - 1);

  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t evaluations_before = objective.evaluations();
  Rng rng(config.seed);

  auto contains_set = [](std::span<const PopulationMember> pop, const SiteSet& s, std::size_t skip) {
    for (std::size_t k = 0; k < pop.size(); ++k)
      if (k != skip && pop[k].sites == s) return true;
    return false;
  };

  std::vector<PopulationMember> population;
  population.reserve(pop_size);
  if (exhaustive) {
    std::vector<std::size_t> combo(p);
    std::iota(combo.begin(), combo.end(), std::size_t{0});
    while (true) {
      SiteSet s(combo);
      const double v = objective(s);
      population.push_back({std::move(s), v});
      std::size_t i = p;
      while (i > 0 && combo[i - 1] == m - p + (i - 1)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t k = i; k < p; ++k) combo[k] = combo[k - 1] + 1;
    }
  } else {
    constexpr int kDuplicateAttempts = 100;
    for (std::size_t k = 0; k < pop_size; ++k) {
      SiteSet s;
      for (int attempt = 0; attempt < kDuplicateAttempts; ++attempt) {
        s = SiteSet(sample_distinct(m, p, rng));
        if (!contains_set(population, s, population.size())) break;
      }
      const double v = objective(s);
      population.push_back({std::move(s), v});
    }
  }

  const auto improve = exhaustive ? std::size_t{0}
                                  : static_cast<std::size_t>(std::lround(config.initial_improve_fraction *
                                                                         static_cast<double>(pop_size)));
  for (std::size_t k : sample_distinct(pop_size, improve, rng)) {
    SiteSet better = ascent(population[k].sites, objective);
    // an improvement that duplicates another member is discarded
    if (better != population[k].sites && !contains_set(population, better, k)) {
      population[k].objective = objective(better);
      population[k].sites = std::move(better);
    }
  }

  auto best_index = [&] {
    std::size_t b = 0;
    for (std::size_t k = 1; k < population.size(); ++k)
      if (population[k].objective > population[b].objective) b = k;
    return b;
  };
  auto worst_index = [&] {
    std::size_t w = 0;
    for (std::size_t k = 1; k < population.size(); ++k)
      if (population[k].objective < population[w].objective) w = k;
    return w;
  };

  std::vector<double> trace;
  trace.reserve(config.generations + 1);
  trace.push_back(population[best_index()].objective);
  if (observer) observer(0, population);

  for (std::size_t gen = 1; gen <= config.generations && !exhaustive; ++gen) {
    const auto [a, b] = select_parents(population, parents, rng);
    PopulationMember child = merge_offspring(population[a].sites, population[b].sites, objective, rng);
    const std::size_t worst = worst_index();
    if (child.objective > population[worst].objective &&
        !contains_set(population, child.sites, population.size()))
      population[worst] = std::move(child);
    trace.push_back(population[best_index()].objective);
    if (observer) observer(gen, population);
  }

  const auto& best = population[best_index()];
  SolveReport report;
  report.solver = "genetic";
  report.seed = config.seed;
  report.objective = best.objective;
  report.site_indices.assign(best.sites.begin(), best.sites.end());
  bool shared_radius = true;
  for (std::size_t j : best.sites) {
    report.facilities.push_back(objective.site(j).center);
    shared_radius = shared_radius && !objective.instance().candidate_sites[j].cover_radius;
  }
  report.cover_radius = shared_radius ? objective.instance().default_cover_radius : 0.0;
  report.evaluations = objective.evaluations() - evaluations_before;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report.trace = std::move(trace);
  report.config = {{"p", p}, {"backend", objective.evaluator().name()}, {"ga", config.to_json()}};
  if (exhaustive) report.config["exhaustive_population"] = pop_size;
  return report;
}

/// Enumeration packaged as a report.
inline SolveReport enumerate_report(SiteObjective& objective, std::size_t p, std::uint64_t budget = 2'000'000) {
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t before = objective.evaluations();
  const auto best = enumerate_optimal(objective, p, budget);
  SolveReport report;
  report.solver = "enumerate";
  report.objective = best.objective;
  report.site_indices.assign(best.sites.begin(), best.sites.end());
  bool shared_radius = true;
  for (std::size_t j : best.sites) {
    report.facilities.push_back(objective.site(j).center);
    shared_radius = shared_radius && !objective.instance().candidate_sites[j].cover_radius;
  }
  report.cover_radius = shared_radius ? objective.instance().default_cover_radius : 0.0;
  report.evaluations = objective.evaluations() - before;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report.trace = {best.objective};
  report.config = {{"p", p}, {"backend", objective.evaluator().name()}, {"budget", budget}};
  return report;
}

}  // namespace dircover
