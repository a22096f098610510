#ifndef PDTSP_METAHEURISTICS_H
#define PDTSP_METAHEURISTICS_H

#include <optional>
#include <string_view>

#include "pdtsp/search.h"

namespace pdtsp {

// Inserts each request (pickup, partner) at its cheapest position, in the
// given order. route must start at 0 and end at the terminal.
void insert_requests(const Instance& instance,
                     std::vector<Visit>& route,
                     std::span<const Visit> pickups,
                     bool naive = false);

// Random request order, cheapest insertion of each.
Tour greedy_construct(const Instance& instance, Rng& rng, bool naive = false);

enum class DestroyOperator { random, worst, block };

DestroyOperator parse_destroy_operator(std::string_view text);
std::string_view to_string(DestroyOperator op);

struct Destroyed {
  // Remaining sequence, still anchored at 0 and the terminal.
  std::vector<Visit> route;
  // Pickups of the removed requests, in removal order.
  std::vector<Visit> removed;
};

inline constexpr double WORST_REMOVAL_EXPONENT = 3;

Destroyed destroy(const Instance& instance,
                  const Tour& tour,
                  DestroyOperator op,
                  std::size_t q,
                  Rng& rng);

// Inclusive range of the number of removed requests.
std::pair<std::size_t, std::size_t> removal_bounds(std::size_t n_pairs);

struct RrParams {
  std::optional<std::size_t> max_iterations;
  std::optional<double> time_limit;
  std::optional<Cost> target_cost;
  // A degradation of this fraction of the initial cost is accepted with
  // probability 1/2 at the start.
  double initial_degradation = 0.05;
  double final_temperature_ratio = 1e-3;
  bool fast_insertion = true;
  std::vector<DestroyOperator> operators{DestroyOperator::random,
                                         DestroyOperator::worst,
                                         DestroyOperator::block};
  bool record_trajectory = false;
};

struct RunResult {
  Tour best;
  double time_to_best = 0;
  double total_time = 0;
  std::size_t iterations = 0;
  // Incumbent sequence after each iteration, when requested.
  std::vector<std::vector<Visit>> trajectory;
};

RunResult rr_run(const Instance& instance, const RrParams& params, Rng& rng);

// Linear order crossover on interior visit lists. Copies first[begin, end)
// in place and fills the remaining slots from left to right in the order
// of second.
std::vector<Visit> lox_crossover(std::span<const Visit> first,
                                 std::span<const Visit> second,
                                 std::size_t begin,
                                 std::size_t end);
std::vector<Visit> lox_crossover(std::span<const Visit> first,
                                 std::span<const Visit> second,
                                 Rng& rng);

// Applies the cheapest Type-1 4-opt move if it lowers the cost, then
// reinserts every request whose delivery precedes its pickup at its best
// feasible position, in increasing pickup position.
Tour mutate_and_repair(const Instance& instance,
                       std::vector<Visit> sequence,
                       Workspace& ws);
Tour mutate_and_repair(const Instance& instance, std::vector<Visit> sequence);

// Sorted set of unordered location pairs of consecutive visits. In open
// mode the edge to the terminal is not part of the tour.
using EdgeSet = std::vector<std::pair<int, int>>;

EdgeSet edge_set(const Instance& instance, const Tour& tour);

double jaccard_distance(const EdgeSet& a, const EdgeSet& b);

struct Fitness {
  std::vector<std::size_t> cost_rank;
  std::vector<std::size_t> diversity_rank;
  std::vector<double> diversity;
  std::vector<double> biased;
};

// Needs at least 3 individuals. Ties keep input order.
Fitness biased_fitness(std::span<const Cost> costs,
                       std::span<const EdgeSet> edges,
                       std::size_t mu_elite);

struct HgsParams {
  std::size_t mu = 25;
  std::size_t lambda = 40;
  std::size_t mu_elite = 1;
  SearchParams search;
  std::optional<double> time_limit;
  std::optional<std::size_t> max_iterations;
  std::optional<std::size_t> max_no_improvement;
  std::optional<Cost> target_cost;

  void validate() const;
};

struct Individual {
  Tour tour;
  EdgeSet edges;
};

// Individuals kept between mu and mu + lambda.
class Population {
public:
  Population(const Instance& instance, const HgsParams& params);

  // Adds a feasible individual and trims back to mu once mu + lambda is
  // reached.
  void add(Tour tour);

  // Binary tournament on biased fitness.
  const Individual& select(Rng& rng) const;

  const Individual& best() const;
  std::size_t size() const {
    return individuals_.size();
  }
  const std::vector<Individual>& individuals() const {
    return individuals_;
  }

  Fitness fitness() const;

private:
  void trim();

  const Instance& instance_;
  std::size_t mu_;
  std::size_t lambda_;
  std::size_t mu_elite_;
  std::vector<Individual> individuals_;
};

RunResult hgs_run(const Instance& instance, const HgsParams& params, Rng& rng);

} // namespace pdtsp

#endif
