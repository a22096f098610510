#include "pdtsp/metaheuristics.h"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace pdtsp {

std::vector<Visit> lox_crossover(std::span<const Visit> first,
                                 std::span<const Visit> second,
                                 std::size_t begin,
                                 std::size_t end) {
  const std::size_t size = first.size();
  if (second.size() != size || begin > end || end > size) {
    throw InputError("crossover window or parent sizes do not match");
  }
  const Visit max_visit =
    size == 0 ? 0 : *std::max_element(first.begin(), first.end());
  std::vector<bool> taken(max_visit + 1, false);
  std::vector<Visit> child(size, -1);
  for (std::size_t k = begin; k < end; ++k) {
    child[k] = first[k];
    taken[first[k]] = true;
  }
  std::size_t from = 0;
  for (std::size_t k = 0; k < size; ++k) {
    if (k == begin) {
      k = end;
      if (k >= size) {
        break;
      }
    }
    while (taken[second[from]]) {
      ++from;
    }
    child[k] = second[from];
    taken[second[from]] = true;
  }
  return child;
}

std::vector<Visit> lox_crossover(std::span<const Visit> first,
                                 std::span<const Visit> second,
                                 Rng& rng) {
  if (first.empty()) {
    return {};
  }
  std::uniform_int_distribution<std::size_t> at(0, first.size() - 1);
  std::size_t a = at(rng);
  std::size_t b = at(rng);
  if (a > b) {
    std::swap(a, b);
  }
  return lox_crossover(first, second, a, b + 1);
}

Tour mutate_and_repair(const Instance& instance,
                       std::vector<Visit> sequence,
                       Workspace& ws) {
  if (!is_tour_sequence(instance, sequence)) {
    throw InputError("mutation input is not a tour sequence");
  }
  Tour tour;
  tour.seq = std::move(sequence);
  tour.refresh(instance);

  const MoveDelta mutation =
    four_opt_best_type1_unconstrained(instance, tour, ws);
  if (mutation.found() && improves(mutation.delta)) {
    apply_move_unchecked(instance, tour, mutation);
  }

  std::vector<Visit> violated;
  for (Visit x = 1; x <= static_cast<Visit>(instance.n_pairs()); ++x) {
    if (tour.pos[x] > tour.pos[instance.partner(x)]) {
      violated.push_back(x);
    }
  }
  std::sort(violated.begin(), violated.end(), [&](Visit a, Visit b) {
    return tour.pos[a] < tour.pos[b];
  });
  for (const Visit x : violated) {
    apply_move(instance, tour, relocate_pair_best(instance, tour, x, ws));
  }
  return tour;
}

Tour mutate_and_repair(const Instance& instance, std::vector<Visit> sequence) {
  Workspace ws;
  return mutate_and_repair(instance, std::move(sequence), ws);
}

EdgeSet edge_set(const Instance& instance, const Tour& tour) {
  EdgeSet edges;
  const auto& s = tour.seq;
  std::size_t count = s.size() - 1;
  if (instance.mode() == TourMode::open) {
    --count;
  }
  edges.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int a = instance.location(s[k]);
    const int b = instance.location(s[k + 1]);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double jaccard_distance(const EdgeSet& a, const EdgeSet& b) {
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t joint = a.size() + b.size() - common;
  if (joint == 0) {
    return 0;
  }
  return static_cast<double>(joint - common) / static_cast<double>(joint);
}

Fitness biased_fitness(std::span<const Cost> costs,
                       std::span<const EdgeSet> edges,
                       std::size_t mu_elite) {
  const std::size_t size = costs.size();
  if (size < 3 || edges.size() != size) {
    throw InputError("biased fitness needs at least 3 individuals");
  }
  Fitness f;
  f.diversity.assign(size, 0);
  std::vector<double> row(size);
  for (std::size_t i = 0; i < size; ++i) {
    row.clear();
    for (std::size_t j = 0; j < size; ++j) {
      if (j != i) {
        row.push_back(jaccard_distance(edges[i], edges[j]));
      }
    }
    std::partial_sort(row.begin(), row.begin() + 2, row.end());
    f.diversity[i] = (row[0] + row[1]) / 2;
  }

  std::vector<std::size_t> order(size);
  f.cost_rank.resize(size);
  f.diversity_rank.resize(size);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return costs[a] < costs[b];
  });
  for (std::size_t r = 0; r < size; ++r) {
    f.cost_rank[order[r]] = r;
  }
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return f.diversity[a] > f.diversity[b];
  });
  for (std::size_t r = 0; r < size; ++r) {
    f.diversity_rank[order[r]] = r;
  }

  const double weight =
    1.0 - static_cast<double>(mu_elite) / static_cast<double>(size);
  f.biased.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    f.biased[i] = static_cast<double>(f.cost_rank[i]) +
                  weight * static_cast<double>(f.diversity_rank[i]);
  }
  return f;
}

void HgsParams::validate() const {
  if (mu < 2 || lambda < 1 || mu_elite >= mu) {
    throw InputError("population sizes need mu >= 2, lambda >= 1 and "
                     "mu_elite < mu");
  }
  search.validate();
  if (!time_limit && !max_iterations && !max_no_improvement && !target_cost) {
    throw InputError("genetic search needs a termination criterion");
  }
}

Population::Population(const Instance& instance, const HgsParams& params)
  : instance_(instance),
    mu_(params.mu),
    lambda_(params.lambda),
    mu_elite_(params.mu_elite) {
}

Fitness Population::fitness() const {
  std::vector<Cost> costs;
  std::vector<EdgeSet> edges;
  for (const auto& ind : individuals_) {
    costs.push_back(ind.tour.cost);
    edges.push_back(ind.edges);
  }
  if (individuals_.size() >= 3) {
    return biased_fitness(costs, edges, mu_elite_);
  }
  // Too small for a diversity measure: rank on cost only.
  Fitness f;
  const std::size_t size = costs.size();
  f.cost_rank.assign(size, 0);
  f.diversity_rank.assign(size, 0);
  f.diversity.assign(size, 0);
  f.biased.assign(size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (costs[j] < costs[i] || (costs[j] == costs[i] && j < i)) {
        ++f.cost_rank[i];
      }
    }
    f.biased[i] = static_cast<double>(f.cost_rank[i]);
  }
  return f;
}

void Population::add(Tour tour) {
  Individual ind;
  ind.edges = edge_set(instance_, tour);
  ind.tour = std::move(tour);
  individuals_.push_back(std::move(ind));
  if (individuals_.size() >= mu_ + lambda_) {
    trim();
  }
}

void Population::trim() {
  while (individuals_.size() > mu_) {
    const Fitness f = fitness();
    const auto keep = static_cast<std::size_t>(&best() - individuals_.data());
    std::size_t worst = keep == 0 ? 1 : 0;
    for (std::size_t i = 0; i < individuals_.size(); ++i) {
      if (i != keep && f.biased[i] > f.biased[worst]) {
        worst = i;
      }
    }
    individuals_.erase(individuals_.begin() + worst);
  }
}

const Individual& Population::best() const {
  return *std::min_element(
    individuals_.begin(), individuals_.end(), [](auto& a, auto& b) {
      return a.tour.cost < b.tour.cost;
    });
}

const Individual& Population::select(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, individuals_.size() - 1);
  const std::size_t a = pick(rng);
  const std::size_t b = pick(rng);
  const Fitness f = fitness();
  return individuals_[f.biased[b] < f.biased[a] ? b : a];
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Visit> interior(const Tour& tour) {
  return {tour.seq.begin() + 1, tour.seq.end() - 1};
}

} // namespace

RunResult hgs_run(const Instance& instance, const HgsParams& params, Rng& rng) {
  params.validate();
  const auto start = Clock::now();
  LocalSearch search(instance, params.search);
  Workspace ws;
  Population population(instance, params);
  std::uniform_real_distribution<double> unit(0, 1);

  RunResult result;
  bool have_best = false;
  std::size_t since_improvement = 0;

  auto out_of_time = [&] {
    return params.time_limit && seconds_since(start) >= *params.time_limit;
  };
  auto reached_target = [&] {
    return have_best && params.target_cost &&
           result.best.cost <= *params.target_cost + IMPROVEMENT_EPS;
  };
  auto offer = [&](Tour tour) {
    if (!have_best || improves(tour.cost - result.best.cost)) {
      result.best = tour;
      result.time_to_best = seconds_since(start);
      have_best = true;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    population.add(std::move(tour));
  };
  auto descend = [&](Tour tour) {
    const bool use_large = unit(rng) < params.search.p_large;
    return search.run(std::move(tour), use_large, rng);
  };

  for (std::size_t i = 0; i < params.mu; ++i) {
    if (have_best && (out_of_time() || reached_target())) {
      break;
    }
    offer(descend(greedy_construct(instance, rng)));
  }
  since_improvement = 0;

  while (true) {
    if (params.max_iterations && result.iterations >= *params.max_iterations) {
      break;
    }
    if (params.max_no_improvement &&
        since_improvement >= *params.max_no_improvement) {
      break;
    }
    if (out_of_time() || reached_target()) {
      break;
    }
    const Individual& first = population.select(rng);
    const Individual& second = population.select(rng);
    std::vector<Visit> child =
      lox_crossover(interior(first.tour), interior(second.tour), rng);
    child.insert(child.begin(), 0);
    child.push_back(instance.terminal());
    offer(descend(mutate_and_repair(instance, std::move(child), ws)));
    ++result.iterations;
  }
  result.total_time = seconds_since(start);
  return result;
}

} // namespace pdtsp
