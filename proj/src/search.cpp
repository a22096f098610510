#include "pdtsp/search.h"

#include <algorithm>
#include <numeric>

namespace pdtsp {

namespace {

void keep_best(MoveDelta& best, MoveDelta&& candidate) {
  if (candidate.found() && candidate.feasible &&
      candidate.delta < best.delta) {
    best = std::move(candidate);
  }
}

} // namespace

void SearchParams::validate() const {
  if (k_or < 1) {
    throw InputError("k_or must be at least 1");
  }
  if (k_bs < 1 || k_bs > MAX_BS_WINDOW) {
    throw InputError("k_bs must be in 1.." + std::to_string(MAX_BS_WINDOW));
  }
  if (!(p_large >= 0 && p_large <= 1)) {
    throw InputError("p_large must be in [0, 1]");
  }
}

LocalSearch::LocalSearch(const Instance& instance, SearchParams params)
  : instance_(instance), params_(params) {
  params_.validate();
  order_.resize(instance.n_pairs());
  std::iota(order_.begin(), order_.end(), 1);
}

MoveDelta LocalSearch::best_request_move(const Tour& tour, Visit x) {
  const Index p = tour.pos[x];
  const Index d = tour.pos[instance_.partner(x)];
  MoveDelta best;
  keep_best(best, relocate_pair_best(instance_, tour, x, ws_));
  keep_best(best, two_opt_scan(instance_, tour, p));
  keep_best(best, two_opt_scan(instance_, tour, d));
  keep_best(best, or_opt_scan(instance_, tour, p, params_.k_or));
  keep_best(best, or_opt_scan(instance_, tour, d, params_.k_or));
  return best;
}

std::size_t LocalSearch::sweep(Tour& tour, Rng& rng) {
  std::shuffle(order_.begin(), order_.end(), rng);
  std::size_t applied = 0;
  for (const Visit x : order_) {
    const MoveDelta move = best_request_move(tour, x);
    if (move.improving()) {
      apply_move(instance_, tour, move);
      ++applied;
    }
  }
  return applied;
}

MoveDelta LocalSearch::best_large_move(const Tour& tour) {
  MoveDelta best;
  keep_best(best, two_k_opt_best(instance_, tour, ws_));
  keep_best(best, four_opt_best(instance_, tour, ws_));
  if (params_.k_bs > 1) {
    keep_best(best, bs_move(instance_, tour, params_.k_bs));
  }
  if (!best.improving()) {
    return {};
  }
  return best;
}

Tour LocalSearch::run(Tour tour, bool use_large, Rng& rng, SearchStats* stats) {
  SearchStats local;
  bool improved = true;
  while (improved) {
    improved = false;
    ++local.rounds;
    const std::size_t applied = sweep(tour, rng);
    local.moves += applied;
    improved = applied > 0;
    if (use_large) {
      const MoveDelta move = best_large_move(tour);
      if (move.improving()) {
        apply_move(instance_, tour, move);
        ++local.moves;
        ++local.large_moves;
        improved = true;
      }
    }
  }
  if (stats != nullptr) {
    *stats = local;
  }
  return tour;
}

Tour local_search(const Instance& instance,
                  Tour tour,
                  const SearchParams& params,
                  bool use_large,
                  Rng& rng) {
  LocalSearch search(instance, params);
  return search.run(std::move(tour), use_large, rng);
}

} // namespace pdtsp
