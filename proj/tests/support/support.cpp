#include "support.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pdtsp::test {

Instance random_instance(std::size_t n_pairs,
                         Rng& rng,
                         TourMode mode,
                         Rounding rounding,
                         int extent) {
  const auto coords = random_coordinates(2 * n_pairs + 1, rng, extent);
  return generate_pairs(coords, PairGroup::C, rng, "random", mode, rounding);
}

namespace {

Tour random_order(const Instance& instance, Rng& rng, bool precedence) {
  const auto visits = static_cast<Visit>(2 * instance.n_pairs());
  std::vector<bool> placed(instance.sequence_length(), false);
  std::vector<Visit> seq{0};
  for (Visit step = 0; step < visits; ++step) {
    std::vector<Visit> open;
    for (Visit v = 1; v <= visits; ++v) {
      if (!placed[v] && (!precedence || !instance.is_delivery(v) ||
                         placed[instance.partner(v)])) {
        open.push_back(v);
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const Visit v = open[pick(rng)];
    placed[v] = true;
    seq.push_back(v);
  }
  seq.push_back(instance.terminal());
  return make_tour(instance, seq);
}

} // namespace

Tour random_feasible_tour(const Instance& instance, Rng& rng) {
  return random_order(instance, rng, true);
}

Tour random_permutation_tour(const Instance& instance, Rng& rng) {
  return random_order(instance, rng, false);
}

ExactResult exact_optimum(const Instance& instance) {
  const auto n = static_cast<int>(instance.n_pairs());
  const int visits = 2 * n;
  std::vector<std::size_t> power(n + 1, 1);
  for (int k = 1; k <= n; ++k) {
    power[k] = power[k - 1] * 3;
  }
  const std::size_t states = power[n];
  std::vector<Cost> dp(states * (visits + 1), INFINITE_COST);
  std::vector<int> parent(states * (visits + 1), -1);
  auto at = [&](std::size_t s, int last) { return s * (visits + 1) + last; };

  // Request r (0-based) has pickup r+1 and delivery partner(r+1).
  std::vector<int> request_of(instance.sequence_length(), -1);
  for (int r = 0; r < n; ++r) {
    request_of[r + 1] = r;
    request_of[instance.partner(r + 1)] = r;
  }
  dp[at(0, 0)] = 0;
  for (std::size_t s = 0; s < states; ++s) {
    for (int last = 0; last <= visits; ++last) {
      const Cost base = dp[at(s, last)];
      if (base == INFINITE_COST) {
        continue;
      }
      for (int r = 0; r < n; ++r) {
        const std::size_t digit = s / power[r] % 3;
        if (digit == 2) {
          continue;
        }
        const Visit v = digit == 0 ? r + 1 : instance.partner(r + 1);
        const std::size_t next = s + power[r];
        const Cost value = base + instance.dist(last, v);
        if (value < dp[at(next, v)]) {
          dp[at(next, v)] = value;
          parent[at(next, v)] = last;
        }
      }
    }
  }
  ExactResult out;
  const std::size_t full = states - 1;
  int best_last = -1;
  for (int last = 1; last <= visits; ++last) {
    const Cost value =
      dp[at(full, last)] + instance.dist(last, instance.terminal());
    if (value < out.cost) {
      out.cost = value;
      best_last = last;
    }
  }
  std::vector<Visit> rev{instance.terminal()};
  std::size_t s = full;
  int last = best_last;
  while (last != 0) {
    rev.push_back(last);
    const int prev = parent[at(s, last)];
    s -= power[request_of[last]];
    last = prev;
  }
  rev.push_back(0);
  out.seq.assign(rev.rbegin(), rev.rend());
  return out;
}

Instance circle_instance(std::size_t n_pairs, Rng& rng, double radius) {
  const std::size_t visits = 2 * n_pairs;
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  std::vector<double> angles;
  for (std::size_t k = 0; k < visits; ++k) {
    angles.push_back(2 * std::numbers::pi * unit(rng));
  }
  std::sort(angles.begin(), angles.end());

  // Random precedence-feasible labelling of the circle positions.
  Coordinates coords;
  coords.points.resize(visits + 1);
  coords.points[0] = {radius, 0};
  std::vector<Visit> open;
  Visit next_pickup = 1;
  for (std::size_t k = 0; k < visits; ++k) {
    const std::size_t remaining_pickups = n_pairs - (next_pickup - 1);
    const std::size_t top =
      remaining_pickups > 0 ? open.size() : open.size() - 1;
    std::uniform_int_distribution<std::size_t> pick(0, top);
    const std::size_t choice = pick(rng);
    Visit v = 0;
    if (choice == open.size()) {
      v = next_pickup++;
      open.push_back(v + static_cast<Visit>(n_pairs));
    } else {
      v = open[choice];
      open.erase(open.begin() + choice);
    }
    coords.points[v] = {radius * std::cos(angles[k]),
                        radius * std::sin(angles[k])};
  }
  Pairing pairing;
  for (Visit x = 1; x <= static_cast<Visit>(n_pairs); ++x) {
    pairing.emplace_back(x, x + static_cast<Visit>(n_pairs));
  }
  return Instance::from_coordinates(
    "circle", coords, pairing, TourMode::closed, Rounding::none);
}

} // namespace pdtsp::test
