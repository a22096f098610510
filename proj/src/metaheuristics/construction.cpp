#include "pdtsp/metaheuristics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdtsp {

void insert_requests(const Instance& instance,
                     std::vector<Visit>& route,
                     std::span<const Visit> pickups,
                     bool naive) {
  for (const Visit x : pickups) {
    const Visit d = instance.partner(x);
    const Insertion ins = naive ? best_insertion_naive(instance, route, x, d)
                                : best_insertion(instance, route, x, d);
    route.insert(route.begin() + ins.after_delivery + 1, d);
    route.insert(route.begin() + ins.after_pickup + 1, x);
  }
}

Tour greedy_construct(const Instance& instance, Rng& rng, bool naive) {
  std::vector<Visit> pickups(instance.n_pairs());
  std::iota(pickups.begin(), pickups.end(), 1);
  std::shuffle(pickups.begin(), pickups.end(), rng);
  std::vector<Visit> route{0, instance.terminal()};
  route.reserve(instance.sequence_length());
  insert_requests(instance, route, pickups, naive);
  Tour tour;
  tour.seq = std::move(route);
  tour.refresh(instance);
  return tour;
}

DestroyOperator parse_destroy_operator(std::string_view text) {
  if (text == "random") {
    return DestroyOperator::random;
  }
  if (text == "worst") {
    return DestroyOperator::worst;
  }
  if (text == "block") {
    return DestroyOperator::block;
  }
  throw InputError("unknown destroy operator '" + std::string(text) + "'");
}

std::string_view to_string(DestroyOperator op) {
  switch (op) {
  case DestroyOperator::random:
    return "random";
  case DestroyOperator::worst:
    return "worst";
  case DestroyOperator::block:
    return "block";
  }
  return "?";
}

namespace {

void erase_requests(const Instance& instance,
                    std::vector<Visit>& route,
                    std::span<const Visit> pickups) {
  std::vector<bool> gone(instance.sequence_length(), false);
  for (const Visit x : pickups) {
    gone[x] = true;
    gone[instance.partner(x)] = true;
  }
  std::erase_if(route, [&](Visit v) { return gone[v]; });
}

std::vector<Index> positions(const Instance& instance,
                             std::span<const Visit> route) {
  std::vector<Index> pos(instance.sequence_length(), -1);
  for (Index k = 0; k < static_cast<Index>(route.size()); ++k) {
    pos[route[k]] = k;
  }
  return pos;
}

std::vector<Visit> pickups_in(const Instance& instance,
                              std::span<const Visit> route) {
  std::vector<Visit> out;
  for (const Visit v : route) {
    if (instance.is_pickup(v)) {
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

Destroyed destroy(const Instance& instance,
                  const Tour& tour,
                  DestroyOperator op,
                  std::size_t q,
                  Rng& rng) {
  const std::size_t n = instance.n_pairs();
  if (q < 1 || q > n) {
    throw InputError("removal count must be in 1.." + std::to_string(n));
  }
  Destroyed out;
  out.route = tour.seq;

  switch (op) {
  case DestroyOperator::random: {
    std::vector<Visit> pickups(n);
    std::iota(pickups.begin(), pickups.end(), 1);
    std::shuffle(pickups.begin(), pickups.end(), rng);
    pickups.resize(q);
    out.removed = pickups;
    erase_requests(instance, out.route, out.removed);
    break;
  }
  case DestroyOperator::worst: {
    std::uniform_real_distribution<double> unit(0, 1);
    while (out.removed.size() < q) {
      const auto pos = positions(instance, out.route);
      auto pickups = pickups_in(instance, out.route);
      std::vector<std::pair<Cost, Visit>> gains;
      for (const Visit x : pickups) {
        const Index a = pos[x];
        const Index b = pos[instance.partner(x)];
        gains.emplace_back(
          -removal_delta(instance, out.route, std::min(a, b), std::max(a, b)),
          x);
      }
      std::stable_sort(gains.begin(), gains.end(), [](auto& l, auto& r) {
        return l.first > r.first;
      });
      const double u = unit(rng);
      auto k = static_cast<std::size_t>(
        static_cast<double>(gains.size()) *
        std::pow(u, WORST_REMOVAL_EXPONENT));
      k = std::min(k, gains.size() - 1);
      const Visit x = gains[k].second;
      out.removed.push_back(x);
      erase_requests(instance, out.route, std::span<const Visit>(&x, 1));
    }
    break;
  }
  case DestroyOperator::block: {
    while (out.removed.size() < q) {
      const auto pos = positions(instance, out.route);
      const auto pickups = pickups_in(instance, out.route);
      std::uniform_int_distribution<std::size_t> pick(0, pickups.size() - 1);
      const Visit x = pickups[pick(rng)];
      std::vector<Visit> block{x};
      for (Index k = pos[x] + 1; k < pos[instance.partner(x)]; ++k) {
        const Visit v = out.route[k];
        const Visit p = instance.is_pickup(v) ? v : instance.partner(v);
        if (std::find(block.begin(), block.end(), p) == block.end()) {
          block.push_back(p);
        }
      }
      block.resize(std::min(block.size(), q - out.removed.size()));
      out.removed.insert(out.removed.end(), block.begin(), block.end());
      erase_requests(instance, out.route, block);
    }
    break;
  }
  }
  return out;
}

std::pair<std::size_t, std::size_t> removal_bounds(std::size_t n_pairs) {
  const double n = static_cast<double>(n_pairs);
  const auto lo = std::max<std::size_t>(
    1, static_cast<std::size_t>(std::floor(std::min(30.0, 0.20 * n))));
  auto hi = static_cast<std::size_t>(std::floor(std::min(50.0, 0.55 * n)));
  hi = std::max(lo, std::min(hi, n_pairs));
  return {std::min(lo, n_pairs), hi};
}

} // namespace pdtsp
