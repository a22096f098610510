#include "pdtsp/neighborhoods.h"

#include <algorithm>

namespace pdtsp {

namespace {

// Detour for inserting v between a and b.
inline Cost single_slot(const Instance& instance, Visit a, Visit b, Visit v) {
  return instance.dist(a, v) + instance.dist(v, b) - instance.dist(a, b);
}

// Detour for inserting p then d between a and b.
inline Cost double_slot(const Instance& instance,
                        Visit a,
                        Visit b,
                        Visit p,
                        Visit d) {
  return instance.dist(a, p) + instance.dist(p, d) + instance.dist(d, b) -
         instance.dist(a, b);
}

MoveDelta relocate_with(const Instance& instance,
                        const Tour& tour,
                        Visit x,
                        Workspace& ws,
                        bool naive) {
  const Visit d = instance.partner(x);
  const Index a = std::min(tour.pos[x], tour.pos[d]);
  const Index b = std::max(tour.pos[x], tour.pos[d]);

  ws.route.clear();
  for (const Visit v : tour.seq) {
    if (v != x && v != d) {
      ws.route.push_back(v);
    }
  }
  const Insertion ins =
    naive ? best_insertion_naive(instance, ws.route, x, d)
          : best_insertion(instance, ws.route, x, d);

  MoveDelta move;
  move.kind = MoveKind::relocate_pair;
  move.indices = {x, ins.after_pickup, ins.after_delivery, d};
  move.delta = removal_delta(instance, tour.seq, a, b) + ins.delta;
  move.feasible = true;
  return move;
}

} // namespace

Insertion best_insertion(const Instance& instance,
                         std::span<const Visit> route,
                         Visit pickup,
                         Visit delivery) {
  Insertion best;
  const auto last_gap = static_cast<Index>(route.size()) - 2;
  // Running minimum of the delivery detour over slots strictly after the
  // current pickup slot; smaller slots win ties.
  Cost delivery_min = INFINITE_COST;
  Index delivery_arg = -1;
  for (Index i = last_gap; i >= 0; --i) {
    if (i + 1 <= last_gap) {
      const Cost b =
        single_slot(instance, route[i + 1], route[i + 2], delivery);
      if (b <= delivery_min) {
        delivery_min = b;
        delivery_arg = i + 1;
      }
    }
    Cost value = double_slot(instance, route[i], route[i + 1], pickup, delivery);
    Index after_delivery = i;
    if (delivery_arg >= 0) {
      const Cost split =
        single_slot(instance, route[i], route[i + 1], pickup) + delivery_min;
      if (split < value) {
        value = split;
        after_delivery = delivery_arg;
      }
    }
    if (value <= best.delta) {
      best = {i, after_delivery, value};
    }
  }
  return best;
}

Insertion best_insertion_naive(const Instance& instance,
                               std::span<const Visit> route,
                               Visit pickup,
                               Visit delivery) {
  Insertion best;
  const auto last_gap = static_cast<Index>(route.size()) - 2;
  for (Index i = 0; i <= last_gap; ++i) {
    const Cost together =
      double_slot(instance, route[i], route[i + 1], pickup, delivery);
    if (together < best.delta) {
      best = {i, i, together};
    }
    const Cost a = single_slot(instance, route[i], route[i + 1], pickup);
    for (Index j = i + 1; j <= last_gap; ++j) {
      const Cost value =
        a + single_slot(instance, route[j], route[j + 1], delivery);
      if (value < best.delta) {
        best = {i, j, value};
      }
    }
  }
  return best;
}

Cost removal_delta(const Instance& instance,
                   std::span<const Visit> s,
                   Index a,
                   Index b) {
  const auto c = [&](Index u, Index v) { return instance.dist(s[u], s[v]); };
  if (b == a + 1) {
    return c(a - 1, b + 1) - c(a - 1, a) - c(a, b) - c(b, b + 1);
  }
  return c(a - 1, a + 1) - c(a - 1, a) - c(a, a + 1) + c(b - 1, b + 1) -
         c(b - 1, b) - c(b, b + 1);
}

MoveDelta relocate_pair_best(const Instance& instance,
                             const Tour& tour,
                             Visit x,
                             Workspace& ws) {
  return relocate_with(instance, tour, x, ws, false);
}

MoveDelta relocate_pair_best(const Instance& instance,
                             const Tour& tour,
                             Visit x) {
  Workspace ws;
  return relocate_with(instance, tour, x, ws, false);
}

MoveDelta relocate_pair_best_naive(const Instance& instance,
                                   const Tour& tour,
                                   Visit x,
                                   Workspace& ws) {
  return relocate_with(instance, tour, x, ws, true);
}

} // namespace pdtsp
