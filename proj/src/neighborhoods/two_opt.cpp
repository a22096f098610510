#include "pdtsp/neighborhoods.h"

namespace pdtsp {

Cost two_opt_delta(const Instance& instance,
                   std::span<const Visit> s,
                   Index i,
                   Index j) {
  return instance.dist(s[i], s[j - 1]) + instance.dist(s[i + 1], s[j]) -
         instance.dist(s[i], s[i + 1]) - instance.dist(s[j - 1], s[j]);
}

MoveDelta two_opt_scan(const Instance& instance,
                       const Tour& tour,
                       Index anchor) {
  MoveDelta best;
  const auto& s = tour.seq;
  const auto end = static_cast<Index>(s.size()) - 1;
  const Index i = anchor;
  if (i < 0) {
    return best;
  }
  for (Index j = i + 3; j <= end; ++j) {
    // Block i+1..j-1 just gained s[j-1]; once it holds a whole request every
    // longer block does too.
    const Visit added = s[j - 1];
    if (instance.is_delivery(added) &&
        tour.pos[instance.partner(added)] > i) {
      break;
    }
    const Cost delta = two_opt_delta(instance, s, i, j);
    if (delta < best.delta) {
      best.kind = MoveKind::two_opt;
      best.indices = {i, j, -1, -1};
      best.delta = delta;
      best.feasible = true;
    }
  }
  return best;
}

MoveDelta or_opt_scan(const Instance& instance,
                      const Tour& tour,
                      Index anchor,
                      int max_length) {
  MoveDelta best;
  const auto& s = tour.seq;
  const auto& pos = tour.pos;
  const auto end = static_cast<Index>(s.size()) - 1;
  const Index first = anchor;
  if (first < 1 || first >= end) {
    return best;
  }
  const auto c = [&](Index u, Index v) { return instance.dist(s[u], s[v]); };
  auto consider = [&](Cost delta, Index last, Index after, bool reversed) {
    if (delta < best.delta) {
      best.kind = MoveKind::or_opt;
      best.indices = {first, last, after, -1};
      best.delta = delta;
      best.reversed = reversed;
      best.feasible = true;
    }
  };

  bool reversible = true;
  for (Index last = first; last < end && last - first < max_length; ++last) {
    const Visit added = s[last];
    if (instance.is_delivery(added) && pos[instance.partner(added)] >= first) {
      reversible = false;
    }
    const Cost removal = c(first - 1, last + 1) - c(first - 1, first) -
                         c(last, last + 1);
    auto insert = [&](Index after) {
      const Cost edge = c(after, after + 1);
      consider(removal + c(after, first) + c(last, after + 1) - edge,
               last,
               after,
               false);
      if (reversible) {
        consider(removal + c(after, last) + c(first, after + 1) - edge,
                 last,
                 after,
                 true);
      }
    };

    // Earlier slots: visits after..first-1 end up behind the block.
    for (Index after = first - 2; after >= 0; --after) {
      const Visit passed = s[after + 1];
      if (instance.is_pickup(passed)) {
        const Index d = pos[instance.partner(passed)];
        if (d >= first && d <= last) {
          break;
        }
      }
      insert(after);
    }
    // Later slots: visits last+1..after end up in front of the block.
    for (Index after = last + 1; after < end; ++after) {
      const Visit passed = s[after];
      if (instance.is_delivery(passed)) {
        const Index p = pos[instance.partner(passed)];
        if (p >= first && p <= last) {
          break;
        }
      }
      insert(after);
    }
  }
  return best;
}

} // namespace pdtsp
