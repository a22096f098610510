#include "pdtsp/oracle.h"

#include <algorithm>
#include <numeric>

namespace pdtsp {

std::uint64_t feasible_sequence_count(std::size_t n_pairs) {
  std::uint64_t count = 1;
  for (std::size_t k = 1; k <= 2 * n_pairs; ++k) {
    count *= k;
    if (k % 2 == 0) {
      count /= 2;
    }
  }
  return count;
}

namespace {

class BranchAndPrune {
public:
  BranchAndPrune(const Instance& instance, bool bound_pruning)
    : instance_(instance),
      bound_pruning_(bound_pruning),
      visits_(static_cast<Visit>(2 * instance.n_pairs())),
      placed_(instance.sequence_length(), false),
      min_in_(instance.sequence_length(), 0) {
    const Visit terminal = instance.terminal();
    for (Visit v = 1; v <= terminal; ++v) {
      Cost best = INFINITE_COST;
      for (Visit u = 0; u <= visits_; ++u) {
        if (u != v && !(v == terminal && u == 0)) {
          best = std::min(best, instance.dist(u, v));
        }
      }
      min_in_[v] = best;
      rest_ += best;
    }
    factorial_.assign(visits_ + 1, 1);
    for (Visit k = 1; k <= visits_; ++k) {
      factorial_[k] = factorial_[k - 1] * static_cast<std::uint64_t>(k);
    }
    seq_.assign(instance.sequence_length(), 0);
    seq_.back() = terminal;
    untouched_ = instance.n_pairs();
  }

  OracleResult solve() {
    extend(1, 0);
    OracleResult out;
    out.cost = best_cost_;
    out.tour.seq = best_seq_;
    out.tour.refresh(instance_);
    out.leaves = leaves_;
    out.covered = covered_;
    return out;
  }

private:
  void extend(Visit depth, Cost partial) {
    const Visit last = seq_[depth - 1];
    if (depth > visits_) {
      const Cost total = partial + instance_.dist(last, instance_.terminal());
      ++leaves_;
      ++covered_;
      if (total < best_cost_) {
        best_cost_ = total;
        best_seq_ = seq_;
      }
      return;
    }
    if (bound_pruning_ && partial + rest_ >= best_cost_) {
      const Visit remaining = visits_ - depth + 1;
      covered_ += factorial_[remaining] >> untouched_;
      return;
    }
    std::vector<Visit> next;
    for (Visit v = 1; v <= visits_; ++v) {
      if (!placed_[v] &&
          (!instance_.is_delivery(v) || placed_[instance_.partner(v)])) {
        next.push_back(v);
      }
    }
    if (bound_pruning_) {
      std::stable_sort(next.begin(), next.end(), [&](Visit a, Visit b) {
        return instance_.dist(last, a) < instance_.dist(last, b);
      });
    }
    for (const Visit v : next) {
      placed_[v] = true;
      rest_ -= min_in_[v];
      const bool opens = instance_.is_pickup(v);
      untouched_ -= opens ? 1 : 0;
      seq_[depth] = v;
      extend(depth + 1, partial + instance_.dist(last, v));
      untouched_ += opens ? 1 : 0;
      rest_ += min_in_[v];
      placed_[v] = false;
    }
  }

  const Instance& instance_;
  bool bound_pruning_;
  Visit visits_;
  std::vector<bool> placed_;
  std::vector<Cost> min_in_;
  std::vector<std::uint64_t> factorial_;
  std::vector<Visit> seq_;
  std::vector<Visit> best_seq_;
  Cost best_cost_ = INFINITE_COST;
  Cost rest_ = 0;
  std::size_t untouched_ = 0;
  std::uint64_t leaves_ = 0;
  std::uint64_t covered_ = 0;
};

} // namespace

OracleResult brute_force_optimal(const Instance& instance, bool bound_pruning) {
  if (instance.n_pairs() > MAX_ORACLE_PAIRS) {
    throw InputError("brute force is limited to " +
                     std::to_string(MAX_ORACLE_PAIRS) + " requests, got " +
                     std::to_string(instance.n_pairs()));
  }
  return BranchAndPrune(instance, bound_pruning).solve();
}

namespace {

struct Scan {
  const Instance& instance;
  const Tour& tour;
  MoveDelta best;

  // Splices the move into a copy of the tour and keeps it if feasible and
  // strictly cheaper than the best so far.
  bool consider(MoveDelta move) {
    std::vector<Visit> seq = tour.seq;
    splice_move(seq, move);
    if (!check_precedence(instance, seq)) {
      return false;
    }
    move.delta = tour_cost(instance, seq) - tour.cost;
    move.feasible = true;
    if (move.delta < best.delta) {
      best = std::move(move);
    }
    return true;
  }
};

MoveDelta make_move(MoveKind kind, std::array<Index, 4> indices) {
  MoveDelta move;
  move.kind = kind;
  move.indices = indices;
  return move;
}

MoveDelta relocate_oracle(const Instance& instance,
                          const Tour& tour,
                          Visit x) {
  if (!instance.is_pickup(x)) {
    throw InputError("relocate oracle needs a pickup");
  }
  Scan scan{instance, tour, {}};
  const Visit d = instance.partner(x);
  const auto slots = static_cast<Index>(tour.size()) - 3;
  for (Index ip = 0; ip < slots; ++ip) {
    for (Index jp = ip; jp < slots; ++jp) {
      scan.consider(make_move(MoveKind::relocate_pair, {x, ip, jp, d}));
    }
  }
  return scan.best;
}

MoveDelta two_opt_oracle(const Instance& instance,
                         const Tour& tour,
                         Index i) {
  Scan scan{instance, tour, {}};
  const auto end = static_cast<Index>(tour.size()) - 1;
  for (Index j = i + 3; i >= 0 && j <= end; ++j) {
    scan.consider(make_move(MoveKind::two_opt, {i, j, -1, -1}));
  }
  return scan.best;
}

MoveDelta or_opt_oracle(const Instance& instance,
                        const Tour& tour,
                        Index first,
                        int k_or) {
  Scan scan{instance, tour, {}};
  const auto end = static_cast<Index>(tour.size()) - 1;
  if (first < 1 || first >= end) {
    return scan.best;
  }
  for (Index last = first; last < end && last - first < k_or; ++last) {
    auto both = [&](Index after) {
      for (const bool reversed : {false, true}) {
        auto move = make_move(MoveKind::or_opt, {first, last, after, -1});
        move.reversed = reversed;
        scan.consider(std::move(move));
      }
    };
    for (Index after = first - 2; after >= 0; --after) {
      both(after);
    }
    for (Index after = last + 1; after < end; ++after) {
      both(after);
    }
  }
  return scan.best;
}

void nested_chains(Scan& scan,
                   std::vector<std::pair<Index, Index>>& chain,
                   Index lo,
                   Index hi) {
  for (Index i = lo; i <= hi; ++i) {
    for (Index j = i + 2; j <= hi; ++j) {
      chain.emplace_back(i, j);
      MoveDelta move;
      move.kind = MoveKind::two_k_opt;
      move.chain = chain;
      scan.consider(std::move(move));
      nested_chains(scan, chain, i + 1, j - 1);
      chain.pop_back();
    }
  }
}

MoveDelta two_k_opt_oracle(const Instance& instance, const Tour& tour) {
  MoveDelta none;
  none.kind = MoveKind::two_k_opt;
  none.delta = 0;
  none.feasible = true;
  Scan scan{instance, tour, none};
  std::vector<std::pair<Index, Index>> chain;
  nested_chains(scan, chain, 0, static_cast<Index>(tour.size()) - 1);
  return scan.best;
}

MoveDelta four_opt_oracle(const Instance& instance, const Tour& tour) {
  MoveDelta best;
  const auto size = static_cast<Index>(tour.size());
  const MoveKind kinds[3] = {MoveKind::four_opt_type1,
                             MoveKind::four_opt_type2a,
                             MoveKind::four_opt_type2b};
  for (Index i2 = 1; i2 + 2 <= size - 2; ++i2) {
    for (Index j2 = i2 + 2; j2 <= size - 2; ++j2) {
      for (const MoveKind kind : kinds) {
        // Cheapest move of this type ignoring precedence.
        MoveDelta cheapest;
        std::vector<Visit> cheapest_seq;
        for (Index j1 = i2 + 1; j1 < j2; ++j1) {
          for (Index i1 = 0; i1 < i2; ++i1) {
            MoveDelta move = make_move(kind, {i1, i2, j1, j2});
            std::vector<Visit> seq = tour.seq;
            splice_move(seq, move);
            move.delta = tour_cost(instance, seq) - tour.cost;
            if (move.delta < cheapest.delta) {
              cheapest = std::move(move);
              cheapest_seq = std::move(seq);
            }
          }
        }
        if (improves(cheapest.delta) && cheapest.delta < best.delta &&
            check_precedence(instance, cheapest_seq)) {
          best = std::move(cheapest);
          best.feasible = true;
        }
      }
    }
  }
  return best;
}

MoveDelta bs_oracle(const Instance& instance, const Tour& tour, int window) {
  MoveDelta best;
  for (auto& seq : bs_neighborhood(instance, tour, window)) {
    const Cost delta = tour_cost(instance, seq) - tour.cost;
    if (delta < best.delta) {
      best.kind = MoveKind::balas_simonetti;
      best.delta = delta;
      best.feasible = true;
      best.sequence = std::move(seq);
    }
  }
  return best;
}

} // namespace

std::vector<std::vector<Visit>> bs_neighborhood(const Instance& instance,
                                                const Tour& tour,
                                                int window) {
  if (instance.n_pairs() > 5) {
    throw InputError("window enumeration is limited to 5 requests");
  }
  const auto length = static_cast<Index>(tour.size()) - 2;
  std::vector<Index> order(length);
  std::iota(order.begin(), order.end(), 1);
  std::vector<Index> rank(length + 1);
  std::vector<std::vector<Visit>> out;
  do {
    for (Index k = 0; k < length; ++k) {
      rank[order[k]] = k;
    }
    bool ok = true;
    for (Index a = 1; a <= length && ok; ++a) {
      for (Index b = a + window; b <= length && ok; ++b) {
        ok = rank[a] < rank[b];
      }
    }
    if (!ok) {
      continue;
    }
    std::vector<Visit> seq{0};
    for (const Index q : order) {
      seq.push_back(tour.seq[q]);
    }
    seq.push_back(instance.terminal());
    if (check_precedence(instance, seq)) {
      out.push_back(std::move(seq));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

MoveDelta enumerate_neighborhood_oracle(const Instance& instance,
                                        const Tour& tour,
                                        const NeighborhoodQuery& query) {
  if (instance.n_visits() > MAX_NEIGHBORHOOD_ORACLE_VISITS) {
    throw InputError("neighborhood oracle is limited to " +
                     std::to_string(MAX_NEIGHBORHOOD_ORACLE_VISITS) +
                     " visits");
  }
  switch (query.kind) {
  case MoveKind::relocate_pair:
    return relocate_oracle(instance, tour, query.pickup);
  case MoveKind::two_opt:
    return two_opt_oracle(instance, tour, query.anchor);
  case MoveKind::or_opt:
    return or_opt_oracle(instance, tour, query.anchor, query.k_or);
  case MoveKind::two_k_opt:
    return two_k_opt_oracle(instance, tour);
  case MoveKind::four_opt_type1:
  case MoveKind::four_opt_type2a:
  case MoveKind::four_opt_type2b:
    return four_opt_oracle(instance, tour);
  case MoveKind::balas_simonetti:
    return bs_oracle(instance, tour, query.k_bs);
  case MoveKind::none:
    break;
  }
  throw InputError("no oracle for move kind none");
}

} // namespace pdtsp
