#include "pdtsp/neighborhoods.h"

#include <algorithm>
#include <bit>

namespace pdtsp {

namespace {

// A state after placing `layer` visits: every incumbent position below
// `first_open` is placed, plus the positions first_open + o + 1 for each bit
// o of `ahead`. `last` is the incumbent position placed most recently.
struct State {
  std::uint32_t ahead = 0;
  Index last = 0;
  Cost cost = INFINITE_COST;
  int parent = -1;
  bool pruned = false;
};

class Layers {
public:
  Layers(const Instance& instance, const Tour& tour, int window)
    : instance_(instance),
      seq_(tour.seq),
      pos_(tour.pos),
      window_(window),
      length_(static_cast<Index>(tour.seq.size()) - 2),
      slots_((std::size_t{1} << (window - 1)) * 2 * window) {
    index_.assign(slots_, -1);
  }

  // Builds all layers. Pruned children are recorded only when requested.
  void build(bool keep_pruned) {
    layers_.assign(length_ + 1, {});
    layers_[0].push_back({0, 0, 0, -1, false});
    for (Index t = 0; t < length_; ++t) {
      auto& next = layers_[t + 1];
      touched_.clear();
      for (int s = 0; s < static_cast<int>(layers_[t].size()); ++s) {
        const State state = layers_[t][s];
        if (state.pruned) {
          continue;
        }
        const Index open = first_open(t, state.ahead);
        const Visit from = seq_[state.last];
        for (int off = 0; off < window_; ++off) {
          const Index b = open + off;
          if (b > length_) {
            break;
          }
          if (off > 0 && (state.ahead >> (off - 1) & 1U)) {
            continue;
          }
          const bool violates = !pickup_placed(seq_[b], open, state.ahead);
          if (violates && !keep_pruned) {
            continue;
          }
          std::uint32_t ahead = 0;
          Index new_open = open;
          if (off == 0) {
            const std::uint32_t placed = (state.ahead << 1) | 1U;
            const int run = std::countr_one(placed);
            new_open = open + run;
            ahead = (placed >> run) >> 1;
          } else {
            ahead = state.ahead | (1U << (off - 1));
          }
          const Cost cost = state.cost + instance_.dist(from, seq_[b]);
          const auto key = slot(ahead, b - new_open);
          int& at = index_[key];
          if (at < 0) {
            at = static_cast<int>(next.size());
            touched_.push_back(key);
            next.push_back({ahead, b, cost, s, violates});
          } else if (!violates && cost < next[at].cost) {
            next[at].cost = cost;
            next[at].parent = s;
          }
        }
      }
      for (const auto key : touched_) {
        index_[key] = -1;
      }
    }
  }

  Index first_open(Index layer, std::uint32_t ahead) const {
    return layer + 1 - std::popcount(ahead);
  }

  const std::vector<std::vector<State>>& layers() const {
    return layers_;
  }

  Index length() const {
    return length_;
  }

private:
  std::size_t slot(std::uint32_t ahead, Index offset) const {
    return static_cast<std::size_t>(ahead) * 2 * window_ + (offset + window_);
  }

  bool pickup_placed(Visit v, Index open, std::uint32_t ahead) const {
    if (!instance_.is_delivery(v)) {
      return true;
    }
    const Index q = pos_[instance_.partner(v)];
    if (q < open) {
      return true;
    }
    const Index off = q - open;
    return off > 0 && off < window_ && (ahead >> (off - 1) & 1U);
  }

  const Instance& instance_;
  const std::vector<Visit>& seq_;
  const std::vector<Index>& pos_;
  int window_;
  Index length_;
  std::size_t slots_;
  std::vector<int> index_;
  std::vector<std::size_t> touched_;
  std::vector<std::vector<State>> layers_;
};

void check_window(int window) {
  if (window < 1 || window > MAX_BS_WINDOW) {
    throw Exception("Balas-Simonetti window must be in 1.." +
                    std::to_string(MAX_BS_WINDOW));
  }
}

} // namespace

BsResult bs_search(const Instance& instance, const Tour& tour, int window) {
  check_window(window);
  BsResult result{tour, 1};
  if (window == 1) {
    return result;
  }
  Layers graph(instance, tour, window);
  graph.build(false);
  const auto& layers = graph.layers();
  for (const auto& layer : layers) {
    result.max_layer_width = std::max(result.max_layer_width, layer.size());
  }

  const auto& last_layer = layers.back();
  const Visit terminal = instance.terminal();
  int best = -1;
  Cost best_cost = INFINITE_COST;
  for (int s = 0; s < static_cast<int>(last_layer.size()); ++s) {
    const auto& state = last_layer[s];
    const Cost cost =
      state.cost + instance.dist(tour.seq[state.last], terminal);
    if (cost < best_cost) {
      best_cost = cost;
      best = s;
    }
  }

  std::vector<Visit> seq(tour.seq.size());
  seq.front() = 0;
  seq.back() = terminal;
  for (Index t = graph.length(); t >= 1; --t) {
    const auto& state = layers[t][best];
    seq[t] = tour.seq[state.last];
    best = state.parent;
  }
  result.tour.seq = std::move(seq);
  result.tour.refresh(instance);
  return result;
}

MoveDelta bs_move(const Instance& instance, const Tour& tour, int window) {
  auto result = bs_search(instance, tour, window);
  MoveDelta move;
  move.kind = MoveKind::balas_simonetti;
  move.delta = result.tour.cost - tour.cost;
  move.feasible = true;
  move.sequence = std::move(result.tour.seq);
  return move;
}

BsGraph build_bs_graph(const Instance& instance, const Tour& tour, int window) {
  check_window(window);
  BsGraph out;
  out.window = window;
  Layers graph(instance, tour, window);
  graph.build(true);
  const auto& layers = graph.layers();
  const Index length = graph.length();
  out.layers.resize(length + 2);
  out.layers[0].push_back({0, 0, {}, {}, {}, false, 0});
  for (Index t = 1; t <= length; ++t) {
    for (const auto& state : layers[t]) {
      BsNode node;
      node.layer = t;
      node.visit = tour.seq[state.last];
      node.pruned = state.pruned;
      node.cost = state.pruned ? INFINITE_COST : state.cost;
      const Index open = graph.first_open(t, state.ahead);
      for (Index q = 1; q < open; ++q) {
        node.placed.push_back(q);
      }
      for (int o = 0; o + 1 < window; ++o) {
        if (state.ahead >> o & 1U) {
          node.placed.push_back(open + o + 1);
        }
      }
      for (const Index q : node.placed) {
        if (q >= t) {
          node.anticipated.push_back(tour.seq[q]);
        }
      }
      for (Index q = 1; q < t; ++q) {
        const bool placed_before =
          std::binary_search(node.placed.begin(), node.placed.end(), q) &&
          q != state.last;
        if (!placed_before) {
          node.delayed.push_back(tour.seq[q]);
        }
      }
      out.layers[t].push_back(std::move(node));
    }
  }
  BsNode sink;
  sink.layer = length + 1;
  sink.visit = 0;
  for (Index q = 1; q <= length; ++q) {
    sink.placed.push_back(q);
  }
  Cost best = INFINITE_COST;
  for (const auto& state : layers[length]) {
    if (!state.pruned) {
      best = std::min(best,
                      state.cost + instance.dist(tour.seq[state.last],
                                                 instance.terminal()));
    }
  }
  sink.cost = best;
  out.layers[length + 1].push_back(std::move(sink));
  return out;
}

} // namespace pdtsp
