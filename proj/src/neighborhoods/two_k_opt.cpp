#include "pdtsp/neighborhoods.h"

namespace pdtsp {

namespace {

enum Choice : std::uint8_t { stop = 0, skip_first = 1, skip_last = 2, reverse = 3 };

// Fills F (forward blocks) and R (reversed blocks) by increasing block
// length. Entry (i, j) lives at i * size + j.
void fill_tables(const Instance& instance, const Tour& tour, Workspace& ws) {
  const auto& s = tour.seq;
  const auto& pos = tour.pos;
  const auto size = s.size();
  const auto n = static_cast<Index>(size);
  ws.forward.assign(size * size, 0);
  ws.reversed.assign(size * size, 0);
  ws.forward_choice.assign(size * size, stop);
  ws.reversed_choice.assign(size * size, stop);
  auto at = [size](Index i, Index j) {
    return static_cast<std::size_t>(i) * size + j;
  };

  for (Index len = 1; len < n; ++len) {
    for (Index i = 0; i + len < n; ++i) {
      const Index j = i + len;
      const auto ij = at(i, j);

      // Forward block.
      if (len >= 2) {
        Cost value = ws.forward[at(i + 1, j)];
        std::uint8_t choice = skip_first;
        if (ws.forward[at(i, j - 1)] < value) {
          value = ws.forward[at(i, j - 1)];
          choice = skip_last;
        }
        const Cost nested =
          two_opt_delta(instance, s, i, j) + ws.reversed[at(i + 1, j - 1)];
        if (nested < value) {
          value = nested;
          choice = reverse;
        }
        ws.forward[ij] = value;
        ws.forward_choice[ij] = choice;
      }

      // Reversed block: s[j] comes first and s[i] last whatever happens
      // inside, so a request split across them is infeasible.
      const Visit head = s[i];
      const Visit tail = s[j];
      const bool broken =
        (instance.is_pickup(head) && pos[instance.partner(head)] > i &&
         pos[instance.partner(head)] <= j) ||
        (instance.is_delivery(tail) && pos[instance.partner(tail)] >= i &&
         pos[instance.partner(tail)] < j);
      if (broken) {
        ws.reversed[ij] = INFINITE_COST;
        ws.reversed_choice[ij] = stop;
      } else if (len >= 2) {
        Cost value = ws.reversed[at(i + 1, j)];
        std::uint8_t choice = skip_first;
        if (ws.reversed[at(i, j - 1)] < value) {
          value = ws.reversed[at(i, j - 1)];
          choice = skip_last;
        }
        const Cost nested =
          two_opt_delta(instance, s, i, j) + ws.forward[at(i + 1, j - 1)];
        if (nested < value) {
          value = nested;
          choice = reverse;
        }
        ws.reversed[ij] = value;
        ws.reversed_choice[ij] = choice;
      }
    }
  }
}

} // namespace

MoveDelta two_k_opt_best(const Instance& instance,
                         const Tour& tour,
                         Workspace& ws) {
  fill_tables(instance, tour, ws);
  const auto size = tour.seq.size();
  Index i = 0;
  Index j = static_cast<Index>(size) - 1;

  MoveDelta move;
  move.kind = MoveKind::two_k_opt;
  move.delta = ws.forward[static_cast<std::size_t>(i) * size + j];
  move.feasible = true;

  bool forward = true;
  while (i < j) {
    const auto ij = static_cast<std::size_t>(i) * size + j;
    const auto choice = forward ? ws.forward_choice[ij] : ws.reversed_choice[ij];
    if (choice == stop) {
      break;
    }
    if (choice == skip_first) {
      ++i;
    } else if (choice == skip_last) {
      --j;
    } else {
      move.chain.emplace_back(i, j);
      ++i;
      --j;
      forward = !forward;
    }
  }
  return move;
}

MoveDelta two_k_opt_best(const Instance& instance, const Tour& tour) {
  Workspace ws;
  return two_k_opt_best(instance, tour, ws);
}

FRTables build_fr_tables(const Instance& instance, const Tour& tour) {
  Workspace ws;
  fill_tables(instance, tour, ws);
  FRTables tables;
  tables.size = tour.seq.size();
  tables.forward = std::move(ws.forward);
  tables.reversed = std::move(ws.reversed);
  return tables;
}

} // namespace pdtsp
