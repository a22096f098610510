#ifndef PDTSP_TOUR_H
#define PDTSP_TOUR_H

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdtsp/instance.h"

namespace pdtsp {

// Visit sequence 0, ..., 2n+1 (terminal) with its cached cost and position
// index. Feasible tours also satisfy pickup-before-delivery; during HGS
// repair a tour may temporarily violate it.
struct Tour {
  std::vector<Visit> seq;
  std::vector<Index> pos;
  Cost cost = 0;

  std::size_t size() const {
    return seq.size();
  }
  Visit operator[](Index i) const {
    return seq[i];
  }
  // Recomputes positions and cost after seq was edited.
  void refresh(const Instance& instance);
};

// Builds a tour from a sequence. Accepts either the internal form ending
// with the terminal, the closed external form 0 ... 0, or the open external
// form 0 ... (no trailing depot). Throws InputError on malformed input.
Tour make_tour(const Instance& instance, std::vector<Visit> visits);

// External representation: closed tours end at 0, open tours omit the
// return.
std::vector<Visit> external_visits(const Instance& instance, const Tour& tour);

Cost tour_cost(const Instance& instance, std::span<const Visit> seq);
inline Cost tour_cost(const Instance& instance, const Tour& tour) {
  return tour_cost(instance, tour.seq);
}

bool check_precedence(const Instance& instance, std::span<const Visit> seq);
inline bool check_precedence(const Instance& instance, const Tour& tour) {
  return check_precedence(instance, tour.seq);
}

// True iff seq is 0, a permutation of 1..2n, then the terminal.
bool is_tour_sequence(const Instance& instance, std::span<const Visit> seq);

enum class MoveKind {
  none,
  relocate_pair,
  two_opt,
  or_opt,
  two_k_opt,
  four_opt_type1,
  four_opt_type2a,
  four_opt_type2b,
  balas_simonetti,
};

std::string_view to_string(MoveKind kind);

// A candidate move and its cost change. Index meaning depends on kind:
//   relocate_pair  {x, i', j', partner}: remove the pair then insert x after
//                  position i' and its partner after position j' of the
//                  reduced sequence (j' == i' inserts them consecutively).
//   two_opt        {i, j}: reverse positions i+1..j-1.
//   or_opt         {first, last, after}: move positions first..last between
//                  positions after and after+1, reversed if `reversed`.
//   four_opt_*     {i1, i2, j1, j2}: remove edges after those positions.
//   two_k_opt      nested 2-opt chain in `chain`, outermost first.
//   balas_simonetti  the whole new sequence in `sequence`.
struct MoveDelta {
  MoveKind kind = MoveKind::none;
  std::array<Index, 4> indices{-1, -1, -1, -1};
  Cost delta = INFINITE_COST;
  bool feasible = false;
  bool reversed = false;
  std::vector<std::pair<Index, Index>> chain;
  std::vector<Visit> sequence;

  bool found() const {
    return kind != MoveKind::none && delta < INFINITE_COST;
  }
  bool improving() const {
    return found() && feasible && improves(delta);
  }
};

// Rewrites seq according to the move without any feasibility check.
void splice_move(std::vector<Visit>& seq, const MoveDelta& move);

// Applies a feasible move and refreshes the tour. Throws Exception when the
// move is flagged infeasible or its indices do not fit the tour.
void apply_move(const Instance& instance, Tour& tour, const MoveDelta& move);

// Same as apply_move without the feasibility flag check (HGS mutation).
void apply_move_unchecked(const Instance& instance,
                          Tour& tour,
                          const MoveDelta& move);

// Solution files: "COST <value>" then "TOUR <visits>".
std::string render_solution(const Instance& instance, const Tour& tour);

struct SolutionRecord {
  Cost cost = 0;
  std::vector<Visit> visits;
};

SolutionRecord parse_solution(std::string_view text);

} // namespace pdtsp

#endif
