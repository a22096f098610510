#ifndef PDTSP_ORACLE_H
#define PDTSP_ORACLE_H

#include <cstdint>

#include "pdtsp/neighborhoods.h"

namespace pdtsp {

inline constexpr std::size_t MAX_ORACLE_PAIRS = 8;

struct OracleResult {
  Cost cost = INFINITE_COST;
  Tour tour;
  // Complete feasible sequences evaluated.
  std::uint64_t leaves = 0;
  // Feasible sequences accounted for, either evaluated or discarded by the
  // bound. Always (2n)!/2^n.
  std::uint64_t covered = 0;
};

// Depth-first enumeration of precedence-feasible sequences. With bound
// pruning, partial sequences whose cost plus the cheapest entry into every
// remaining visit reaches the incumbent are cut. Throws InputError above
// MAX_ORACLE_PAIRS requests.
OracleResult brute_force_optimal(const Instance& instance,
                                 bool bound_pruning = true);

// (2n)! / 2^n.
std::uint64_t feasible_sequence_count(std::size_t n_pairs);

inline constexpr std::size_t MAX_NEIGHBORHOOD_ORACLE_VISITS = 14;

struct NeighborhoodQuery {
  MoveKind kind = MoveKind::none;
  // relocate_pair: the pickup to move.
  Visit pickup = -1;
  // two_opt, or_opt: the anchor position.
  Index anchor = -1;
  int k_or = 30;
  int k_bs = 3;
};

// Exhaustive reference for each neighborhood: every candidate is spliced,
// checked with check_precedence and priced by recomputing the tour cost.
// For 4-opt any of the three kinds selects the whole 4-opt neighborhood,
// under the same policy as four_opt_best: per (i2, j2) and type, only the
// cheapest (j1, i1) is checked for feasibility. Throws InputError when the
// instance has more than MAX_NEIGHBORHOOD_ORACLE_VISITS visits.
MoveDelta enumerate_neighborhood_oracle(const Instance& instance,
                                        const Tour& tour,
                                        const NeighborhoodQuery& query);

// All permutations allowed by the Balas-Simonetti window and precedence,
// as full sequences.
std::vector<std::vector<Visit>> bs_neighborhood(const Instance& instance,
                                                const Tour& tour,
                                                int window);

} // namespace pdtsp

#endif
