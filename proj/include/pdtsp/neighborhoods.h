#ifndef PDTSP_NEIGHBORHOODS_H
#define PDTSP_NEIGHBORHOODS_H

#include <cstdint>
#include <span>
#include <vector>

#include "pdtsp/tour.h"

namespace pdtsp {

// Cheapest way to insert a request (pickup, delivery) into a route given as
// a sequence anchored at 0 and the terminal. The pickup goes after
// position after_pickup, the delivery after position after_delivery >=
// after_pickup. Ties resolve to the lexicographically smallest position
// pair, for both the fast and the naive evaluation.
struct Insertion {
  Index after_pickup = -1;
  Index after_delivery = -1;
  Cost delta = INFINITE_COST;
};

// O(|route|): consecutive case by inspection, non-consecutive case with a
// backward running minimum over delivery slots.
Insertion best_insertion(const Instance& instance,
                         std::span<const Visit> route,
                         Visit pickup,
                         Visit delivery);

// O(|route|^2) enumeration of every slot pair.
Insertion best_insertion_naive(const Instance& instance,
                               std::span<const Visit> route,
                               Visit pickup,
                               Visit delivery);

// Cost change of removing visits at positions a < b from seq.
Cost removal_delta(const Instance& instance,
                   std::span<const Visit> seq,
                   Index a,
                   Index b);

// Reusable scratch memory for the scans below. One per search.
struct Workspace {
  std::vector<Visit> route;

  // 2k-opt
  std::vector<Cost> forward;
  std::vector<Cost> reversed;
  std::vector<std::uint8_t> forward_choice;
  std::vector<std::uint8_t> reversed_choice;

  // 4-opt
  std::vector<Cost> phi_sub[2];
  std::vector<Index> phi_sub_arg[2];
};

// Relocate pair: best relocation of (x, partner(x)) over all position
// pairs, in O(n).
MoveDelta relocate_pair_best(const Instance& instance,
                             const Tour& tour,
                             Visit x,
                             Workspace& ws);
MoveDelta relocate_pair_best(const Instance& instance,
                             const Tour& tour,
                             Visit x);

// Same move with the O(n^2) insertion enumeration.
MoveDelta relocate_pair_best_naive(const Instance& instance,
                                   const Tour& tour,
                                   Visit x,
                                   Workspace& ws);

// Best feasible 2-opt(i, j) with i = anchor and j >= anchor+3. The scan
// stops once the reversed block would contain a whole request.
MoveDelta two_opt_scan(const Instance& instance, const Tour& tour, Index anchor);

// Best feasible relocation of a block starting at anchor with at most
// max_length visits, optionally reversed. O(max_length * n).
MoveDelta or_opt_scan(const Instance& instance,
                      const Tour& tour,
                      Index anchor,
                      int max_length);

// F/R tables of the nested 2-opt dynamic program, row-major over (i, j).
struct FRTables {
  std::size_t size = 0;
  std::vector<Cost> forward;
  std::vector<Cost> reversed;

  Cost f(Index i, Index j) const {
    return forward[static_cast<std::size_t>(i) * size + j];
  }
  Cost r(Index i, Index j) const {
    return reversed[static_cast<std::size_t>(i) * size + j];
  }
};

// 2-opt gain between positions i and j: reverse i+1..j-1.
Cost two_opt_delta(const Instance& instance,
                   std::span<const Visit> seq,
                   Index i,
                   Index j);

// Best nested 2-opt combination (2k-opt), O(n^2) time and space.
MoveDelta two_k_opt_best(const Instance& instance,
                         const Tour& tour,
                         Workspace& ws);
MoveDelta two_k_opt_best(const Instance& instance, const Tour& tour);

FRTables build_fr_tables(const Instance& instance, const Tour& tour);

// Disconnecting / connecting 2-opt costs on edges after positions i < j.
Cost two_opt_d_delta(const Instance& instance,
                     std::span<const Visit> seq,
                     Index i,
                     Index j);
Cost two_opt_c_delta(const Instance& instance,
                     std::span<const Visit> seq,
                     Index i,
                     Index j);

// Prefix-minimum tables. Entry [a][b] is stored at a * size + b and is
// INFINITE_COST outside the valid index range. X = 0 is the connecting
// cost, X = 1 the disconnecting one.
struct PhiTables {
  std::size_t size = 0;
  std::vector<Cost> sub[2];
  std::vector<Index> sub_arg[2];  // argmin i1
  std::vector<Cost> full[2];
  std::vector<Index> full_i1[2];
  std::vector<Index> full_j1[2];

  Cost phi_sub(int x, Index i2, Index j1) const {
    return sub[x][static_cast<std::size_t>(i2) * size + j1];
  }
  Cost phi(int x, Index i2, Index j2) const {
    return full[x][static_cast<std::size_t>(i2) * size + j2];
  }
};

inline constexpr int CONNECTING = 0;
inline constexpr int DISCONNECTING = 1;

PhiTables build_phi_tables(const Instance& instance,
                           std::span<const Visit> seq);

// Rev(i, j): the block i..j holds no complete request.
// Last(i, j): largest position of a pickup outside the block whose delivery
// is inside it, or -1.
struct RevLastTables {
  std::size_t size = 0;
  std::vector<std::uint8_t> rev;
  std::vector<Index> last;

  bool reversible(Index i, Index j) const {
    return rev[static_cast<std::size_t>(i) * size + j] != 0;
  }
  Index last_pickup(Index i, Index j) const {
    return last[static_cast<std::size_t>(i) * size + j];
  }
};

RevLastTables build_rev_last_tables(const Instance& instance,
                                    const Tour& tour);

// O(1) feasibility of a 4-opt move given the tables.
bool four_opt_feasible(const RevLastTables& tables,
                       MoveKind kind,
                       Index i1,
                       Index i2,
                       Index j1,
                       Index j2);

// Best feasible improving Type-1/2A/2B 4-opt move, O(n^2). Feasibility is
// tested for the cheapest move of each type for every (i2, j2).
MoveDelta four_opt_best(const Instance& instance,
                        const Tour& tour,
                        Workspace& ws);
MoveDelta four_opt_best(const Instance& instance, const Tour& tour);

// Cheapest Type-1 move ignoring precedence (HGS mutation).
MoveDelta four_opt_best_type1_unconstrained(const Instance& instance,
                                            const Tour& tour,
                                            Workspace& ws);

inline constexpr int MAX_BS_WINDOW = 12;

struct BsNode {
  int layer = 0;
  Visit visit = 0;
  // Placed positions of the incumbent (1-based interior positions).
  std::vector<Index> placed;
  // Visits at incumbent position >= layer placed at or before layer.
  std::vector<Visit> anticipated;
  // Visits before incumbent position layer placed at or after layer.
  std::vector<Visit> delayed;
  bool pruned = false;
  Cost cost = INFINITE_COST;
};

// Layered state graph for inspection. Precedence-violating states are kept
// and flagged as pruned but never expanded.
struct BsGraph {
  int window = 0;
  std::vector<std::vector<BsNode>> layers;
};

BsGraph build_bs_graph(const Instance& instance, const Tour& tour, int window);

struct BsResult {
  Tour tour;
  // Largest number of unpruned states in any layer.
  std::size_t max_layer_width = 0;
};

// Best permutation within the Balas-Simonetti window around the incumbent
// that keeps every pickup before its delivery.
BsResult bs_search(const Instance& instance, const Tour& tour, int window);

inline Tour bs_best(const Instance& instance, const Tour& tour, int window) {
  return bs_search(instance, tour, window).tour;
}

MoveDelta bs_move(const Instance& instance, const Tour& tour, int window);

} // namespace pdtsp

#endif
