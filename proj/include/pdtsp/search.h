#ifndef PDTSP_SEARCH_H
#define PDTSP_SEARCH_H

#include "pdtsp/neighborhoods.h"

namespace pdtsp {

struct SearchParams {
  int k_or = 30;
  int k_bs = 3;
  double p_large = 0.1;

  // Throws InputError when a value is out of range.
  void validate() const;
};

struct SearchStats {
  std::size_t moves = 0;
  std::size_t large_moves = 0;
  std::size_t rounds = 0;
};

// Scratch state reused across descents.
class LocalSearch {
public:
  LocalSearch(const Instance& instance, SearchParams params);

  // Runs the two-phase descent until no enabled neighborhood improves.
  Tour run(Tour tour, bool use_large, Rng& rng, SearchStats* stats = nullptr);

  // One pass over all requests in random order, applying per request the
  // best improving relocate-pair, 2-opt or or-opt move. Returns the number
  // of moves applied.
  std::size_t sweep(Tour& tour, Rng& rng);

  // Best move among 2k-opt, 4-opt and Balas-Simonetti; kind none if no
  // move improves.
  MoveDelta best_large_move(const Tour& tour);

  // Best move among the small neighborhoods for request (x, partner(x)).
  MoveDelta best_request_move(const Tour& tour, Visit x);

  const SearchParams& params() const {
    return params_;
  }

private:
  const Instance& instance_;
  SearchParams params_;
  Workspace ws_;
  std::vector<Visit> order_;
};

Tour local_search(const Instance& instance,
                  Tour tour,
                  const SearchParams& params,
                  bool use_large,
                  Rng& rng);

} // namespace pdtsp

#endif
