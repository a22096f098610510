#ifndef PDTSP_TEST_SUPPORT_H
#define PDTSP_TEST_SUPPORT_H

#include <pdtsp/instance.h>
#include <pdtsp/tour.h>

namespace pdtsp::test {

// Random Euclidean instance with free pairing (group C).
Instance random_instance(std::size_t n_pairs,
                         Rng& rng,
                         TourMode mode = TourMode::closed,
                         Rounding rounding = Rounding::nearest,
                         int extent = 1000);

// Uniform choice among the visits allowed at each step.
Tour random_feasible_tour(const Instance& instance, Rng& rng);

// Any permutation, precedence ignored.
Tour random_permutation_tour(const Instance& instance, Rng& rng);

struct ExactResult {
  Cost cost = INFINITE_COST;
  std::vector<Visit> seq;
};

// Dynamic program over (request states, last visit), 3^n * 2n states.
// Independent of the library's search code; used for n up to about 10.
ExactResult exact_optimum(const Instance& instance);

// Points on a circle with pickups before their deliveries along the
// circle, so the perimeter order is optimal.
Instance circle_instance(std::size_t n_pairs, Rng& rng, double radius = 1000);

} // namespace pdtsp::test

#endif
