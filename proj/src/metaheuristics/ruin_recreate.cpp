#include "pdtsp/metaheuristics.h"

#include <chrono>
#include <cmath>

namespace pdtsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

RunResult rr_run(const Instance& instance, const RrParams& params, Rng& rng) {
  if (!params.max_iterations && !params.time_limit) {
    throw InputError("ruin-and-recreate needs an iteration or time budget");
  }
  if (params.operators.empty()) {
    throw InputError("ruin-and-recreate needs at least one destroy operator");
  }
  const auto start = Clock::now();
  const bool naive = !params.fast_insertion;

  RunResult result;
  Tour current = greedy_construct(instance, rng, naive);
  result.best = current;

  const Cost t0 = params.initial_degradation * current.cost / std::log(2.0);
  const double ratio = params.final_temperature_ratio;
  const auto [q_lo, q_hi] = removal_bounds(instance.n_pairs());
  std::uniform_int_distribution<std::size_t> draw_q(q_lo, q_hi);
  std::uniform_int_distribution<std::size_t> draw_op(
    0, params.operators.size() - 1);
  std::uniform_real_distribution<double> unit(0, 1);

  auto reached_target = [&] {
    return params.target_cost &&
           result.best.cost <= *params.target_cost + IMPROVEMENT_EPS;
  };

  for (std::size_t it = 0;; ++it) {
    double progress = 0;
    if (params.max_iterations) {
      if (it >= *params.max_iterations) {
        break;
      }
      progress = static_cast<double>(it) / *params.max_iterations;
    }
    if (params.time_limit) {
      const double elapsed = seconds_since(start);
      if (elapsed >= *params.time_limit) {
        break;
      }
      if (!params.max_iterations) {
        progress = elapsed / *params.time_limit;
      }
    }
    if (reached_target()) {
      break;
    }
    const Cost temperature = t0 * std::pow(ratio, progress);

    const DestroyOperator op = params.operators[draw_op(rng)];
    Destroyed partial = destroy(instance, current, op, draw_q(rng), rng);
    std::shuffle(partial.removed.begin(), partial.removed.end(), rng);
    insert_requests(instance, partial.route, partial.removed, naive);
    Tour candidate;
    candidate.seq = std::move(partial.route);
    candidate.refresh(instance);

    const Cost delta = candidate.cost - current.cost;
    bool accept = improves(delta);
    if (!accept && temperature > 0) {
      accept = unit(rng) < std::exp(-delta / temperature);
    }
    if (accept) {
      current = std::move(candidate);
      if (improves(current.cost - result.best.cost)) {
        result.best = current;
        result.time_to_best = seconds_since(start);
      }
    }
    if (params.record_trajectory) {
      result.trajectory.push_back(current.seq);
    }
    result.iterations = it + 1;
  }
  result.total_time = seconds_since(start);
  return result;
}

} // namespace pdtsp
