#ifndef PDTSP_CLI_H
#define PDTSP_CLI_H

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <pdtsp/metaheuristics.h>

namespace pdtsp::cli {

inline constexpr const char* CSV_VERSION = "# pdtsp-kit v1";
inline constexpr const char* RECORD_COLUMNS =
  "instance,method,seed,cost,gap,ttb,total";

enum class Method { hgs, rr, rr_fast, ls_only, oracle };

Method parse_method(std::string_view text);
std::string_view to_string(Method method);

struct RunRecord {
  std::string instance;
  Method method = Method::hgs;
  std::uint64_t seed = 0;
  Cost cost = INFINITE_COST;
  std::optional<double> gap;
  double ttb = 0;
  double total = 0;
};

std::string format_record(const RunRecord& record);

// "7", "1..10" or "1,4,9".
std::vector<std::uint64_t> parse_seeds(std::string_view text);

struct Reference {
  Cost cost = 0;
  std::string group;
};

// Lines "instance,cost[,group]"; '#' comments and a header line starting
// with "instance" are skipped.
std::map<std::string, Reference> parse_references(std::string_view text);

// 100 (cost - ref) / ref.
double gap_percent(Cost cost, Cost reference);

struct SolveOptions {
  Method method = Method::hgs;
  // Defaults to the number of visits, in seconds.
  std::optional<double> time_limit;
  std::optional<std::size_t> no_improvement;
  std::optional<std::size_t> iterations;
  std::optional<Cost> target;
  SearchParams search;

  // Throws InputError on combinations the method cannot honour.
  void validate() const;
};

struct Solved {
  RunRecord record;
  Tour tour;
};

Solved solve_once(const Instance& instance,
                  const std::string& id,
                  const SolveOptions& options,
                  std::uint64_t seed,
                  const std::map<std::string, Reference>& references = {});

struct SummaryRow {
  std::string level;
  std::string name;
  std::size_t runs = 0;
  double avg_cost = 0;
  Cost best_cost = INFINITE_COST;
  std::optional<double> avg_gap;
  std::optional<double> best_gap;
  double mean_time = 0;
};

// One row per instance, then one per group. Group rows average the
// instance rows; gap columns stay empty unless every instance in the
// group has a reference.
std::vector<SummaryRow> summarize(
  const std::vector<RunRecord>& records,
  const std::map<std::string, Reference>& references);

std::string format_summary(const std::vector<SummaryRow>& rows);

struct ScalingPoint {
  std::size_t n_visits = 0;
  double relocate_scan = 0;
  double sweep = 0;
};

// Mean seconds of one fast relocate-pair scan over all requests and of
// one full phase-1 sweep, on uniform random instances and tours. Sizes
// count customer visits and must be even.
std::vector<ScalingPoint> measure_scaling(const std::vector<std::size_t>& sizes,
                                          std::size_t repetitions,
                                          std::uint64_t seed);

// Entry point behind main(); returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pdtsp::cli

#endif
