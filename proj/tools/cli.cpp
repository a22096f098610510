#include "cli.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <pdtsp/oracle.h>

namespace pdtsp::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) {
    return {};
  }
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

std::uint64_t parse_u64(std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw InputError("not a non-negative integer: '" + t + "'");
  }
  return value;
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw InputError("not a number: '" + t + "'");
  }
  return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    parts.push_back(trim(text.substr(start, at - start)));
    if (at == std::string_view::npos) {
      return parts;
    }
    start = at + 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write " + path.string());
  }
  out << text;
}

std::string optional_number(const std::optional<double>& value) {
  return value ? fixed(*value) : std::string();
}

Tour replay_greedy_descent(const Instance& instance,
                           const SearchParams& search,
                           Rng& rng) {
  const Tour start = greedy_construct(instance, rng);
  return local_search(instance, start, search, true, rng);
}

} // namespace

Method parse_method(std::string_view text) {
  if (text == "hgs") {
    return Method::hgs;
  }
  if (text == "rr") {
    return Method::rr;
  }
  if (text == "rr-fast") {
    return Method::rr_fast;
  }
  if (text == "ls-only") {
    return Method::ls_only;
  }
  if (text == "oracle") {
    return Method::oracle;
  }
  throw InputError("unknown method '" + std::string(text) + "'");
}

std::string_view to_string(Method method) {
  switch (method) {
  case Method::hgs:
    return "hgs";
  case Method::rr:
    return "rr";
  case Method::rr_fast:
    return "rr-fast";
  case Method::ls_only:
    return "ls-only";
  case Method::oracle:
    return "oracle";
  }
  return "?";
}

std::string format_record(const RunRecord& r) {
  std::string line = r.instance;
  line += ',';
  line += to_string(r.method);
  line += ',' + std::to_string(r.seed);
  line += ',' + format_cost(r.cost);
  line += ',' + optional_number(r.gap);
  line += ',' + fixed(r.ttb);
  line += ',' + fixed(r.total);
  return line;
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_u64(part));
      continue;
    }
    const auto first = parse_u64(part.substr(0, dots));
    const auto last = parse_u64(part.substr(dots + 2));
    if (first > last) {
      throw InputError("empty seed range '" + part + "'");
    }
    for (auto s = first; s <= last; ++s) {
      seeds.push_back(s);
    }
  }
  return seeds;
}

std::map<std::string, Reference> parse_references(std::string_view text) {
  std::map<std::string, Reference> refs;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#' || t.rfind("instance", 0) == 0) {
      continue;
    }
    const auto fields = split(t, ',');
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) {
      throw ParseError(line_no, "expected instance,cost[,group]");
    }
    Reference ref;
    try {
      ref.cost = parse_double(fields[1]);
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!(ref.cost > 0)) {
      throw ParseError(line_no, "reference cost must be positive");
    }
    if (fields.size() == 3) {
      ref.group = fields[2];
    }
    refs[fields[0]] = ref;
  }
  return refs;
}

double gap_percent(Cost cost, Cost reference) {
  return 100.0 * (cost - reference) / reference;
}

void SolveOptions::validate() const {
  search.validate();
  if (time_limit && !(*time_limit >= 0)) {
    throw InputError("--tmax must be non-negative");
  }
  const bool metaheuristic =
    method == Method::hgs || method == Method::rr || method == Method::rr_fast;
  if (no_improvement && method != Method::hgs) {
    throw InputError("--budget-noimprove applies to hgs only");
  }
  if ((iterations || target) && !metaheuristic) {
    throw InputError("--iterations and --target apply to hgs, rr and rr-fast");
  }
}

Solved solve_once(const Instance& instance,
                  const std::string& id,
                  const SolveOptions& options,
                  std::uint64_t seed,
                  const std::map<std::string, Reference>& references) {
  options.validate();
  Solved solved;
  RunRecord& r = solved.record;
  r.instance = id;
  r.method = options.method;
  r.seed = seed;
  const double limit = options.time_limit.value_or(
    static_cast<double>(instance.n_visits()));
  Rng rng(seed);
  const auto start = Clock::now();

  switch (options.method) {
  case Method::hgs: {
    HgsParams params;
    params.search = options.search;
    params.time_limit = limit;
    params.max_no_improvement = options.no_improvement;
    params.max_iterations = options.iterations;
    params.target_cost = options.target;
    RunResult result = hgs_run(instance, params, rng);
    solved.tour = std::move(result.best);
    r.ttb = result.time_to_best;
    r.total = result.total_time;
    break;
  }
  case Method::rr:
  case Method::rr_fast: {
    RrParams params;
    params.time_limit = limit;
    params.max_iterations = options.iterations;
    params.target_cost = options.target;
    params.fast_insertion = options.method == Method::rr_fast;
    RunResult result = rr_run(instance, params, rng);
    solved.tour = std::move(result.best);
    r.ttb = result.time_to_best;
    r.total = result.total_time;
    break;
  }
  case Method::ls_only:
    solved.tour = replay_greedy_descent(instance, options.search, rng);
    r.total = r.ttb = seconds_since(start);
    break;
  case Method::oracle:
    solved.tour = brute_force_optimal(instance).tour;
    r.total = r.ttb = seconds_since(start);
    break;
  }
  r.cost = solved.tour.cost;
  r.ttb = std::min(r.ttb, r.total);
  if (const auto it = references.find(id); it != references.end()) {
    r.gap = gap_percent(r.cost, it->second.cost);
  }
  return solved;
}

std::vector<SummaryRow> summarize(
  const std::vector<RunRecord>& records,
  const std::map<std::string, Reference>& references) {
  std::map<std::string, std::vector<const RunRecord*>> by_instance;
  for (const auto& r : records) {
    by_instance[r.instance].push_back(&r);
  }
  std::vector<SummaryRow> rows;
  std::map<std::string, std::vector<std::size_t>> by_group;
  for (const auto& [name, runs] : by_instance) {
    SummaryRow row;
    row.level = "instance";
    row.name = name;
    row.runs = runs.size();
    const auto ref = references.find(name);
    double cost_sum = 0;
    double time_sum = 0;
    for (const RunRecord* r : runs) {
      cost_sum += r->cost;
      time_sum += r->total;
      row.best_cost = std::min(row.best_cost, r->cost);
    }
    row.avg_cost = cost_sum / static_cast<double>(runs.size());
    row.mean_time = time_sum / static_cast<double>(runs.size());
    if (ref != references.end()) {
      row.avg_gap = gap_percent(row.avg_cost, ref->second.cost);
      row.best_gap = gap_percent(row.best_cost, ref->second.cost);
    }
    const std::string group =
      ref != references.end() && !ref->second.group.empty() ? ref->second.group
                                                            : "all";
    by_group[group].push_back(rows.size());
    rows.push_back(row);
  }
  for (const auto& [group, members] : by_group) {
    SummaryRow row;
    row.level = "group";
    row.name = group;
    row.best_cost = 0;
    bool gaps = true;
    double avg_gap = 0;
    double best_gap = 0;
    for (const std::size_t k : members) {
      const SummaryRow& m = rows[k];
      row.runs += m.runs;
      row.avg_cost += m.avg_cost;
      row.best_cost += m.best_cost;
      row.mean_time += m.mean_time;
      if (m.avg_gap) {
        avg_gap += *m.avg_gap;
        best_gap += *m.best_gap;
      } else {
        gaps = false;
      }
    }
    const auto count = static_cast<double>(members.size());
    row.avg_cost /= count;
    row.best_cost /= count;
    row.mean_time /= count;
    if (gaps) {
      row.avg_gap = avg_gap / count;
      row.best_gap = best_gap / count;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::string text = CSV_VERSION;
  text += "\nlevel,name,runs,avg_cost,best_cost,avg_gap,best_gap,mean_time\n";
  for (const auto& row : rows) {
    text += row.level + ',' + row.name + ',' + std::to_string(row.runs) + ',' +
            format_cost(row.avg_cost) + ',' + format_cost(row.best_cost) + ',' +
            optional_number(row.avg_gap) + ',' +
            optional_number(row.best_gap) + ',' + fixed(row.mean_time) + '\n';
  }
  return text;
}

std::vector<ScalingPoint> measure_scaling(const std::vector<std::size_t>& sizes,
                                          std::size_t repetitions,
                                          std::uint64_t seed) {
  struct Bench {
    Instance instance;
    Rng rng;
    std::optional<LocalSearch> search;
  };
  std::vector<std::unique_ptr<Bench>> benches;
  std::vector<ScalingPoint> points;
  for (const std::size_t size : sizes) {
    if (size < 2 || size % 2 != 0) {
      throw InputError("scaling sizes must be even customer visit counts");
    }
    Rng rng(seed + size);
    Instance instance = generate_pairs(
      random_coordinates(size + 1, rng, 1000000), PairGroup::C, rng);
    auto bench = std::make_unique<Bench>(Bench{std::move(instance), rng, {}});
    bench->search.emplace(bench->instance, SearchParams{});
    benches.push_back(std::move(bench));
    points.push_back({size, 0, 0});
  }
  Workspace ws;
  // Sizes take turns so that machine load spreads evenly over them.
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (std::size_t k = 0; k < benches.size(); ++k) {
      Bench& b = *benches[k];
      const Instance& instance = b.instance;
      const auto n = static_cast<Visit>(instance.n_pairs());
      // Random feasible tour: shuffled requests, each delivery placed
      // uniformly after its pickup.
      std::vector<Visit> route{0, instance.terminal()};
      std::vector<Visit> order(n);
      std::iota(order.begin(), order.end(), 1);
      std::shuffle(order.begin(), order.end(), b.rng);
      for (const Visit x : order) {
        std::uniform_int_distribution<std::size_t> at(1, route.size() - 1);
        const std::size_t p = at(b.rng);
        route.insert(route.begin() + static_cast<std::ptrdiff_t>(p), x);
        std::uniform_int_distribution<std::size_t> after(p + 1,
                                                         route.size() - 1);
        route.insert(
          route.begin() + static_cast<std::ptrdiff_t>(after(b.rng)),
          instance.partner(x));
      }
      Tour tour = make_tour(instance, route);

      auto start = Clock::now();
      Cost sink = 0;
      for (Visit x = 1; x <= n; ++x) {
        sink += relocate_pair_best(instance, tour, x, ws).delta;
      }
      points[k].relocate_scan += seconds_since(start);
      if (sink > 0) {
        throw Exception("relocate scan reported a positive best delta");
      }

      start = Clock::now();
      b.search->sweep(tour, b.rng);
      points[k].sweep += seconds_since(start);
    }
  }
  for (auto& point : points) {
    point.relocate_scan /= static_cast<double>(repetitions);
    point.sweep /= static_cast<double>(repetitions);
  }
  return points;
}

namespace {

struct Common {
  std::string method = "hgs";
  std::string seeds = "1";
  std::optional<double> tmax;
  std::optional<std::size_t> noimprove;
  std::optional<std::size_t> iterations;
  std::optional<double> target;
  int kor = 30;
  int kbs = 3;
  double plarge = 0.1;
  std::string ref;
  std::string out;

  SolveOptions options() const {
    SolveOptions o;
    o.method = parse_method(method);
    o.time_limit = tmax;
    o.no_improvement = noimprove;
    o.iterations = iterations;
    o.target = target;
    o.search.k_or = kor;
    o.search.k_bs = kbs;
    o.search.p_large = plarge;
    o.validate();
    return o;
  }

  std::map<std::string, Reference> references() const {
    return ref.empty() ? std::map<std::string, Reference>{}
                       : parse_references(read_file(ref));
  }
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--method", c.method, "hgs, rr, rr-fast, ls-only or oracle");
  cmd.add_option("--seeds", c.seeds, "seed, range a..b or list a,b,c");
  cmd.add_option("--tmax", c.tmax, "time limit in seconds (default N)");
  cmd.add_option("--budget-noimprove",
                 c.noimprove,
                 "stop after this many generations without improvement");
  cmd.add_option("--iterations", c.iterations, "iteration budget");
  cmd.add_option("--target", c.target, "stop once this cost is reached");
  cmd.add_option("--kor", c.kor, "or-opt maximum segment length");
  cmd.add_option("--kbs", c.kbs, "Balas-Simonetti window");
  cmd.add_option("--plarge", c.plarge, "probability of large neighborhoods");
  cmd.add_option("--ref", c.ref, "reference costs, instance,cost[,group]");
  cmd.add_option("--out", c.out, "output directory");
}

std::string stem(const std::string& path) {
  return fs::path(path).stem().string();
}

void write_solution(const std::string& dir,
                    const Instance& instance,
                    const Solved& solved) {
  fs::create_directories(dir);
  const auto& r = solved.record;
  const fs::path path = fs::path(dir) / (r.instance + "." +
                                         std::string(to_string(r.method)) +
                                         "." + std::to_string(r.seed) + ".sol");
  write_file(path, render_solution(instance, solved.tour));
}

int cmd_solve(const std::string& path, const Common& c, std::ostream& out) {
  const SolveOptions options = c.options();
  const auto refs = c.references();
  const auto seeds = parse_seeds(c.seeds);
  const Instance instance = read_instance_file(path);
  const std::string id = stem(path);
  out << CSV_VERSION << '\n' << RECORD_COLUMNS << '\n';
  const std::vector<std::uint64_t> run_seeds =
    options.method == Method::oracle ? std::vector<std::uint64_t>{seeds.front()}
                                     : seeds;
  for (const auto seed : run_seeds) {
    const Solved solved = solve_once(instance, id, options, seed, refs);
    out << format_record(solved.record) << '\n' << std::flush;
    if (!c.out.empty()) {
      write_solution(c.out, instance, solved);
    }
  }
  return 0;
}

int cmd_oracle(const std::string& path,
               const std::string& out_dir,
               std::ostream& out) {
  const Instance instance = read_instance_file(path);
  const auto start = Clock::now();
  const OracleResult result = brute_force_optimal(instance);
  RunRecord r;
  r.instance = stem(path);
  r.method = Method::oracle;
  r.cost = result.cost;
  r.total = r.ttb = seconds_since(start);
  out << CSV_VERSION << '\n' << RECORD_COLUMNS << '\n';
  out << format_record(r) << '\n';
  out << "# leaves " << result.leaves << " of "
      << feasible_sequence_count(instance.n_pairs()) << '\n';
  if (!out_dir.empty()) {
    write_solution(out_dir, instance, {r, result.tour});
  }
  return 0;
}

int cmd_bench(const std::string& dir,
              const Common& c,
              std::size_t threads,
              std::ostream& out) {
  const SolveOptions options = c.options();
  const auto refs = c.references();
  const auto seeds = parse_seeds(c.seeds);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pdtsp") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Instance> instances;
  for (const auto& f : files) {
    instances.push_back(read_instance_file(f));
  }

  struct Job {
    std::size_t instance;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (const auto seed : seeds) {
      jobs.push_back({i, seed});
      if (options.method == Method::oracle) {
        break;
      }
    }
  }
  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_lock;
  std::string failure;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next++;
      if (k >= jobs.size()) {
        return;
      }
      try {
        const Instance& instance = instances[jobs[k].instance];
        const Solved solved = solve_once(
          instance, stem(files[jobs[k].instance]), options, jobs[k].seed, refs);
        records[k] = solved.record;
        if (!c.out.empty()) {
          std::lock_guard lock(failure_lock);
          write_solution(c.out, instance, solved);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_lock);
        if (failure.empty()) {
          failure = e.what();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(threads, 1); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  if (!failure.empty()) {
    throw Exception(failure);
  }

  if (!c.out.empty()) {
    std::string text = std::string(CSV_VERSION) + '\n' + RECORD_COLUMNS + '\n';
    for (const auto& r : records) {
      text += format_record(r) + '\n';
    }
    fs::create_directories(c.out);
    write_file(fs::path(c.out) / "records.csv", text);
  }
  out << format_summary(summarize(records, refs));
  return 0;
}

int cmd_scaling(const std::string& sizes_text,
                std::size_t repetitions,
                std::uint64_t seed,
                std::ostream& out) {
  std::vector<std::size_t> sizes;
  for (const auto& s : split(sizes_text, ',')) {
    sizes.push_back(parse_u64(s));
  }
  const auto points = measure_scaling(sizes, repetitions, seed);
  out << CSV_VERSION << '\n'
      << "n_visits,relocate_scan,sweep,relocate_ratio,sweep_ratio\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    out << p.n_visits << ',' << fixed(p.relocate_scan) << ',' << fixed(p.sweep)
        << ',';
    if (k > 0) {
      out << fixed(p.relocate_scan / points[k - 1].relocate_scan) << ','
          << fixed(p.sweep / points[k - 1].sweep);
    } else {
      out << ',';
    }
    out << '\n';
  }
  return 0;
}

struct GenArgs {
  std::optional<std::size_t> size;
  std::string coords;
  std::string group = "C";
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string mode = "closed";
  std::string rounding = "nearest";
  std::string name;
  std::string out;
  int extent = 1000;
};

int cmd_gen(const GenArgs& g, std::ostream& out) {
  if (g.size.has_value() == !g.coords.empty()) {
    throw InputError("gen needs exactly one of --size and --coords");
  }
  if (g.count == 0) {
    throw InputError("--count must be positive");
  }
  if (g.count > 1 && g.out.empty()) {
    throw InputError("--count above 1 needs --out");
  }
  const PairGroup group = parse_group(g.group);
  const TourMode mode = parse_mode(g.mode);
  const Rounding rounding = parse_rounding(g.rounding);
  std::optional<Coordinates> fixed_coords;
  if (!g.coords.empty()) {
    fixed_coords = parse_tsplib_coordinates(read_file(g.coords));
  }
  const std::size_t points = fixed_coords ? fixed_coords->size() : *g.size;
  const std::string prefix =
    g.name.empty() ? "gen-" + std::string(to_string(group)) + "-" +
                       std::to_string(points)
                   : g.name;
  for (std::size_t k = 0; k < g.count; ++k) {
    const std::uint64_t seed = g.seed + k;
    Rng rng(seed);
    const Coordinates coords =
      fixed_coords ? *fixed_coords : random_coordinates(points, rng, g.extent);
    const std::string name =
      g.count == 1 && !g.name.empty() ? prefix
                                      : prefix + "-" + std::to_string(seed);
    const Instance instance =
      generate_pairs(coords, group, rng, name, mode, rounding);
    const std::string text = render_instance(instance);
    if (g.out.empty()) {
      out << text;
    } else {
      fs::create_directories(g.out);
      write_file(fs::path(g.out) / (name + ".pdtsp"), text);
    }
  }
  return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pickup-and-delivery TSP solver toolkit", "pdtsp"};
  app.require_subcommand(1);

  Common solve_args;
  std::string solve_path;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("instance", solve_path, "instance file")->required();
  add_common(*solve, solve_args);

  Common bench_args;
  std::string bench_dir;
  std::size_t threads = 1;
  bool scaling = false;
  std::string sizes = "256,512,1024";
  std::size_t repetitions = 5;
  std::uint64_t scaling_seed = 1;
  auto* bench =
    app.add_subcommand("bench", "solve every .pdtsp file of a directory");
  bench->add_option("dir", bench_dir, "instance directory");
  add_common(*bench, bench_args);
  bench->add_option("--threads", threads, "worker threads");
  bench->add_flag("--scaling", scaling, "time neighborhood scans instead");
  bench->add_option("--sizes", sizes, "visit counts for --scaling");
  bench->add_option("--reps", repetitions, "repetitions for --scaling");
  bench->add_option("--scaling-seed", scaling_seed, "seed for --scaling");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->add_option("--size", gen_args.size, "number of points including depot");
  gen->add_option("--coords", gen_args.coords, "TSPLIB coordinate file");
  gen->add_option("--group", gen_args.group, "A, B or C");
  gen->add_option("--seed", gen_args.seed, "first seed");
  gen->add_option("--count", gen_args.count, "instances to generate");
  gen->add_option("--mode", gen_args.mode, "closed or open");
  gen->add_option("--rounding", gen_args.rounding, "none or nearest");
  gen->add_option("--name", gen_args.name, "instance name prefix");
  gen->add_option("--out", gen_args.out, "output directory");
  gen->add_option("--extent", gen_args.extent, "coordinate range");

  std::string oracle_path;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "exact optimum for n <= 8");
  oracle->add_option("instance", oracle_path, "instance file")->required();
  oracle->add_option("--out", oracle_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(solve_path, solve_args, out);
    }
    if (bench->parsed()) {
      if (scaling) {
        return cmd_scaling(sizes, repetitions, scaling_seed, out);
      }
      if (bench_dir.empty()) {
        throw InputError("bench needs an instance directory");
      }
      return cmd_bench(bench_dir, bench_args, threads, out);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_args, out);
    }
    return cmd_oracle(oracle_path, oracle_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace pdtsp::cli
