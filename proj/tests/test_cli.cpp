#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <cli.h>
#include <pdtsp/oracle.h>

#include "support/support.h"

using namespace pdtsp;
using namespace pdtsp::cli;

namespace fs = std::filesystem;

namespace {

struct Output {
  int code = 0;
  std::string out;
  std::string err;
};

Output invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pdtsp");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  Output o;
  o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() /
            ("pdtsp-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    fs::remove_all(path_);
  }
  const fs::path& path() const {
    return path_;
  }
  std::string str(const std::string& name = "") const {
    return name.empty() ? path_.string() : (path_ / name).string();
  }

private:
  fs::path path_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string f;
  while (std::getline(in, f, ',')) {
    out.push_back(f);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

// Record lines with the two timing columns cut off.
std::vector<std::string> without_timing(const std::string& csv) {
  std::vector<std::string> out;
  for (const auto& line : lines(csv)) {
    auto f = fields(line);
    if (f.size() == 7 && f[0] != "instance") {
      f.resize(5);
      std::string joined;
      for (const auto& x : f) {
        joined += x + ',';
      }
      out.push_back(joined);
    } else {
      out.push_back(line);
    }
  }
  return out;
}

void write_instance(const fs::path& path, const Instance& instance) {
  std::ofstream(path) << render_instance(instance);
}

} // namespace

TEST_CASE("seed lists") {
  CHECK(parse_seeds("7") == std::vector<std::uint64_t>{7});
  CHECK(parse_seeds("1..4") == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(parse_seeds("3,1,9") == std::vector<std::uint64_t>{3, 1, 9});
  CHECK(parse_seeds("1..2,5") == std::vector<std::uint64_t>{1, 2, 5});
  CHECK_THROWS_AS(parse_seeds("4..1"), InputError);
  CHECK_THROWS_AS(parse_seeds("x"), InputError);
  CHECK_THROWS_AS(parse_seeds(""), InputError);
}

TEST_CASE("records and gaps") {
  CHECK(gap_percent(110, 100) == doctest::Approx(10));
  CHECK(gap_percent(99, 100) == doctest::Approx(-1));
  RunRecord r;
  r.instance = "a";
  r.method = Method::rr_fast;
  r.seed = 3;
  r.cost = 1234;
  r.ttb = 0.5;
  r.total = 1;
  CHECK(format_record(r) == "a,rr-fast,3,1234,,0.500000,1.000000");
  r.gap = 2.5;
  CHECK(format_record(r) == "a,rr-fast,3,1234,2.500000,0.500000,1.000000");
  for (const auto m : {Method::hgs,
                       Method::rr,
                       Method::rr_fast,
                       Method::ls_only,
                       Method::oracle}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("sa"), InputError);
}

TEST_CASE("reference files") {
  const auto refs = parse_references(
    "# comment\ninstance,cost,group\nprob5a,3585,small\nx, 10 \n");
  REQUIRE(refs.size() == 2);
  CHECK(refs.at("prob5a").cost == 3585);
  CHECK(refs.at("prob5a").group == "small");
  CHECK(refs.at("x").group.empty());
  CHECK_THROWS_AS(parse_references("a,b\n"), ParseError);
  CHECK_THROWS_AS(parse_references("a,-1\n"), ParseError);
}

TEST_CASE("solve") {
  TempDir dir("solve");
  Rng rng(5);
  const Instance five = test::random_instance(5, rng);
  write_instance(dir.path() / "five.pdtsp", five);
  const Cost optimum = brute_force_optimal(five).cost;

  SUBCASE("no-improvement budget terminates with a time to best") {
    const Output o = invoke({"solve",
                             dir.str("five.pdtsp"),
                             "--method",
                             "hgs",
                             "--seeds",
                             "1..3",
                             "--budget-noimprove",
                             "100"});
    REQUIRE(o.code == 0);
    const auto l = lines(o.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == CSV_VERSION);
    CHECK(l[1] == RECORD_COLUMNS);
    for (std::size_t k = 2; k < 5; ++k) {
      const auto f = fields(l[k]);
      REQUIRE(f.size() == 7);
      CHECK(f[0] == "five");
      CHECK(std::stod(f[3]) == optimum);
      CHECK(std::stod(f[5]) <= std::stod(f[6]));
    }
  }

  SUBCASE("identical invocations agree apart from timing") {
    for (const std::string method : {"hgs", "rr", "rr-fast", "ls-only"}) {
      std::vector<std::string> args{
        "solve", dir.str("five.pdtsp"), "--method", method, "--seeds", "1..3"};
      if (method != "ls-only") {
        args.insert(args.end(), {"--iterations", "50"});
      }
      const Output a = invoke(args);
      const Output b = invoke(args);
      REQUIRE(a.code == 0);
      CHECK(without_timing(a.out) == without_timing(b.out));
    }
  }

  SUBCASE("gaps use the reference file") {
    std::ofstream(dir.path() / "ref.csv") << "five," << optimum << "\n";
    const Output o = invoke({"solve",
                             dir.str("five.pdtsp"),
                             "--method",
                             "oracle",
                             "--ref",
                             dir.str("ref.csv")});
    REQUIRE(o.code == 0);
    const auto f = fields(lines(o.out).at(2));
    CHECK(f[1] == "oracle");
    CHECK(std::stod(f[4]) == 0);
  }

  SUBCASE("solution files re-validate") {
    const Output o = invoke({"solve",
                             dir.str("five.pdtsp"),
                             "--method",
                             "rr-fast",
                             "--seeds",
                             "1,2",
                             "--iterations",
                             "100",
                             "--out",
                             dir.str("sol")});
    REQUIRE(o.code == 0);
    const auto l = lines(o.out);
    for (std::size_t k = 2; k < l.size(); ++k) {
      const auto f = fields(l[k]);
      const auto path =
        dir.path() / "sol" / (f[0] + "." + f[1] + "." + f[2] + ".sol");
      const SolutionRecord sol = parse_solution(slurp(path));
      const Tour tour = make_tour(five, sol.visits);
      CHECK(check_precedence(five, tour));
      CHECK(tour.cost == sol.cost);
      CHECK(tour.cost == std::stod(f[3]));
    }
  }

  SUBCASE("the oracle refuses nine requests") {
    write_instance(dir.path() / "nine.pdtsp", test::random_instance(9, rng));
    const Output o =
      invoke({"solve", dir.str("nine.pdtsp"), "--method", "oracle"});
    CHECK(o.code != 0);
    CHECK(o.err.find("error") != std::string::npos);
  }

  SUBCASE("invalid flag combinations") {
    CHECK(invoke({"solve",
                  dir.str("five.pdtsp"),
                  "--method",
                  "rr",
                  "--budget-noimprove",
                  "10"})
            .code != 0);
    CHECK(invoke({"solve",
                  dir.str("five.pdtsp"),
                  "--method",
                  "ls-only",
                  "--iterations",
                  "10"})
            .code != 0);
    CHECK(invoke({"solve", dir.str("five.pdtsp"), "--kbs", "13"}).code != 0);
    CHECK(invoke({"solve", dir.str("missing.pdtsp")}).code != 0);
    CHECK(invoke({"solve", dir.str("five.pdtsp"), "--method", "x"}).code != 0);
  }
}

TEST_CASE("oracle subcommand") {
  TempDir dir("oracle");
  Rng rng(2);
  const Instance three = test::random_instance(3, rng);
  write_instance(dir.path() / "three.pdtsp", three);
  const Output o = invoke({"oracle", dir.str("three.pdtsp")});
  REQUIRE(o.code == 0);
  const auto f = fields(lines(o.out).at(2));
  CHECK(std::stod(f[3]) == test::exact_optimum(three).cost);
  CHECK(o.out.find("of 90") != std::string::npos);
}

TEST_CASE("bench") {
  SUBCASE("an empty directory gives an empty table") {
    TempDir dir("bench-empty");
    const Output o = invoke({"bench", dir.str()});
    CHECK(o.code == 0);
    CHECK(lines(o.out).size() == 2);
  }

  SUBCASE("group means are recomputed from the records") {
    std::vector<RunRecord> records;
    auto add = [&](std::string name, std::uint64_t seed, Cost c, double t) {
      RunRecord r;
      r.instance = std::move(name);
      r.seed = seed;
      r.cost = c;
      r.total = t;
      records.push_back(r);
    };
    add("p1", 1, 105, 1.0);
    add("p1", 2, 100, 3.0);
    add("p2", 1, 220, 2.0);
    add("p2", 2, 210, 2.0);
    const std::map<std::string, Reference> refs{{"p1", {100, "g"}},
                                                {"p2", {200, "g"}}};
    const auto rows = summarize(records, refs);
    REQUIRE(rows.size() == 3);
    // p1: avg 102.5 -> 2.5 %, best 0 %; p2: avg 215 -> 7.5 %, best 5 %.
    CHECK(rows[0].avg_gap.value() == doctest::Approx(2.5));
    CHECK(rows[0].best_gap.value() == doctest::Approx(0));
    CHECK(rows[1].avg_gap.value() == doctest::Approx(7.5));
    CHECK(rows[1].best_gap.value() == doctest::Approx(5));
    CHECK(rows[2].level == "group");
    CHECK(rows[2].name == "g");
    CHECK(rows[2].runs == 4);
    CHECK(rows[2].avg_gap.value() == doctest::Approx(5));
    CHECK(rows[2].best_gap.value() == doctest::Approx(2.5));
    CHECK(rows[2].mean_time == doctest::Approx(2));
  }

  SUBCASE("missing references leave gaps empty") {
    std::vector<RunRecord> records(1);
    records[0].instance = "z";
    records[0].cost = 5;
    const auto rows = summarize(records, {});
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].avg_gap.has_value());
    CHECK_FALSE(rows[1].avg_gap.has_value());
    CHECK(format_summary(rows).find("instance,z,1,5,5,,,") !=
          std::string::npos);
  }

  SUBCASE("threads do not change the records") {
    TempDir dir("bench-threads");
    Rng rng(3);
    for (int k = 0; k < 3; ++k) {
      write_instance(dir.path() / ("i" + std::to_string(k) + ".pdtsp"),
                     test::random_instance(4 + k, rng));
    }
    std::vector<std::string> args{"bench",
                                  dir.str(),
                                  "--method",
                                  "rr-fast",
                                  "--iterations",
                                  "100",
                                  "--seeds",
                                  "1..3"};
    auto one = args;
    one.insert(one.end(), {"--threads", "1", "--out", dir.str("one")});
    auto three = args;
    three.insert(three.end(), {"--threads", "3", "--out", dir.str("three")});
    REQUIRE(invoke(one).code == 0);
    REQUIRE(invoke(three).code == 0);
    const auto a = without_timing(slurp(dir.path() / "one" / "records.csv"));
    const auto b = without_timing(slurp(dir.path() / "three" / "records.csv"));
    CHECK(a.size() == 2 + 9);
    CHECK(a == b);
  }

  SUBCASE("scaling mode") {
    const Output o =
      invoke({"bench", "--scaling", "--sizes", "16,32", "--reps", "2"});
    REQUIRE(o.code == 0);
    const auto l = lines(o.out);
    REQUIRE(l.size() == 4);
    CHECK(fields(l[3]).size() == 5);
    CHECK_THROWS_AS(measure_scaling({15}, 1, 1), InputError);
  }
}

TEST_CASE("gen") {
  TempDir dir("gen");
  for (const std::string group : {"A", "B", "C"}) {
    const Output a = invoke(
      {"gen", "--size", "21", "--group", group, "--seed", "4", "--mode", "open"});
    const Output b = invoke(
      {"gen", "--size", "21", "--group", group, "--seed", "4", "--mode", "open"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    Rng rng(4);
    const Coordinates coords = random_coordinates(21, rng);
    const Instance direct = generate_pairs(coords,
                                           parse_group(group),
                                           rng,
                                           "gen-" + group + "-21-4",
                                           TourMode::open);
    CHECK(parse_instance(a.out) == direct);
  }
  CHECK(invoke({"gen", "--size", "20"}).code != 0);
  CHECK(invoke({"gen"}).code != 0);
  CHECK(invoke({"gen", "--size", "9", "--count", "2"}).code != 0);
  REQUIRE(invoke({"gen",
                  "--size",
                  "9",
                  "--count",
                  "3",
                  "--out",
                  dir.str("many"),
                  "--rounding",
                  "none"})
            .code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir.path() / "many")) {
    const Instance instance = read_instance_file(e.path().string());
    CHECK(instance.n_pairs() == 4);
    ++files;
  }
  CHECK(files == 3);

  std::ofstream(dir.path() / "pts.tsp")
    << "NAME: pts\nTYPE: TSP\nDIMENSION: 5\nEDGE_WEIGHT_TYPE: EUC_2D\n"
       "NODE_COORD_SECTION\n1 0 0\n2 3 4\n3 6 8\n4 1 1\n5 2 9\nEOF\n";
  const Output t = invoke({"gen", "--coords", dir.str("pts.tsp")});
  REQUIRE(t.code == 0);
  CHECK(parse_instance(t.out).n_pairs() == 2);
}
