#ifndef PDTSP_INSTANCE_H
#define PDTSP_INSTANCE_H

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdtsp/types.h"

namespace pdtsp {

struct Point {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Planar locations, depot first.
struct Coordinates {
  std::vector<Point> points;

  std::size_t size() const {
    return points.size();
  }

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

enum class EdgeSource { coords, matrix };

enum class PairGroup { A, B, C };

// Request pairing as listed in instance files: pickup first.
using Pairing = std::vector<std::pair<Visit, Visit>>;

// A PDTSP instance with n requests over N = 2n+1 visits. Pickups are
// 1..n, deliveries n+1..2n, and the depot 0 has no partner. Internally the
// matrix is extended with a terminal node 2n+1 standing for the return to
// the depot, so every tour is an open path 0 -> ... -> 2n+1 on a symmetric
// matrix. In open mode the terminal is at distance 0 from everything.
class Instance {
public:
  Instance(std::string name,
           std::size_t n_pairs,
           std::vector<Cost> matrix,
           const Pairing& pairing,
           TourMode mode,
           Rounding rounding = Rounding::none,
           std::optional<Coordinates> coordinates = std::nullopt);

  static Instance from_coordinates(std::string name,
                                   Coordinates coordinates,
                                   const Pairing& pairing,
                                   TourMode mode,
                                   Rounding rounding);

  const std::string& name() const {
    return name_;
  }
  std::size_t n_pairs() const {
    return n_pairs_;
  }
  // N = 2n+1, depot included.
  std::size_t n_visits() const {
    return 2 * n_pairs_ + 1;
  }
  // Length of a tour sequence including both depot anchors.
  std::size_t sequence_length() const {
    return 2 * n_pairs_ + 2;
  }
  Visit terminal() const {
    return static_cast<Visit>(2 * n_pairs_ + 1);
  }
  TourMode mode() const {
    return mode_;
  }
  Rounding rounding() const {
    return rounding_;
  }
  EdgeSource edge_source() const {
    return coordinates_ ? EdgeSource::coords : EdgeSource::matrix;
  }
  const std::optional<Coordinates>& coordinates() const {
    return coordinates_;
  }
  bool integral() const {
    return integral_;
  }

  // Cost between visits 0..2n as given by the instance.
  Cost cost(Visit i, Visit j) const {
    return matrix_[static_cast<std::size_t>(i) * n_visits() + j];
  }

  // Cost on the extended matrix, 0..2n+1.
  Cost dist(Visit i, Visit j) const {
    return extended_[static_cast<std::size_t>(i) * stride_ + j];
  }

  const Cost* dist_row(Visit i) const {
    return extended_.data() + static_cast<std::size_t>(i) * stride_;
  }

  bool is_pickup(Visit v) const {
    return v >= 1 && v <= static_cast<Visit>(n_pairs_);
  }
  bool is_delivery(Visit v) const {
    return v > static_cast<Visit>(n_pairs_) &&
           v <= static_cast<Visit>(2 * n_pairs_);
  }
  // Partner visit, or -1 for the depot and terminal.
  Visit partner(Visit v) const {
    return partner_[v];
  }

  // Key identifying the physical location of a visit. Visits sharing
  // coordinates share a key; the terminal maps to the depot.
  int location(Visit v) const {
    return location_[v];
  }

  const std::vector<Cost>& matrix() const {
    return matrix_;
  }
  Pairing pairing() const;

  friend bool operator==(const Instance& a, const Instance& b);

private:
  void validate_and_extend();

  std::string name_;
  std::size_t n_pairs_;
  std::vector<Cost> matrix_;
  TourMode mode_;
  Rounding rounding_;
  std::optional<Coordinates> coordinates_;

  std::size_t stride_ = 0;
  std::vector<Cost> extended_;
  std::vector<Visit> partner_;
  std::vector<int> location_;
  bool integral_ = true;
};

// Euclidean matrix over the points, optionally rounded half-up to the
// nearest integer.
std::vector<Cost> build_cost_matrix(const Coordinates& coordinates,
                                    Rounding rounding);

// Parses the canonical text format. Throws ParseError with the offending
// line number.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

std::string render_instance(const Instance& instance);

// Reads the NODE_COORD_SECTION of a TSPLIB-style file. The first node is
// taken as the depot.
Coordinates parse_tsplib_coordinates(std::string_view text);

// Uniform points in [0, extent)^2 with integral coordinates.
Coordinates random_coordinates(std::size_t count, Rng& rng, int extent = 1000);

// Builds an instance by pairing every non-depot point. Points are scanned
// in index order; each point not yet used as a delivery becomes a pickup
// and draws its delivery uniformly among its 5 (group A) or 10 (group B)
// nearest unassigned points, or among all unassigned points (group C).
// Visits are relabelled so that pickup i is paired with delivery i+n.
Instance generate_pairs(const Coordinates& coordinates,
                        PairGroup group,
                        Rng& rng,
                        std::string name = "generated",
                        TourMode mode = TourMode::closed,
                        Rounding rounding = Rounding::nearest);

PairGroup parse_group(std::string_view text);
std::string_view to_string(PairGroup group);
TourMode parse_mode(std::string_view text);
std::string_view to_string(TourMode mode);
Rounding parse_rounding(std::string_view text);
std::string_view to_string(Rounding rounding);

// Shortest decimal form that reads back to the same double.
std::string format_cost(double value);

} // namespace pdtsp

#endif
