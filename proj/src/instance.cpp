#include "pdtsp/instance.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace pdtsp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
      ++j;
    }
    if (j > i) {
      tokens.push_back(s.substr(i, j - i));
    }
    i = j;
  }
  return tokens;
}

std::optional<double> to_double(std::string_view token) {
  double value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    return std::nullopt;
  }
  return value;
}

std::optional<long long> to_integer(std::string_view token) {
  long long value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    return std::nullopt;
  }
  return value;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

// Non-blank lines with their 1-based line numbers.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++number;
    auto line = trim(text.substr(start, end - start));
    if (!line.empty()) {
      lines.push_back({number, line});
    }
    start = end + 1;
  }
  return lines;
}

Cost rounded_distance(double dx, double dy) {
  const double squared = dx * dx + dy * dy;
  double r = std::floor(std::sqrt(squared));
  while (r > 0 && r * r > squared) {
    r -= 1;
  }
  while ((r + 1) * (r + 1) <= squared) {
    r += 1;
  }
  // Half-up: round to r+1 iff d >= r + 1/2, i.e. 4 d^2 >= (2r+1)^2.
  return (4 * squared >= (2 * r + 1) * (2 * r + 1)) ? r + 1 : r;
}

} // namespace

std::string format_cost(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

Instance::Instance(std::string name,
                   std::size_t n_pairs,
                   std::vector<Cost> matrix,
                   const Pairing& pairing,
                   TourMode mode,
                   Rounding rounding,
                   std::optional<Coordinates> coordinates)
  : name_(std::move(name)),
    n_pairs_(n_pairs),
    matrix_(std::move(matrix)),
    mode_(mode),
    rounding_(rounding),
    coordinates_(std::move(coordinates)) {
  if (n_pairs_ == 0) {
    throw InputError("instance needs at least one pickup-delivery pair");
  }
  const std::size_t n_visits = 2 * n_pairs_ + 1;
  partner_.assign(n_visits + 1, -1);
  if (pairing.size() != n_pairs_) {
    throw InputError("expected " + std::to_string(n_pairs_) + " pairs, got " +
                     std::to_string(pairing.size()));
  }
  for (const auto& [pickup, delivery] : pairing) {
    if (pickup == delivery) {
      throw InputError("pairing is not an involution: visit " +
                       std::to_string(pickup) + " paired with itself");
    }
    if (!is_pickup(pickup) || !is_delivery(delivery)) {
      throw InputError("pair (" + std::to_string(pickup) + ", " +
                       std::to_string(delivery) +
                       ") must pair a pickup in 1..n with a delivery in "
                       "n+1..2n");
    }
    if (partner_[pickup] != -1 || partner_[delivery] != -1) {
      throw InputError("pairing is not an involution: visit " +
                       std::to_string(partner_[pickup] != -1 ? pickup
                                                             : delivery) +
                       " appears in two pairs");
    }
    partner_[pickup] = delivery;
    partner_[delivery] = pickup;
  }
  validate_and_extend();
}

Instance Instance::from_coordinates(std::string name,
                                    Coordinates coordinates,
                                    const Pairing& pairing,
                                    TourMode mode,
                                    Rounding rounding) {
  if (coordinates.size() < 3 || coordinates.size() % 2 == 0) {
    throw InputError("coordinate count must be 2n+1 with n >= 1");
  }
  auto matrix = build_cost_matrix(coordinates, rounding);
  const std::size_t n = (coordinates.size() - 1) / 2;
  return Instance(std::move(name),
                  n,
                  std::move(matrix),
                  pairing,
                  mode,
                  rounding,
                  std::move(coordinates));
}

void Instance::validate_and_extend() {
  const std::size_t n = n_visits();
  if (matrix_.size() != n * n) {
    throw InputError("cost matrix must be " + std::to_string(n) + "x" +
                     std::to_string(n));
  }
  if (coordinates_ && coordinates_->size() != n) {
    throw InputError("expected " + std::to_string(n) + " coordinates");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i * n + i] != 0) {
      throw InputError("cost matrix diagonal must be zero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Cost c = matrix_[i * n + j];
      if (!std::isfinite(c) || c < 0) {
        throw InputError("cost matrix entries must be finite and >= 0");
      }
      if (c != matrix_[j * n + i]) {
        throw InputError("cost matrix is not symmetric at (" +
                         std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (c != std::floor(c)) {
        integral_ = false;
      }
    }
  }

  stride_ = n + 1;
  extended_.assign(stride_ * stride_, 0);
  const auto t = static_cast<std::size_t>(terminal());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      extended_[i * stride_ + j] = matrix_[i * n + j];
    }
    const Cost back = (mode_ == TourMode::closed) ? matrix_[i * n] : 0;
    extended_[i * stride_ + t] = back;
    extended_[t * stride_ + i] = back;
  }

  location_.resize(n + 1);
  if (coordinates_) {
    std::map<std::pair<double, double>, int> keys;
    for (std::size_t v = 0; v < n; ++v) {
      const auto& p = coordinates_->points[v];
      auto [it, inserted] =
        keys.emplace(std::make_pair(p.x, p.y), static_cast<int>(keys.size()));
      location_[v] = it->second;
    }
  } else {
    std::iota(location_.begin(), location_.end(), 0);
  }
  location_[t] = location_[0];
}

Pairing Instance::pairing() const {
  Pairing result;
  result.reserve(n_pairs_);
  for (Visit p = 1; p <= static_cast<Visit>(n_pairs_); ++p) {
    result.emplace_back(p, partner_[p]);
  }
  return result;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.name_ == b.name_ && a.n_pairs_ == b.n_pairs_ &&
         a.matrix_ == b.matrix_ && a.mode_ == b.mode_ &&
         a.rounding_ == b.rounding_ && a.coordinates_ == b.coordinates_ &&
         a.partner_ == b.partner_;
}

std::vector<Cost> build_cost_matrix(const Coordinates& coordinates,
                                    Rounding rounding) {
  const auto& pts = coordinates.points;
  if (pts.size() < 2) {
    throw InputError("need at least 2 points");
  }
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("non-finite coordinate");
    }
  }
  const std::size_t n = pts.size();
  std::vector<Cost> matrix(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      const Cost d = (rounding == Rounding::nearest) ? rounded_distance(dx, dy)
                                                     : std::hypot(dx, dy);
      matrix[i * n + j] = d;
      matrix[j * n + i] = d;
    }
  }
  return matrix;
}

Instance parse_instance(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t k = 0;

  std::optional<std::string> name;
  std::optional<std::size_t> n_pairs;
  std::optional<TourMode> mode;
  std::optional<Rounding> rounding;
  std::optional<EdgeSource> source;

  auto fail = [](const Line& line, const std::string& message) {
    throw ParseError(line.number, message);
  };
  const std::size_t last_line = lines.empty() ? 1 : lines.back().number;

  // Header.
  for (; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const auto tokens = split_ws(line.text);
    const auto key = tokens[0];
    if (key == "COORDS" || key == "MATRIX") {
      break;
    }
    if (tokens.size() != 2) {
      fail(line, "malformed header line '" + std::string(line.text) + "'");
    }
    const auto value = tokens[1];
    try {
      if (key == "NAME") {
        name = std::string(value);
      } else if (key == "PAIRS") {
        auto v = to_integer(value);
        if (!v || *v < 1) {
          fail(line, "PAIRS must be a positive integer");
        }
        n_pairs = static_cast<std::size_t>(*v);
      } else if (key == "MODE") {
        mode = parse_mode(value);
      } else if (key == "ROUNDING") {
        rounding = parse_rounding(value);
      } else if (key == "EDGE_SOURCE") {
        if (value == "coords") {
          source = EdgeSource::coords;
        } else if (value == "matrix") {
          source = EdgeSource::matrix;
        } else {
          fail(line, "EDGE_SOURCE must be coords or matrix");
        }
      } else {
        fail(line, "unknown header key '" + std::string(key) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      fail(line, e.what());
    }
  }
  const std::size_t header_end =
    k < lines.size() ? lines[k].number : last_line;
  if (!name || !n_pairs || !mode || !rounding || !source) {
    throw ParseError(header_end,
                     "header must define NAME, PAIRS, MODE, ROUNDING and "
                     "EDGE_SOURCE");
  }
  if (k == lines.size()) {
    throw ParseError(last_line, "missing COORDS or MATRIX section");
  }

  const std::size_t n_visits = 2 * *n_pairs + 1;
  const auto& section = lines[k];
  const bool coords_section = split_ws(section.text)[0] == "COORDS";
  if (coords_section != (*source == EdgeSource::coords)) {
    fail(section, "section does not match EDGE_SOURCE");
  }
  ++k;

  std::optional<Coordinates> coordinates;
  std::vector<Cost> matrix;
  if (coords_section) {
    coordinates.emplace();
    for (std::size_t v = 0; v < n_visits; ++v, ++k) {
      if (k == lines.size()) {
        throw ParseError(last_line, "truncated COORDS section");
      }
      const auto tokens = split_ws(lines[k].text);
      if (tokens.size() != 3) {
        fail(lines[k], "expected '<index> <x> <y>'");
      }
      auto index = to_integer(tokens[0]);
      auto x = to_double(tokens[1]);
      auto y = to_double(tokens[2]);
      if (!index || !x || !y) {
        fail(lines[k], "malformed coordinate line");
      }
      if (*index != static_cast<long long>(v)) {
        fail(lines[k], "expected coordinate index " + std::to_string(v));
      }
      if (!std::isfinite(*x) || !std::isfinite(*y)) {
        fail(lines[k], "non-finite coordinate");
      }
      coordinates->points.push_back({*x, *y});
    }
    matrix = build_cost_matrix(*coordinates, *rounding);
  } else {
    matrix.assign(n_visits * n_visits, 0);
    for (std::size_t i = 0; i < n_visits; ++i, ++k) {
      if (k == lines.size()) {
        throw ParseError(last_line, "truncated MATRIX section");
      }
      const auto tokens = split_ws(lines[k].text);
      if (tokens.size() != n_visits) {
        fail(lines[k], "expected " + std::to_string(n_visits) + " entries");
      }
      for (std::size_t j = 0; j < n_visits; ++j) {
        auto value = to_double(tokens[j]);
        if (!value || !std::isfinite(*value) || *value < 0) {
          fail(lines[k], "matrix entries must be finite and >= 0");
        }
        matrix[i * n_visits + j] = *value;
      }
      if (matrix[i * n_visits + i] != 0) {
        fail(lines[k], "matrix diagonal must be zero");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (matrix[i * n_visits + j] != matrix[j * n_visits + i]) {
          fail(lines[k],
               "matrix is not symmetric at (" + std::to_string(i) + ", " +
                 std::to_string(j) + ")");
        }
      }
    }
  }

  if (k == lines.size() || lines[k].text != "PAIRING") {
    throw ParseError(k < lines.size() ? lines[k].number : last_line,
                     "expected PAIRING section");
  }
  ++k;
  Pairing pairing;
  std::vector<bool> used(n_visits, false);
  for (std::size_t p = 0; p < *n_pairs; ++p, ++k) {
    if (k == lines.size()) {
      throw ParseError(last_line, "truncated PAIRING section");
    }
    const auto& line = lines[k];
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 2) {
      fail(line, "expected '<pickup> <delivery>'");
    }
    auto pickup = to_integer(tokens[0]);
    auto delivery = to_integer(tokens[1]);
    if (!pickup || !delivery) {
      fail(line, "malformed pairing line");
    }
    const auto max_visit = static_cast<long long>(2 * *n_pairs);
    if (*pickup < 1 || *pickup > max_visit || *delivery < 1 ||
        *delivery > max_visit) {
      fail(line, "pair index out of range 1.." + std::to_string(max_visit));
    }
    if (*pickup == *delivery) {
      fail(line,
           "pairing is not an involution: visit " + std::to_string(*pickup) +
             " paired with itself");
    }
    if (used[*pickup] || used[*delivery]) {
      fail(line,
           "pairing is not an involution: visit " +
             std::to_string(used[*pickup] ? *pickup : *delivery) +
             " appears in two pairs");
    }
    if (*pickup > static_cast<long long>(*n_pairs) ||
        *delivery <= static_cast<long long>(*n_pairs)) {
      fail(line, "pickups must be in 1..n and deliveries in n+1..2n");
    }
    used[*pickup] = used[*delivery] = true;
    pairing.emplace_back(static_cast<Visit>(*pickup),
                         static_cast<Visit>(*delivery));
  }
  if (k == lines.size() || lines[k].text != "EOF") {
    throw ParseError(k < lines.size() ? lines[k].number : last_line,
                     "expected EOF terminator");
  }

  try {
    return Instance(std::move(*name),
                    *n_pairs,
                    std::move(matrix),
                    pairing,
                    *mode,
                    *rounding,
                    std::move(coordinates));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(lines[k].number, e.what());
  }
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read instance file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string render_instance(const Instance& instance) {
  std::ostringstream out;
  out << "NAME " << instance.name() << '\n';
  out << "PAIRS " << instance.n_pairs() << '\n';
  out << "MODE " << to_string(instance.mode()) << '\n';
  out << "ROUNDING " << to_string(instance.rounding()) << '\n';
  const auto n = instance.n_visits();
  if (instance.coordinates()) {
    out << "EDGE_SOURCE coords\nCOORDS\n";
    const auto& pts = instance.coordinates()->points;
    for (std::size_t v = 0; v < n; ++v) {
      out << v << ' ' << format_cost(pts[v].x) << ' ' << format_cost(pts[v].y)
          << '\n';
    }
  } else {
    out << "EDGE_SOURCE matrix\nMATRIX\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out << (j ? " " : "")
            << format_cost(instance.cost(static_cast<Visit>(i),
                                         static_cast<Visit>(j)));
      }
      out << '\n';
    }
  }
  out << "PAIRING\n";
  for (const auto& [p, d] : instance.pairing()) {
    out << p << ' ' << d << '\n';
  }
  out << "EOF\n";
  return out.str();
}

Coordinates parse_tsplib_coordinates(std::string_view text) {
  const auto lines = content_lines(text);
  Coordinates coords;
  bool in_section = false;
  for (const auto& line : lines) {
    if (!in_section) {
      if (line.text.starts_with("NODE_COORD_SECTION")) {
        in_section = true;
      }
      continue;
    }
    if (line.text == "EOF") {
      break;
    }
    const auto tokens = split_ws(line.text);
    if (tokens.size() != 3) {
      break;
    }
    auto x = to_double(tokens[1]);
    auto y = to_double(tokens[2]);
    if (!to_integer(tokens[0]) || !x || !y) {
      throw ParseError(line.number, "malformed node coordinate line");
    }
    coords.points.push_back({*x, *y});
  }
  if (!in_section) {
    throw ParseError(lines.empty() ? 1 : lines.back().number,
                     "missing NODE_COORD_SECTION");
  }
  if (coords.size() < 2) {
    throw InputError("need at least 2 coordinates");
  }
  return coords;
}

Coordinates random_coordinates(std::size_t count, Rng& rng, int extent) {
  std::uniform_int_distribution<int> coord(0, extent - 1);
  Coordinates coords;
  coords.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    coords.points.push_back({x, y});
  }
  return coords;
}

Instance generate_pairs(const Coordinates& coordinates,
                        PairGroup group,
                        Rng& rng,
                        std::string name,
                        TourMode mode,
                        Rounding rounding) {
  const std::size_t count = coordinates.size();
  if (count < 3 || count % 2 == 0) {
    throw InputError("pair generation needs an even number of non-depot "
                     "points (got " +
                     std::to_string(count == 0 ? 0 : count - 1) + ")");
  }
  for (const auto& p : coordinates.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InputError("non-finite coordinate");
    }
  }
  const std::size_t n = (count - 1) / 2;
  const std::size_t limit =
    group == PairGroup::A ? 5 : (group == PairGroup::B ? 10 : count);
  const auto& pts = coordinates.points;
  auto squared = [&](std::size_t a, std::size_t b) {
    const double dx = pts[a].x - pts[b].x;
    const double dy = pts[a].y - pts[b].y;
    return dx * dx + dy * dy;
  };

  std::vector<bool> assigned(count, false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> candidates;
  for (std::size_t v = 1; v < count; ++v) {
    if (assigned[v]) {
      continue;
    }
    assigned[v] = true;
    candidates.clear();
    for (std::size_t u = 1; u < count; ++u) {
      if (!assigned[u]) {
        candidates.push_back(u);
      }
    }
    if (candidates.empty()) {
      throw InputError("pair generation ran out of candidate deliveries");
    }
    const std::size_t keep = std::min(limit, candidates.size());
    std::partial_sort(candidates.begin(),
                      candidates.begin() + keep,
                      candidates.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double da = squared(v, a);
                        const double db = squared(v, b);
                        return da < db || (da == db && a < b);
                      });
    std::uniform_int_distribution<std::size_t> pick(0, keep - 1);
    const std::size_t delivery = candidates[pick(rng)];
    assigned[delivery] = true;
    pairs.emplace_back(v, delivery);
  }

  Coordinates relabelled;
  relabelled.points.resize(count);
  relabelled.points[0] = pts[0];
  Pairing pairing;
  for (std::size_t i = 0; i < n; ++i) {
    relabelled.points[i + 1] = pts[pairs[i].first];
    relabelled.points[i + 1 + n] = pts[pairs[i].second];
    pairing.emplace_back(static_cast<Visit>(i + 1),
                         static_cast<Visit>(i + 1 + n));
  }
  return Instance::from_coordinates(std::move(name),
                                    std::move(relabelled),
                                    pairing,
                                    mode,
                                    rounding);
}

PairGroup parse_group(std::string_view text) {
  if (text == "A" || text == "a") {
    return PairGroup::A;
  }
  if (text == "B" || text == "b") {
    return PairGroup::B;
  }
  if (text == "C" || text == "c") {
    return PairGroup::C;
  }
  throw InputError("group must be A, B or C");
}

std::string_view to_string(PairGroup group) {
  switch (group) {
  case PairGroup::A:
    return "A";
  case PairGroup::B:
    return "B";
  case PairGroup::C:
    return "C";
  }
  return "?";
}

TourMode parse_mode(std::string_view text) {
  if (text == "closed") {
    return TourMode::closed;
  }
  if (text == "open") {
    return TourMode::open;
  }
  throw InputError("mode must be closed or open");
}

std::string_view to_string(TourMode mode) {
  return mode == TourMode::closed ? "closed" : "open";
}

Rounding parse_rounding(std::string_view text) {
  if (text == "none") {
    return Rounding::none;
  }
  if (text == "nearest") {
    return Rounding::nearest;
  }
  throw InputError("rounding must be none or nearest");
}

std::string_view to_string(Rounding rounding) {
  return rounding == Rounding::none ? "none" : "nearest";
}

} // namespace pdtsp
