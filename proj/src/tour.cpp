#include "pdtsp/tour.h"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace pdtsp {

void Tour::refresh(const Instance& instance) {
  pos.assign(seq.size(), -1);
  for (Index k = 0; k < static_cast<Index>(seq.size()); ++k) {
    pos[seq[k]] = k;
  }
  cost = tour_cost(instance, seq);
}

bool is_tour_sequence(const Instance& instance, std::span<const Visit> seq) {
  const auto len = instance.sequence_length();
  if (seq.size() != len || seq.front() != 0 ||
      seq.back() != instance.terminal()) {
    return false;
  }
  std::vector<bool> seen(len, false);
  for (std::size_t k = 1; k + 1 < len; ++k) {
    const Visit v = seq[k];
    if (v < 1 || v >= instance.terminal() || seen[v]) {
      return false;
    }
    seen[v] = true;
  }
  return true;
}

Tour make_tour(const Instance& instance, std::vector<Visit> visits) {
  const auto len = instance.sequence_length();
  const Visit terminal = instance.terminal();
  if (visits.size() == len && !visits.empty() && visits.back() == 0) {
    visits.back() = terminal;
  } else if (visits.size() == len - 1) {
    visits.push_back(terminal);
  }
  if (!is_tour_sequence(instance, visits)) {
    throw InputError("sequence is not a tour over visits 1.." +
                     std::to_string(2 * instance.n_pairs()) +
                     " anchored at the depot");
  }
  Tour tour;
  tour.seq = std::move(visits);
  tour.refresh(instance);
  return tour;
}

std::vector<Visit> external_visits(const Instance& instance,
                                   const Tour& tour) {
  std::vector<Visit> out(tour.seq.begin(), tour.seq.end());
  if (instance.mode() == TourMode::closed) {
    out.back() = 0;
  } else {
    out.pop_back();
  }
  return out;
}

Cost tour_cost(const Instance& instance, std::span<const Visit> seq) {
  Cost total = 0;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    total += instance.dist(seq[k], seq[k + 1]);
  }
  return total;
}

bool check_precedence(const Instance& instance, std::span<const Visit> seq) {
  std::vector<bool> placed(instance.sequence_length(), false);
  for (const Visit v : seq) {
    if (instance.is_delivery(v) && !placed[instance.partner(v)]) {
      return false;
    }
    placed[v] = true;
  }
  return true;
}

std::string_view to_string(MoveKind kind) {
  switch (kind) {
  case MoveKind::none:
    return "none";
  case MoveKind::relocate_pair:
    return "relocate-pair";
  case MoveKind::two_opt:
    return "2opt";
  case MoveKind::or_opt:
    return "or-opt";
  case MoveKind::two_k_opt:
    return "2k-opt";
  case MoveKind::four_opt_type1:
    return "4opt-type1";
  case MoveKind::four_opt_type2a:
    return "4opt-type2a";
  case MoveKind::four_opt_type2b:
    return "4opt-type2b";
  case MoveKind::balas_simonetti:
    return "bs";
  }
  return "?";
}

namespace {

void check_range(bool ok, MoveKind kind) {
  if (!ok) {
    throw Exception("move indices out of range for " +
                    std::string(to_string(kind)));
  }
}

void splice_relocate(std::vector<Visit>& seq, const MoveDelta& move) {
  const auto [x, ip, jp, d] = move.indices;
  std::vector<Visit> reduced;
  reduced.reserve(seq.size());
  for (const Visit v : seq) {
    if (v != x && v != d) {
      reduced.push_back(v);
    }
  }
  const auto last = static_cast<Index>(reduced.size()) - 1;
  check_range(reduced.size() + 2 == seq.size() && 0 <= ip && ip <= jp &&
                jp < last,
              move.kind);
  seq.clear();
  for (Index k = 0; k <= last; ++k) {
    seq.push_back(reduced[k]);
    if (k == ip) {
      seq.push_back(x);
    }
    if (k == jp) {
      seq.push_back(d);
    }
  }
}

void splice_or_opt(std::vector<Visit>& seq, const MoveDelta& move) {
  const auto [first, last, after, unused] = move.indices;
  const auto size = static_cast<Index>(seq.size());
  check_range(1 <= first && first <= last && last < size - 1 && 0 <= after &&
                after < size - 1 && (after < first - 1 || after > last),
              move.kind);
  const Index len = last - first + 1;
  auto b = seq.begin();
  if (after < first) {
    std::rotate(b + after + 1, b + first, b + last + 1);
    if (move.reversed) {
      std::reverse(b + after + 1, b + after + 1 + len);
    }
  } else {
    std::rotate(b + first, b + last + 1, b + after + 1);
    if (move.reversed) {
      std::reverse(b + after + 1 - len, b + after + 1);
    }
  }
}

void splice_four_opt(std::vector<Visit>& seq, const MoveDelta& move) {
  const auto [i1, i2, j1, j2] = move.indices;
  const auto size = static_cast<Index>(seq.size());
  check_range(0 <= i1 && i1 < i2 && i2 < j1 && j1 < j2 && j2 < size - 1,
              move.kind);
  auto b = seq.begin();
  std::vector<Visit> out(b, b + i1 + 1);
  auto append = [&](Index from, Index to, bool reversed) {
    if (reversed) {
      out.insert(out.end(),
                 std::make_reverse_iterator(b + to + 1),
                 std::make_reverse_iterator(b + from));
    } else {
      out.insert(out.end(), b + from, b + to + 1);
    }
  };
  switch (move.kind) {
  case MoveKind::four_opt_type1:
    append(j1 + 1, j2, false);
    append(i2 + 1, j1, false);
    append(i1 + 1, i2, false);
    break;
  case MoveKind::four_opt_type2a:
    append(i2 + 1, j1, true);
    append(j1 + 1, j2, true);
    append(i1 + 1, i2, false);
    break;
  default:
    append(j1 + 1, j2, false);
    append(i1 + 1, i2, true);
    append(i2 + 1, j1, true);
    break;
  }
  append(j2 + 1, size - 1, false);
  seq = std::move(out);
}

void splice_chain(std::vector<Visit>& seq, const MoveDelta& move) {
  const auto size = static_cast<Index>(seq.size());
  const std::vector<Visit> original = seq;
  const Visit max_visit = *std::max_element(seq.begin(), seq.end());
  std::vector<Index> pos(max_visit + 1);
  for (Index k = 0; k < size; ++k) {
    pos[seq[k]] = k;
  }
  Index outer_i = -1;
  Index outer_j = size;
  for (const auto& [i, j] : move.chain) {
    check_range(outer_i < i && j < outer_j && i + 2 <= j && 0 <= i &&
                  j < size,
                move.kind);
    if (i + 2 == j) {
      outer_i = i;
      outer_j = j;
      continue;
    }
    // The original block i+1..j-1 is contiguous in the current sequence,
    // possibly mirrored by the enclosing reversals.
    const Index a = pos[original[i + 1]];
    const Index c = pos[original[j - 1]];
    const Index lo = std::min(a, c);
    const Index hi = std::max(a, c);
    std::reverse(seq.begin() + lo, seq.begin() + hi + 1);
    for (Index k = lo; k <= hi; ++k) {
      pos[seq[k]] = k;
    }
    outer_i = i;
    outer_j = j;
  }
}

} // namespace

void splice_move(std::vector<Visit>& seq, const MoveDelta& move) {
  switch (move.kind) {
  case MoveKind::none:
    return;
  case MoveKind::relocate_pair:
    splice_relocate(seq, move);
    return;
  case MoveKind::two_opt: {
    const auto i = move.indices[0];
    const auto j = move.indices[1];
    check_range(0 <= i && i + 2 <= j && j < static_cast<Index>(seq.size()),
                move.kind);
    std::reverse(seq.begin() + i + 1, seq.begin() + j);
    return;
  }
  case MoveKind::or_opt:
    splice_or_opt(seq, move);
    return;
  case MoveKind::two_k_opt:
    splice_chain(seq, move);
    return;
  case MoveKind::four_opt_type1:
  case MoveKind::four_opt_type2a:
  case MoveKind::four_opt_type2b:
    splice_four_opt(seq, move);
    return;
  case MoveKind::balas_simonetti:
    check_range(move.sequence.size() == seq.size(), move.kind);
    seq = move.sequence;
    return;
  }
}

void apply_move_unchecked(const Instance& instance,
                          Tour& tour,
                          const MoveDelta& move) {
  splice_move(tour.seq, move);
  tour.refresh(instance);
}

void apply_move(const Instance& instance, Tour& tour, const MoveDelta& move) {
  if (!move.feasible) {
    throw Exception("refusing to apply an infeasible " +
                    std::string(to_string(move.kind)) + " move");
  }
  apply_move_unchecked(instance, tour, move);
}

std::string render_solution(const Instance& instance, const Tour& tour) {
  std::ostringstream out;
  out << "COST " << format_cost(tour.cost) << "\nTOUR";
  for (const Visit v : external_visits(instance, tour)) {
    out << ' ' << v;
  }
  out << '\n';
  return out.str();
}

SolutionRecord parse_solution(std::string_view text) {
  std::istringstream in{std::string(text)};
  SolutionRecord record;
  std::string line;
  bool have_cost = false;
  bool have_tour = false;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) {
      continue;
    }
    if (key == "COST") {
      if (!(fields >> record.cost)) {
        throw ParseError(number, "malformed COST line");
      }
      have_cost = true;
    } else if (key == "TOUR") {
      Visit v = 0;
      while (fields >> v) {
        record.visits.push_back(v);
      }
      if (!fields.eof()) {
        throw ParseError(number, "malformed TOUR line");
      }
      have_tour = true;
    } else {
      throw ParseError(number, "unknown solution key '" + key + "'");
    }
  }
  if (!have_cost || !have_tour) {
    throw ParseError(number, "solution needs COST and TOUR lines");
  }
  return record;
}

} // namespace pdtsp
