#include "pdtsp/neighborhoods.h"

#include <algorithm>

namespace pdtsp {

Cost two_opt_d_delta(const Instance& instance,
                     std::span<const Visit> s,
                     Index i,
                     Index j) {
  return instance.dist(s[i], s[j + 1]) + instance.dist(s[i + 1], s[j]) -
         instance.dist(s[i], s[i + 1]) - instance.dist(s[j], s[j + 1]);
}

Cost two_opt_c_delta(const Instance& instance,
                     std::span<const Visit> s,
                     Index i,
                     Index j) {
  return instance.dist(s[i], s[j]) + instance.dist(s[i + 1], s[j + 1]) -
         instance.dist(s[i], s[i + 1]) - instance.dist(s[j], s[j + 1]);
}

namespace {

Cost two_opt_x_delta(const Instance& instance,
                     std::span<const Visit> s,
                     int x,
                     Index i,
                     Index j) {
  return x == CONNECTING ? two_opt_c_delta(instance, s, i, j)
                         : two_opt_d_delta(instance, s, i, j);
}

// Advances row i2-1 of Phi_sub to row i2, in place, for j1 in
// i2+1..max_j1: min over i1 < i2 of the 2-opt cost (i1, j1). Smaller i1
// wins ties.
void advance_phi_sub(const Instance& instance,
                     std::span<const Visit> s,
                     int x,
                     Index i2,
                     Index max_j1,
                     std::span<Cost> value,
                     std::span<Index> arg) {
  for (Index j1 = i2 + 1; j1 <= max_j1; ++j1) {
    const Cost candidate = two_opt_x_delta(instance, s, x, i2 - 1, j1);
    if (i2 == 1 || candidate < value[j1]) {
      value[j1] = candidate;
      arg[j1] = i2 - 1;
    }
  }
}

struct Candidate {
  MoveKind kind;
  Cost delta;
  Index i1;
  Index j1;
};

} // namespace

PhiTables build_phi_tables(const Instance& instance,
                           std::span<const Visit> s) {
  const auto size = s.size();
  const auto n = static_cast<Index>(size);
  PhiTables t;
  t.size = size;
  for (int x = 0; x < 2; ++x) {
    t.sub[x].assign(size * size, INFINITE_COST);
    t.sub_arg[x].assign(size * size, -1);
    t.full[x].assign(size * size, INFINITE_COST);
    t.full_i1[x].assign(size * size, -1);
    t.full_j1[x].assign(size * size, -1);
  }
  const Index max_j2 = n - 2;
  std::vector<Cost> row(size, INFINITE_COST);
  std::vector<Index> row_arg(size, -1);
  for (int x = 0; x < 2; ++x) {
    for (Index i2 = 1; i2 + 2 <= max_j2; ++i2) {
      advance_phi_sub(instance, s, x, i2, max_j2 - 1, row, row_arg);
      const auto base = static_cast<std::size_t>(i2) * size;
      std::copy(row.begin() + i2 + 1,
                row.begin() + max_j2,
                t.sub[x].begin() + base + i2 + 1);
      std::copy(row_arg.begin() + i2 + 1,
                row_arg.begin() + max_j2,
                t.sub_arg[x].begin() + base + i2 + 1);
      for (Index j2 = i2 + 2; j2 <= max_j2; ++j2) {
        const Index j1 = j2 - 1;
        const auto at = base + j2;
        if (j2 == i2 + 2 || row[j1] < t.full[x][at - 1]) {
          t.full[x][at] = row[j1];
          t.full_i1[x][at] = row_arg[j1];
          t.full_j1[x][at] = j1;
        } else {
          t.full[x][at] = t.full[x][at - 1];
          t.full_i1[x][at] = t.full_i1[x][at - 1];
          t.full_j1[x][at] = t.full_j1[x][at - 1];
        }
      }
    }
  }
  return t;
}

RevLastTables build_rev_last_tables(const Instance& instance,
                                    const Tour& tour) {
  const auto& s = tour.seq;
  const auto size = s.size();
  const auto n = static_cast<Index>(size);
  RevLastTables t;
  t.size = size;
  t.rev.assign(size * size, 1);
  t.last.assign(size * size, -1);
  for (Index i = 0; i < n; ++i) {
    const auto base = static_cast<std::size_t>(i) * size;
    for (Index j = i; j < n; ++j) {
      const Visit v = s[j];
      Index pick = -1;
      bool closes_request = false;
      if (instance.is_delivery(v)) {
        const Index p = tour.pos[instance.partner(v)];
        if (p >= i && p < j) {
          closes_request = true;
        } else if (p < i) {
          pick = p;
        }
      }
      if (j == i) {
        t.rev[base + j] = 1;
        t.last[base + j] = pick;
      } else {
        t.rev[base + j] = t.rev[base + j - 1] && !closes_request;
        t.last[base + j] = std::max(t.last[base + j - 1], pick);
      }
    }
  }
  return t;
}

bool four_opt_feasible(const RevLastTables& t,
                       MoveKind kind,
                       Index i1,
                       Index i2,
                       Index j1,
                       Index j2) {
  // Blocks: p2 = i1+1..i2, p3 = i2+1..j1, p4 = j1+1..j2; |p1| = i1 + 1.
  switch (kind) {
  case MoveKind::four_opt_type1:
    // p1 p4 p3 p2 p5
    return t.last_pickup(j1 + 1, j2) <= i1 && t.last_pickup(i2 + 1, j1) <= i1;
  case MoveKind::four_opt_type2a:
    // p1 r(p3) r(p4) p2 p5
    return t.reversible(i2 + 1, j1) && t.reversible(j1 + 1, j2) &&
           t.last_pickup(i2 + 1, j2) <= i1;
  case MoveKind::four_opt_type2b:
    // p1 p4 r(p2) r(p3) p5
    return t.reversible(i1 + 1, i2) && t.reversible(i2 + 1, j1) &&
           t.last_pickup(j1 + 1, j2) <= i1;
  default:
    return false;
  }
}

namespace {

template <class Visitor>
void scan_four_opt(const Instance& instance,
                   const Tour& tour,
                   Workspace& ws,
                   Visitor&& visit) {
  const auto& s = tour.seq;
  const auto size = s.size();
  const auto n = static_cast<Index>(size);
  const Index max_j2 = n - 2;
  for (int x = 0; x < 2; ++x) {
    ws.phi_sub[x].assign(size, INFINITE_COST);
    ws.phi_sub_arg[x].assign(size, -1);
  }
  for (Index i2 = 1; i2 + 2 <= max_j2; ++i2) {
    for (int x = 0; x < 2; ++x) {
      advance_phi_sub(
        instance, s, x, i2, max_j2 - 1, ws.phi_sub[x], ws.phi_sub_arg[x]);
    }
    Cost phi[2] = {INFINITE_COST, INFINITE_COST};
    Index phi_j1[2] = {-1, -1};
    for (Index j2 = i2 + 2; j2 <= max_j2; ++j2) {
      for (int x = 0; x < 2; ++x) {
        if (j2 == i2 + 2 || ws.phi_sub[x][j2 - 1] < phi[x]) {
          phi[x] = ws.phi_sub[x][j2 - 1];
          phi_j1[x] = j2 - 1;
        }
      }
      const Cost d22 = two_opt_d_delta(instance, s, i2, j2);
      const Cost c22 = two_opt_c_delta(instance, s, i2, j2);
      const Index jd = phi_j1[DISCONNECTING];
      const Index jc = phi_j1[CONNECTING];
      const Candidate candidates[3] = {
        {MoveKind::four_opt_type1,
         d22 + phi[DISCONNECTING],
         ws.phi_sub_arg[DISCONNECTING][jd],
         jd},
        {MoveKind::four_opt_type2a,
         d22 + phi[CONNECTING],
         ws.phi_sub_arg[CONNECTING][jc],
         jc},
        {MoveKind::four_opt_type2b,
         c22 + phi[DISCONNECTING],
         ws.phi_sub_arg[DISCONNECTING][jd],
         jd},
      };
      if (!visit(i2, j2, candidates)) {
        return;
      }
    }
  }
}

} // namespace

MoveDelta four_opt_best(const Instance& instance,
                        const Tour& tour,
                        Workspace& ws) {
  MoveDelta best;
  best.delta = 0;
  const auto size = tour.seq.size();
  if (size < 6) {
    best.delta = INFINITE_COST;
    return best;
  }
  RevLastTables tables = build_rev_last_tables(instance, tour);
  scan_four_opt(instance,
                tour,
                ws,
                [&](Index i2, Index j2, const Candidate (&candidates)[3]) {
                  for (const auto& c : candidates) {
                    if (improves(c.delta) && c.delta < best.delta &&
                        four_opt_feasible(tables, c.kind, c.i1, i2, c.j1, j2)) {
                      best.kind = c.kind;
                      best.indices = {c.i1, i2, c.j1, j2};
                      best.delta = c.delta;
                      best.feasible = true;
                    }
                  }
                  return true;
                });
  if (best.kind == MoveKind::none) {
    best.delta = INFINITE_COST;
  }
  return best;
}

MoveDelta four_opt_best(const Instance& instance, const Tour& tour) {
  Workspace ws;
  return four_opt_best(instance, tour, ws);
}

MoveDelta four_opt_best_type1_unconstrained(const Instance& instance,
                                            const Tour& tour,
                                            Workspace& ws) {
  MoveDelta best;
  if (tour.seq.size() < 6) {
    return best;
  }
  scan_four_opt(instance,
                tour,
                ws,
                [&](Index i2, Index j2, const Candidate (&candidates)[3]) {
                  const auto& c = candidates[0];
                  if (c.delta < best.delta) {
                    best.kind = c.kind;
                    best.indices = {c.i1, i2, c.j1, j2};
                    best.delta = c.delta;
                    best.feasible = false;
                  }
                  return true;
                });
  return best;
}

} // namespace pdtsp
