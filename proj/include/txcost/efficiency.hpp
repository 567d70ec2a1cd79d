// Copyright 2026 The txcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TXCOST_EFFICIENCY_HPP_
#define TXCOST_EFFICIENCY_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/errors.hpp"
#include "txcost/grid.hpp"
#include "txcost/lp.hpp"
#include "txcost/model.hpp"

namespace txcost {

// One feasible pair projected to the three coordinates the frontier tests
// look at: the two direct costs and the loss fraction.
template <class R>
struct DecisionPoint {
  Cell cell;
  R cost1;
  R cost2;
  R loss;
};

enum class EliminationReason {
  duplicate_cost_higher_loss,  // same direct costs, no lower loss
  pareto_dominated,            // another point weakly better everywhere
  above_convex_hull,           // a convex mix of other points is better
};

inline std::string to_string(EliminationReason reason) {
  switch (reason) {
    case EliminationReason::duplicate_cost_higher_loss:
      return "duplicate-cost-higher-loss";
    case EliminationReason::pareto_dominated:
      return "pareto-dominated";
    case EliminationReason::above_convex_hull:
      return "above-convex-hull";
  }
  return "unknown";
}

template <class R>
struct HullWeight {
  Cell cell;
  R weight;
};

// Why a point left the frontier, with enough data to re-verify the claim:
// a dominating point for the dominance reasons, a convex weight vector for
// the hull reason.
template <class R>
struct Elimination {
  DecisionPoint<R> point;
  EliminationReason reason = EliminationReason::pareto_dominated;
  std::optional<Cell> dominator;
  std::vector<HullWeight<R>> weights;
};

template <class R>
struct RelevantSet {
  std::vector<DecisionPoint<R>> kept;
  std::vector<Elimination<R>> eliminated;
};

template <class R>
std::vector<DecisionPoint<R>> decision_points(const TransactionType<R>& t) {
  std::vector<DecisionPoint<R>> points;
  for (const Cell& c : t.feasible_cells())
    points.push_back({c, t.player1.costs[c.i], t.player2.costs[c.j],
                      t.loss_at(c.i, c.j)});
  return points;
}

namespace detail {

// q weakly improves on p in all three coordinates. Exact three-way ties are
// broken by grid order so that only the first copy survives.
template <class R>
bool dominates(const DecisionPoint<R>& q, const DecisionPoint<R>& p) {
  using A = arith<R>;
  if (!A::leq(q.cost1, p.cost1) || !A::leq(q.cost2, p.cost2) ||
      !A::leq(q.loss, p.loss))
    return false;
  bool strict = A::lt(q.cost1, p.cost1) || A::lt(q.cost2, p.cost2) ||
                A::lt(q.loss, p.loss);
  return strict || q.cell < p.cell;
}

}  // namespace detail

// Pairwise elimination: a point leaves when some other point matches or
// beats it on both direct costs and the loss fraction, strictly somewhere.
template <class R>
RelevantSet<R> dominance_filter(const std::vector<DecisionPoint<R>>& points) {
  RelevantSet<R> out;
  for (const auto& p : points) {
    std::optional<Cell> dominator;
    EliminationReason reason = EliminationReason::pareto_dominated;
    for (const auto& q : points) {
      if (q.cell == p.cell) continue;
      if (!detail::dominates(q, p)) continue;
      dominator = q.cell;
      reason = arith<R>::eq(q.cost1, p.cost1) && arith<R>::eq(q.cost2, p.cost2)
                   ? EliminationReason::duplicate_cost_higher_loss
                   : EliminationReason::pareto_dominated;
      break;
    }
    if (dominator)
      out.eliminated.push_back({p, reason, dominator, {}});
    else
      out.kept.push_back(p);
  }
  return out;
}

// DEA relevance test with the convexity row. A point leaves when some convex
// combination of the other points weakly improves all three coordinates and
// strictly improves at least one; the test maximizes the total slack, so a
// strictly positive optimum is exactly that witness. Scaling every loss by a
// common positive factor rescales the slack without changing its sign, which
// is why the frontier does not depend on the exposure.
template <class R>
RelevantSet<R> hull_relevance(const std::vector<DecisionPoint<R>>& points) {
  RelevantSet<R> out;
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<std::size_t> others;
    for (std::size_t q = 0; q < points.size(); ++q)
      if (q != p) others.push_back(q);

    bool eliminated = false;
    std::vector<HullWeight<R>> weights;
    if (!others.empty()) {
      const std::size_t k = others.size();
      // Columns: k mixing weights then three slack variables.
      Grid<R> a(4, k + 3, R(0));
      std::vector<R> b(4);
      for (std::size_t q = 0; q < k; ++q) {
        a.at(0, q) = points[others[q]].cost1;
        a.at(1, q) = points[others[q]].cost2;
        a.at(2, q) = points[others[q]].loss;
        a.at(3, q) = R(1);
      }
      for (std::size_t row = 0; row < 3; ++row) a.at(row, k + row) = R(1);
      b[0] = points[p].cost1;
      b[1] = points[p].cost2;
      b[2] = points[p].loss;
      b[3] = R(1);
      std::vector<R> c(k + 3, R(0));
      c[k] = c[k + 1] = c[k + 2] = R(1);

      LpResult<R> lp = solve_lp_max(a, b, c);
      if (lp.status == LpStatus::optimal &&
          arith<R>::gt(lp.objective, R(0))) {
        eliminated = true;
        for (std::size_t q = 0; q < k; ++q)
          if (arith<R>::gt(lp.x[q], R(0)))
            weights.push_back({points[others[q]].cell, lp.x[q]});
      }
    }
    if (eliminated)
      out.eliminated.push_back({points[p],
                                EliminationReason::above_convex_hull,
                                std::nullopt, std::move(weights)});
    else
      out.kept.push_back(points[p]);
  }
  return out;
}

// Dominance pass then hull pass; certificates from both passes are kept and
// the eliminated list is reported in grid order.
template <class R>
RelevantSet<R> relevant_set(const TransactionType<R>& t) {
  require_valid(t);
  auto points = decision_points(t);
  if (points.empty()) throw RequestError("no feasible choice pair");
  RelevantSet<R> first = dominance_filter(points);
  RelevantSet<R> second = hull_relevance(first.kept);

  RelevantSet<R> out;
  out.kept = std::move(second.kept);
  out.eliminated = std::move(first.eliminated);
  out.eliminated.insert(out.eliminated.end(), second.eliminated.begin(),
                        second.eliminated.end());
  std::sort(out.eliminated.begin(), out.eliminated.end(),
            [](const Elimination<R>& x, const Elimination<R>& y) {
              return x.point.cell < y.point.cell;
            });
  return out;
}

// Total-cost minimum at one exposure. The argmin set is complete: every
// feasible cell attaining the minimum is listed, in grid order.
template <class R>
struct OptimumReport {
  R value;
  std::vector<Cell> argmin;
  R exposure;
};

template <class R>
OptimumReport<R> minimize_cost(const TransactionType<R>& t, const R& exposure) {
  require_valid(t);
  require_positive_exposure(exposure);
  std::optional<R> best;
  for (const Cell& c : t.feasible_cells()) {
    R value = total_cost(t, exposure, c.i, c.j).total;
    if (!best || value < *best) best = value;
  }
  if (!best) throw RequestError("no feasible choice pair");

  OptimumReport<R> report{*best, {}, exposure};
  for (const Cell& c : t.feasible_cells())
    if (arith<R>::eq(total_cost(t, exposure, c.i, c.j).total, *best))
      report.argmin.push_back(c);
  return report;
}

// The optimal value as a function of exposure is the lower envelope of one
// affine line per feasible pair: value = (z1+z2) + loss * e. Segments carry
// the argmin cells of their line; breakpoints list every cell tied at the
// boundary exposure, including lines tangent at a single point.
template <class R>
struct SweepSegment {
  R e_lo;
  R e_hi;
  std::vector<Cell> argmin;
  R intercept;
  R slope;
};

template <class R>
struct SweepBreakpoint {
  R exposure;
  std::vector<Cell> argmin;
};

template <class R>
struct ExposureSweep {
  std::vector<SweepSegment<R>> segments;
  std::vector<SweepBreakpoint<R>> breakpoints;
};

template <class R>
ExposureSweep<R> exposure_sweep(const TransactionType<R>& t, const R& e_min,
                                const R& e_max) {
  using A = arith<R>;
  require_valid(t);
  if (!A::is_finite(e_min) || !A::is_finite(e_max) || !A::gt(e_min, R(0)) ||
      !A::lt(e_min, e_max))
    throw RequestError("exposure range requires 0 < from < to");

  auto points = decision_points(t);
  if (points.empty()) throw RequestError("no feasible choice pair");

  auto value_at = [&](const DecisionPoint<R>& p, const R& e) {
    return p.cost1 + p.cost2 + p.loss * e;
  };
  auto argmin_at = [&](const R& e) {
    R best = value_at(points[0], e);
    for (const auto& p : points) {
      R v = value_at(p, e);
      if (v < best) best = v;
    }
    std::vector<Cell> cells;
    for (const auto& p : points)
      if (A::eq(value_at(p, e), best)) cells.push_back(p.cell);
    return cells;
  };

  // Candidate boundaries: every pairwise line crossing inside the range.
  std::vector<R> cuts;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const R da = points[a].loss - points[b].loss;
      if (A::is_zero(da)) continue;
      R cross = ((points[b].cost1 + points[b].cost2) -
                 (points[a].cost1 + points[a].cost2)) /
                da;
      if (A::gt(cross, e_min) && A::lt(cross, e_max)) cuts.push_back(cross);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<R> bounds{e_min};
  for (const R& cut : cuts)
    if (!A::eq(cut, bounds.back())) bounds.push_back(cut);
  bounds.push_back(e_max);

  ExposureSweep<R> sweep;
  const R half = R(1) / R(2);
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    R mid = (bounds[k] + bounds[k + 1]) * half;
    std::vector<Cell> cells = argmin_at(mid);
    if (!sweep.segments.empty() && sweep.segments.back().argmin == cells) {
      sweep.segments.back().e_hi = bounds[k + 1];
      continue;
    }
    const DecisionPoint<R>* rep = nullptr;
    for (const auto& p : points)
      if (p.cell == cells.front()) rep = &p;
    sweep.segments.push_back({bounds[k], bounds[k + 1], std::move(cells),
                              rep->cost1 + rep->cost2, rep->loss});
  }
  for (std::size_t k = 1; k < sweep.segments.size(); ++k) {
    const R& at = sweep.segments[k].e_lo;
    sweep.breakpoints.push_back({at, argmin_at(at)});
  }
  return sweep;
}

// Flat per-cell dump of everything the frontier and optimum look at, for
// external plotting.
template <class R>
struct SurfaceRow {
  Cell cell;
  R cost1;
  R cost2;
  R loss;
  R total;
  bool relevant;
};

template <class R>
std::vector<SurfaceRow<R>> surface_export(const TransactionType<R>& t,
                                          const R& exposure) {
  RelevantSet<R> frontier = relevant_set(t);
  require_positive_exposure(exposure);
  std::vector<SurfaceRow<R>> rows;
  for (const Cell& c : t.feasible_cells()) {
    bool kept = false;
    for (const auto& p : frontier.kept)
      if (p.cell == c) kept = true;
    rows.push_back({c, t.player1.costs[c.i], t.player2.costs[c.j],
                    t.loss_at(c.i, c.j),
                    total_cost(t, exposure, c.i, c.j).total, kept});
  }
  return rows;
}

}  // namespace txcost

#endif  // TXCOST_EFFICIENCY_HPP_
