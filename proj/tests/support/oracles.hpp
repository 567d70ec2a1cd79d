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

// Independent result checkers. Each one recomputes an answer by a different
// route than the library (separation certificates, exhaustive scans, closed
// forms) so a shared bug cannot hide.

#ifndef TXCOST_TESTS_SUPPORT_ORACLES_HPP_
#define TXCOST_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/dispute.hpp"
#include "txcost/efficiency.hpp"
#include "txcost/grid.hpp"
#include "txcost/model.hpp"
#include "txcost/sharing.hpp"

namespace txcost::testing {

// Weak Pareto comparison written against the raw coordinates.
template <class R>
bool oracle_dominates(const DecisionPoint<R>& a, const DecisionPoint<R>& b) {
  using A = arith<R>;
  if (A::gt(a.cost1, b.cost1) || A::gt(a.cost2, b.cost2) ||
      A::gt(a.loss, b.loss))
    return false;
  return A::lt(a.cost1, b.cost1) || A::lt(a.cost2, b.cost2) ||
         A::lt(a.loss, b.loss);
}

// A strictly positive weight vector w with w.p <= w.q for every point q
// proves p cannot be beaten by any convex combination of the others: the
// combination's value is >= w.p while a dominating point's would be < w.p.
template <class R>
bool supports_point(const std::vector<DecisionPoint<R>>& points,
                    const Cell& cell, const R& w1, const R& w2,
                    const R& w3) {
  using A = arith<R>;
  if (!A::gt(w1, R(0)) || !A::gt(w2, R(0)) || !A::gt(w3, R(0))) return false;
  std::optional<R> at_cell;
  for (const auto& p : points)
    if (p.cell == cell)
      at_cell = w1 * p.cost1 + w2 * p.cost2 + w3 * p.loss;
  if (!at_cell) return false;
  for (const auto& p : points) {
    R value = w1 * p.cost1 + w2 * p.cost2 + w3 * p.loss;
    if (A::lt(value, *at_cell)) return false;
  }
  return true;
}

// Re-derives an elimination certificate from the raw coordinates. Dominance
// reasons must name a point that Pareto-beats (or duplicates with lower
// loss) the eliminated one; the hull reason must carry convex weights whose
// combination weakly improves every coordinate and strictly improves one.
// Certificate sources may themselves be eliminated (each point is tested
// against all of its peers), so the lookup spans the full point list.
template <class R>
bool certificate_verifies(const std::vector<DecisionPoint<R>>& points,
                          const Elimination<R>& elimination) {
  using A = arith<R>;
  auto find = [&](const Cell& cell) -> const DecisionPoint<R>* {
    for (const auto& p : points)
      if (p.cell == cell) return &p;
    return nullptr;
  };
  const DecisionPoint<R>& p = elimination.point;

  if (elimination.reason == EliminationReason::duplicate_cost_higher_loss) {
    const DecisionPoint<R>* q =
        elimination.dominator ? find(*elimination.dominator) : nullptr;
    if (!q) return false;
    return A::eq(q->cost1, p.cost1) && A::eq(q->cost2, p.cost2) &&
           A::leq(q->loss, p.loss);
  }
  if (elimination.reason == EliminationReason::pareto_dominated) {
    const DecisionPoint<R>* q =
        elimination.dominator ? find(*elimination.dominator) : nullptr;
    if (!q) return false;
    return oracle_dominates(*q, p);
  }

  if (elimination.weights.empty()) return false;
  R c1(0), c2(0), pl(0), total(0);
  for (const auto& w : elimination.weights) {
    if (!A::gt(w.weight, R(0))) return false;
    const DecisionPoint<R>* source = find(w.cell);
    if (!source || source->cell == p.cell) return false;
    c1 = c1 + w.weight * source->cost1;
    c2 = c2 + w.weight * source->cost2;
    pl = pl + w.weight * source->loss;
    total = total + w.weight;
  }
  if (A::ne(total, R(1))) return false;
  if (A::gt(c1, p.cost1) || A::gt(c2, p.cost2) || A::gt(pl, p.loss))
    return false;
  return A::lt(c1, p.cost1) || A::lt(c2, p.cost2) || A::lt(pl, p.loss);
}

// Exhaustive mutual-best-response scan over defined cells.
template <class R>
std::vector<Cell> oracle_pure_equilibria(const BimatrixGame<R>& game) {
  using A = arith<R>;
  std::vector<Cell> out;
  for (std::size_t i = 0; i < game.rows(); ++i)
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (!game.is_defined(i, j)) continue;
      bool stable = true;
      for (std::size_t r = 0; r < game.rows() && stable; ++r)
        if (game.is_defined(r, j) &&
            A::lt(game.cost1.at(r, j), game.cost1.at(i, j)))
          stable = false;
      for (std::size_t c = 0; c < game.cols() && stable; ++c)
        if (game.is_defined(i, c) &&
            A::lt(game.cost2.at(i, c), game.cost2.at(i, j)))
          stable = false;
      if (stable) out.push_back(Cell{i, j});
    }
  return out;
}

// Closed-form fully mixed equilibrium of a 2x2 cost game: each player mixes
// to make the opponent indifferent.
template <class R>
std::optional<MixedProfile<R>> oracle_mixed_2x2(const BimatrixGame<R>& game) {
  using A = arith<R>;
  const Grid<R>& a = game.cost1;
  const Grid<R>& b = game.cost2;
  R q_den = a.at(0, 0) - a.at(0, 1) - a.at(1, 0) + a.at(1, 1);
  R p_den = b.at(0, 0) - b.at(0, 1) - b.at(1, 0) + b.at(1, 1);
  if (A::is_zero(q_den) || A::is_zero(p_den)) return std::nullopt;
  R q = (a.at(1, 1) - a.at(0, 1)) / q_den;
  R p = (b.at(1, 1) - b.at(1, 0)) / p_den;
  if (!A::gt(p, R(0)) || !A::lt(p, R(1)) || !A::gt(q, R(0)) ||
      !A::lt(q, R(1)))
    return std::nullopt;
  MixedProfile<R> profile{{p, R(1) - p}, {q, R(1) - q}, R(0), R(0)};
  profile.cost1 = q * a.at(0, 0) + (R(1) - q) * a.at(0, 1);
  profile.cost2 = p * b.at(0, 0) + (R(1) - p) * b.at(1, 0);
  return profile;
}

// Plain backward induction by explicit scan, leader fixed to player 1.
template <class R>
std::optional<Cell> oracle_sequential_leader1(const BimatrixGame<R>& game) {
  using A = arith<R>;
  std::optional<Cell> outcome;
  std::optional<R> leader_best;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    std::optional<std::size_t> reply;
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (!game.is_defined(i, j)) continue;
      if (!reply || A::lt(game.cost2.at(i, j), game.cost2.at(i, *reply)))
        reply = j;
    }
    if (!reply) continue;
    R pay = game.cost1.at(i, *reply);
    if (!leader_best || A::lt(pay, *leader_best)) {
      leader_best = pay;
      outcome = Cell{i, *reply};
    }
  }
  return outcome;
}

// Scans every feasible pair directly for the total-cost minimum.
template <class R>
R oracle_min_total(const TransactionType<R>& t, const R& exposure) {
  std::optional<R> best;
  for (const Cell& c : t.feasible_cells()) {
    R value = t.player1.costs[c.i] + t.player2.costs[c.j] +
              t.loss_at(c.i, c.j) * exposure;
    if (!best || value < *best) best = value;
  }
  return *best;
}

}  // namespace txcost::testing

#endif  // TXCOST_TESTS_SUPPORT_ORACLES_HPP_
