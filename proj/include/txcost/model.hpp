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

#ifndef TXCOST_MODEL_HPP_
#define TXCOST_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/errors.hpp"
#include "txcost/grid.hpp"

namespace txcost {

// One side's menu of execution choices. costs[k] is the fixed cost that
// side pays whenever choice k is used, regardless of what the other side
// picks. Labels are optional display names; when present they must be
// one per choice and unique.
template <class R>
struct ChoiceSet {
  std::vector<std::string> labels;
  std::vector<R> costs;

  std::size_t size() const { return costs.size(); }

  std::string name(std::size_t k) const {
    return k < labels.size() ? labels[k] : std::to_string(k);
  }
};

template <class R>
ChoiceSet<R> make_choice_set(std::vector<R> costs) {
  return ChoiceSet<R>{{}, std::move(costs)};
}

// A two-sided transaction: player 1 picks a row choice, player 2 a column
// choice, and the pair (i, j) determines the fraction loss(i, j) of the
// exposed amount that is expected to be lost. A disengaged loss entry marks
// the pair as infeasible (the two choices cannot be combined).
template <class R>
struct TransactionType {
  ChoiceSet<R> player1;
  ChoiceSet<R> player2;
  Grid<std::optional<R>> loss;

  std::size_t rows() const { return player1.size(); }
  std::size_t cols() const { return player2.size(); }

  bool feasible(std::size_t i, std::size_t j) const {
    return loss.at(i, j).has_value();
  }
  bool feasible(const Cell& c) const { return feasible(c.i, c.j); }

  const R& loss_at(std::size_t i, std::size_t j) const {
    const auto& entry = loss.at(i, j);
    if (!entry) throw InfeasiblePairError(Cell{i, j});
    return *entry;
  }

  std::vector<Cell> feasible_cells() const {
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (feasible(i, j)) cells.push_back(Cell{i, j});
    return cells;
  }
};

template <class R>
TransactionType<R> make_transaction_type(std::vector<R> costs1,
                                         std::vector<R> costs2,
                                         Grid<std::optional<R>> loss) {
  return TransactionType<R>{make_choice_set(std::move(costs1)),
                            make_choice_set(std::move(costs2)),
                            std::move(loss)};
}

// Amount at risk in a single execution. Must be strictly positive.
template <class R>
struct Exposure {
  R value;
};

template <class R>
std::vector<Diagnostic> validate(const Exposure<R>& exposure) {
  std::vector<Diagnostic> out;
  if (!arith<R>::is_finite(exposure.value) ||
      !arith<R>::gt(exposure.value, R(0)))
    out.push_back({"exposure must be a positive finite amount", std::nullopt});
  return out;
}

namespace detail {

template <class R>
void validate_choice_set(const ChoiceSet<R>& side, const std::string& who,
                         std::vector<Diagnostic>& out) {
  if (side.costs.empty())
    out.push_back({who + " has no choices", std::nullopt});
  for (std::size_t k = 0; k < side.costs.size(); ++k) {
    if (!arith<R>::is_finite(side.costs[k]))
      out.push_back({who + " choice " + std::to_string(k) +
                         ": cost is not finite",
                     std::nullopt});
    else if (arith<R>::lt(side.costs[k], R(0)))
      out.push_back({who + " choice " + std::to_string(k) +
                         ": cost is negative",
                     std::nullopt});
  }
  if (!side.labels.empty() && side.labels.size() != side.costs.size())
    out.push_back({who + " has " + std::to_string(side.labels.size()) +
                       " labels for " + std::to_string(side.costs.size()) +
                       " choices",
                   std::nullopt});
  for (std::size_t a = 0; a < side.labels.size(); ++a)
    for (std::size_t b = a + 1; b < side.labels.size(); ++b)
      if (side.labels[a] == side.labels[b])
        out.push_back({who + " label \"" + side.labels[a] +
                           "\" repeats at choices " + std::to_string(a) +
                           " and " + std::to_string(b),
                       std::nullopt});
}

}  // namespace detail

// Collects every invariant violation; an empty result means the type is
// well formed.
template <class R>
std::vector<Diagnostic> validate(const TransactionType<R>& t) {
  std::vector<Diagnostic> out;
  detail::validate_choice_set(t.player1, "player 1", out);
  detail::validate_choice_set(t.player2, "player 2", out);
  if (t.loss.rows() != t.player1.size() || t.loss.cols() != t.player2.size()) {
    out.push_back({"loss matrix is " + std::to_string(t.loss.rows()) + "x" +
                       std::to_string(t.loss.cols()) + " but choices are " +
                       std::to_string(t.player1.size()) + "x" +
                       std::to_string(t.player2.size()),
                   std::nullopt});
    return out;
  }
  bool any_feasible = false;
  for (std::size_t i = 0; i < t.loss.rows(); ++i) {
    for (std::size_t j = 0; j < t.loss.cols(); ++j) {
      const auto& entry = t.loss.at(i, j);
      if (!entry) continue;
      any_feasible = true;
      if (!arith<R>::is_finite(*entry) || arith<R>::lt(*entry, R(0)) ||
          arith<R>::gt(*entry, R(1)))
        out.push_back({"loss fraction at " + to_string(Cell{i, j}) +
                           " is outside [0, 1]",
                       Cell{i, j}});
    }
  }
  if (!any_feasible)
    out.push_back({"no feasible choice pair", std::nullopt});
  return out;
}

template <class R>
void require_valid(const TransactionType<R>& t) {
  auto diagnostics = validate(t);
  if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
}

// Cost of executing one transaction of size `exposure` through pair (i, j):
// both sides' fixed choice costs plus the expected loss on the exposed
// amount.
template <class R>
struct CostBreakdown {
  R cost1;          // player 1's fixed cost z1(i)
  R cost2;          // player 2's fixed cost z2(j)
  R expected_loss;  // loss(i, j) * exposure
  R total;          // cost1 + cost2 + expected_loss
};

template <class R>
void require_positive_exposure(const R& exposure) {
  if (!arith<R>::is_finite(exposure) || !arith<R>::gt(exposure, R(0)))
    throw RequestError("exposure must be a positive finite amount");
}

template <class R>
CostBreakdown<R> total_cost(const TransactionType<R>& t, const R& exposure,
                            std::size_t i, std::size_t j) {
  require_positive_exposure(exposure);
  CostBreakdown<R> parts;
  parts.cost1 = t.player1.costs.at(i);
  parts.cost2 = t.player2.costs.at(j);
  parts.expected_loss = t.loss_at(i, j) * exposure;
  parts.total = parts.cost1 + parts.cost2 + parts.expected_loss;
  return parts;
}

// Amount expected to come through: the exposed amount minus the expected
// loss. Total cost plus yield minus the fixed costs always reproduces the
// exposure.
template <class R>
R yield_value(const TransactionType<R>& t, const R& exposure, std::size_t i,
              std::size_t j) {
  require_positive_exposure(exposure);
  return (R(1) - t.loss_at(i, j)) * exposure;
}

}  // namespace txcost

#endif  // TXCOST_MODEL_HPP_
