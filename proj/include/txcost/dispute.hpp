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

#ifndef TXCOST_DISPUTE_HPP_
#define TXCOST_DISPUTE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/errors.hpp"
#include "txcost/grid.hpp"
#include "txcost/model.hpp"
#include "txcost/sharing.hpp"

namespace txcost {

// How dispute spending is charged on top of the disputed stake. Player 1 is
// always the initiator under loser-pays; the dispute matrix can forbid
// player-2-only disputes by leaving cells undefined.
enum class DisputeInstitution {
  each_pays_own,
  proportional,
  loser_pays_initiator,
};

inline std::string to_string(DisputeInstitution institution) {
  switch (institution) {
    case DisputeInstitution::each_pays_own: return "each-pays-own";
    case DisputeInstitution::proportional: return "proportional";
    case DisputeInstitution::loser_pays_initiator:
      return "loser-pays-initiator";
  }
  return "unknown";
}

inline std::optional<DisputeInstitution> parse_institution(
    const std::string& name) {
  if (name == "each-pays-own") return DisputeInstitution::each_pays_own;
  if (name == "proportional") return DisputeInstitution::proportional;
  if (name == "loser-pays-initiator")
    return DisputeInstitution::loser_pays_initiator;
  return std::nullopt;
}

// A dispute over how to split `stake`: each player commits a spend level and
// share1(i, j) is player 1's resulting fraction of the stake. Undefined
// cells are disallowed spend combinations. Cell (0, 0), spending nothing,
// must exist and holds the share set by the rule before any dispute.
template <class R>
struct DisputeModel {
  std::vector<R> spend1;
  std::vector<R> spend2;
  Grid<std::optional<R>> share1;
  R stake;
  DisputeInstitution institution = DisputeInstitution::each_pays_own;
  std::optional<R> d1;  // proportional split of the combined spend

  std::size_t rows() const { return spend1.size(); }
  std::size_t cols() const { return spend2.size(); }
};

namespace detail {

template <class R>
void validate_spends(const std::vector<R>& spends, const std::string& who,
                     std::vector<Diagnostic>& out) {
  if (spends.empty()) {
    out.push_back({who + " has no spend levels", std::nullopt});
    return;
  }
  if (!arith<R>::is_zero(spends.front()))
    out.push_back({who + " must start at spend 0", std::nullopt});
  for (std::size_t k = 0; k < spends.size(); ++k) {
    if (!arith<R>::is_finite(spends[k]) || arith<R>::lt(spends[k], R(0)))
      out.push_back({who + " spend level " + std::to_string(k) +
                         " is not a nonnegative amount",
                     std::nullopt});
    if (k > 0 && !arith<R>::gt(spends[k], spends[k - 1]))
      out.push_back({who + " spend levels must increase", std::nullopt});
  }
}

}  // namespace detail

template <class R>
std::vector<Diagnostic> validate(const DisputeModel<R>& d) {
  using A = arith<R>;
  std::vector<Diagnostic> out;
  detail::validate_spends(d.spend1, "player 1", out);
  detail::validate_spends(d.spend2, "player 2", out);
  if (d.share1.rows() != d.rows() || d.share1.cols() != d.cols()) {
    out.push_back({"dispute share matrix is " +
                       std::to_string(d.share1.rows()) + "x" +
                       std::to_string(d.share1.cols()) +
                       " but spend levels are " + std::to_string(d.rows()) +
                       "x" + std::to_string(d.cols()),
                   std::nullopt});
    return out;
  }
  if (!d.share1.empty() && !d.share1.at(0, 0).has_value())
    out.push_back({"dispute share must be defined at (0,0)", Cell{0, 0}});
  for (std::size_t i = 0; i < d.share1.rows(); ++i)
    for (std::size_t j = 0; j < d.share1.cols(); ++j) {
      const auto& s = d.share1.at(i, j);
      if (s && (!A::is_finite(*s) || A::lt(*s, R(0)) || A::gt(*s, R(1))))
        out.push_back({"dispute share at " + to_string(Cell{i, j}) +
                           " is outside [0, 1]",
                       Cell{i, j}});
    }
  if (!A::is_finite(d.stake) || A::lt(d.stake, R(0)))
    out.push_back({"stake must be a nonnegative amount", std::nullopt});
  if (d.institution == DisputeInstitution::proportional) {
    if (!d.d1)
      out.push_back({"proportional institution needs the d1 parameter",
                     std::nullopt});
    else if (!A::is_finite(*d.d1) || A::lt(*d.d1, R(0)) || A::gt(*d.d1, R(1)))
      out.push_back({"d1 must lie in [0, 1]", std::nullopt});
  }
  return out;
}

// Soft expectations on the dispute function's shape: own spending should
// not lower one's own share, and marginal returns should taper. Violations
// are worth a warning, not a rejection.
template <class R>
std::vector<Diagnostic> shape_advisories(const DisputeModel<R>& d) {
  using A = arith<R>;
  std::vector<Diagnostic> out;
  auto value = [&](std::size_t i, std::size_t j) { return d.share1.at(i, j); };
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t i = 0; i + 1 < d.rows(); ++i)
      if (value(i, j) && value(i + 1, j) &&
          A::gt(*value(i + 1, j), *value(i, j)))
        out.push_back({"share1 increases with player 1 spend at " +
                           to_string(Cell{i + 1, j}),
                       Cell{i + 1, j}});
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j + 1 < d.cols(); ++j)
      if (value(i, j) && value(i, j + 1) &&
          A::lt(*value(i, j + 1), *value(i, j)))
        out.push_back({"share1 decreases with player 2 spend at " +
                           to_string(Cell{i, j + 1}),
                       Cell{i, j + 1}});
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t i = 0; i + 2 < d.rows(); ++i)
      if (value(i, j) && value(i + 1, j) && value(i + 2, j) &&
          A::lt(*value(i + 2, j) - *value(i + 1, j),
                *value(i + 1, j) - *value(i, j)))
        out.push_back({"share1 is not convex in player 1 spend at column " +
                           std::to_string(j),
                       Cell{i + 1, j}});
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j + 2 < d.cols(); ++j)
      if (value(i, j) && value(i, j + 1) && value(i, j + 2) &&
          A::gt(*value(i, j + 2) - *value(i, j + 1),
                *value(i, j + 1) - *value(i, j)))
        out.push_back({"share1 is not concave in player 2 spend at row " +
                           std::to_string(i),
                       Cell{i, j + 1}});
  return out;
}

// Payments per cell: the stake splits by share1 and the spends are charged
// by the institution. Under loser-pays the initiator carries both spends
// unless the dispute strictly improved their share; winning exactly the old
// share still counts as losing.
template <class R>
BimatrixGame<R> build_dispute_game(const DisputeModel<R>& d) {
  using A = arith<R>;
  if (auto problems = validate(d); !problems.empty())
    throw ValidationError(std::move(problems));

  BimatrixGame<R> game{Grid<R>(d.rows(), d.cols(), R(0)),
                       Grid<R>(d.rows(), d.cols(), R(0)),
                       Grid<unsigned char>(d.rows(), d.cols(), 0),
                       "dispute, " + to_string(d.institution)};
  const R base = *d.share1.at(0, 0);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const auto& share = d.share1.at(i, j);
      if (!share) continue;
      game.defined.at(i, j) = 1;
      const R& v1 = d.spend1[i];
      const R& v2 = d.spend2[j];
      R stake1 = *share * d.stake;
      R stake2 = (R(1) - *share) * d.stake;
      switch (d.institution) {
        case DisputeInstitution::each_pays_own:
          game.cost1.at(i, j) = v1 + stake1;
          game.cost2.at(i, j) = v2 + stake2;
          break;
        case DisputeInstitution::proportional:
          game.cost1.at(i, j) = *d.d1 * (v1 + v2) + stake1;
          game.cost2.at(i, j) = (R(1) - *d.d1) * (v1 + v2) + stake2;
          break;
        case DisputeInstitution::loser_pays_initiator:
          if (i == 0 && j == 0) {
            game.cost1.at(i, j) = stake1;
            game.cost2.at(i, j) = stake2;
          } else if (A::lt(*share, base)) {
            game.cost1.at(i, j) = stake1;
            game.cost2.at(i, j) = stake2 + v1 + v2;
          } else {
            game.cost1.at(i, j) = stake1 + v1 + v2;
            game.cost2.at(i, j) = stake2;
          }
          break;
      }
    }
  }
  return game;
}

// One row of the sequential best-reply table: the follower's cheapest
// defined answer to one leader move.
template <class R>
struct SequentialReply {
  std::size_t leader_move;
  std::size_t follower_move;
  R leader_pay;
  R follower_pay;
};

template <class R>
struct DisputeOutcome {
  BimatrixGame<R> game;
  std::vector<Cell> equilibria;  // outcome path when sequential
  bool sequential = false;
  int leader = 0;
  std::vector<SequentialReply<R>> replies;
  std::vector<MixedProfile<R>> mixed;
  bool prisoners_dilemma = false;
};

namespace detail {

// Both stuck worse than doing nothing: every player strictly prefers the
// no-dispute cell's payment to the equilibrium payment.
template <class R>
bool dominated_by_standstill(const BimatrixGame<R>& game, const Cell& c) {
  return arith<R>::gt(game.cost1.at(c), game.cost1.at(0, 0)) &&
         arith<R>::gt(game.cost2.at(c), game.cost2.at(0, 0));
}

}  // namespace detail

template <class R>
DisputeOutcome<R> simultaneous_equilibria(const DisputeModel<R>& d) {
  DisputeOutcome<R> outcome{build_dispute_game(d), {}, false, 0, {}, {},
                            false};
  outcome.equilibria = pure_equilibria(outcome.game);
  if (outcome.equilibria.empty() && outcome.game.fully_defined() &&
      outcome.game.rows() <= 8 && outcome.game.cols() <= 8)
    outcome.mixed = mixed_equilibria(outcome.game).mixed;
  for (const Cell& c : outcome.equilibria)
    if (detail::dominated_by_standstill(outcome.game, c))
      outcome.prisoners_dilemma = true;
  return outcome;
}

// Backward induction with ties resolved toward the lower spend, follower
// first. Leader moves whose row (or column) has no defined cell are not
// available.
template <class R>
DisputeOutcome<R> sequential_solve(const DisputeModel<R>& d, int leader) {
  using A = arith<R>;
  if (leader != 1 && leader != 2)
    throw RequestError("leader must be player 1 or 2");
  DisputeOutcome<R> outcome{build_dispute_game(d), {}, true, leader, {}, {},
                            false};
  const BimatrixGame<R>& game = outcome.game;

  const std::size_t leader_moves = leader == 1 ? game.rows() : game.cols();
  const std::size_t follower_moves = leader == 1 ? game.cols() : game.rows();
  for (std::size_t move = 0; move < leader_moves; ++move) {
    std::optional<std::size_t> best;
    R best_pay(0);
    for (std::size_t reply = 0; reply < follower_moves; ++reply) {
      const std::size_t i = leader == 1 ? move : reply;
      const std::size_t j = leader == 1 ? reply : move;
      if (!game.is_defined(i, j)) continue;
      const R& pay = leader == 1 ? game.cost2.at(i, j) : game.cost1.at(i, j);
      if (!best || A::lt(pay, best_pay)) {
        best = reply;
        best_pay = pay;
      }
    }
    if (!best) continue;
    const std::size_t i = leader == 1 ? move : *best;
    const std::size_t j = leader == 1 ? *best : move;
    outcome.replies.push_back({move, *best,
                               leader == 1 ? game.cost1.at(i, j)
                                           : game.cost2.at(i, j),
                               leader == 1 ? game.cost2.at(i, j)
                                           : game.cost1.at(i, j)});
  }
  if (outcome.replies.empty())
    throw RequestError("no defined spend combination to play");

  const SequentialReply<R>* chosen = &outcome.replies.front();
  for (const auto& reply : outcome.replies)
    if (A::lt(reply.leader_pay, chosen->leader_pay)) chosen = &reply;
  Cell path = leader == 1 ? Cell{chosen->leader_move, chosen->follower_move}
                          : Cell{chosen->follower_move, chosen->leader_move};
  outcome.equilibria.push_back(path);
  return outcome;
}

// Everything one execution ends up costing once a dispute happened: total
// transaction cost at the chosen pair plus both dispute spends.
template <class R>
R grand_total(const TransactionType<R>& t, const R& exposure, std::size_t i,
              std::size_t j, const R& v1, const R& v2) {
  using A = arith<R>;
  if (A::lt(v1, R(0)) || A::lt(v2, R(0)))
    throw RequestError("dispute spends must be nonnegative");
  return total_cost(t, exposure, i, j).total + v1 + v2;
}

}  // namespace txcost

#endif  // TXCOST_DISPUTE_HPP_
