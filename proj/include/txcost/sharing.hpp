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

#ifndef TXCOST_SHARING_HPP_
#define TXCOST_SHARING_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/efficiency.hpp"
#include "txcost/errors.hpp"
#include "txcost/grid.hpp"
#include "txcost/lp.hpp"
#include "txcost/model.hpp"

namespace txcost {

// Per-cell split of the total transaction cost: player 1 pays the fraction
// c1(i, j), player 2 the remainder. Defined over the whole grid, feasible
// or not; entries at infeasible cells are inert.
template <class R>
struct SharingRule {
  Grid<R> c1;

  R share2(std::size_t i, std::size_t j) const { return R(1) - c1.at(i, j); }
};

template <class R>
std::vector<Diagnostic> validate(const SharingRule<R>& rule) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < rule.c1.rows(); ++i)
    for (std::size_t j = 0; j < rule.c1.cols(); ++j) {
      const R& share = rule.c1.at(i, j);
      if (!arith<R>::is_finite(share) || arith<R>::lt(share, R(0)) ||
          arith<R>::gt(share, R(1)))
        out.push_back({"share at " + to_string(Cell{i, j}) +
                           " is outside [0, 1]",
                       Cell{i, j}});
    }
  return out;
}

// Two-player cost game in normal form. Payments are amounts to minimize.
// `defined` masks the strategy space: dispute games may disallow cells, in
// which case deviations only range over defined cells.
template <class R>
struct BimatrixGame {
  Grid<R> cost1;
  Grid<R> cost2;
  Grid<unsigned char> defined;
  std::string provenance;

  std::size_t rows() const { return cost1.rows(); }
  std::size_t cols() const { return cost1.cols(); }

  bool is_defined(std::size_t i, std::size_t j) const {
    return defined.at(i, j) != 0;
  }

  bool fully_defined() const {
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (!is_defined(i, j)) return false;
    return true;
  }
};

// Feasible cells split the total cost by the rule; infeasible cells fall
// back to each player bearing their own direct cost, since no transaction
// happens there to share.
template <class R>
BimatrixGame<R> build_game(const TransactionType<R>& t, const R& exposure,
                           const SharingRule<R>& rule) {
  require_valid(t);
  require_positive_exposure(exposure);
  if (!rule.c1.same_shape(t.loss)) {
    std::vector<Diagnostic> note{
        {"sharing rule is " + std::to_string(rule.c1.rows()) + "x" +
             std::to_string(rule.c1.cols()) + " but the model needs " +
             std::to_string(t.rows()) + "x" + std::to_string(t.cols()),
         std::nullopt}};
    throw ValidationError(std::move(note));
  }
  if (auto problems = validate(rule); !problems.empty())
    throw ValidationError(std::move(problems));

  BimatrixGame<R> game{Grid<R>(t.rows(), t.cols(), R(0)),
                       Grid<R>(t.rows(), t.cols(), R(0)),
                       Grid<unsigned char>(t.rows(), t.cols(), 1),
                       "shared transaction cost"};
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (t.feasible(i, j)) {
        R total = total_cost(t, exposure, i, j).total;
        game.cost1.at(i, j) = rule.c1.at(i, j) * total;
        game.cost2.at(i, j) = rule.share2(i, j) * total;
      } else {
        game.cost1.at(i, j) = t.player1.costs[i];
        game.cost2.at(i, j) = t.player2.costs[j];
      }
    }
  }
  return game;
}

// All cells from which neither player can cut their own payment by a
// unilateral move to another defined cell. Ties count; the list may be
// empty.
template <class R>
std::vector<Cell> pure_equilibria(const BimatrixGame<R>& game) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (!game.is_defined(i, j)) continue;
      bool stable = true;
      for (std::size_t r = 0; r < game.rows() && stable; ++r)
        if (game.is_defined(r, j) &&
            arith<R>::gt(game.cost1.at(i, j), game.cost1.at(r, j)))
          stable = false;
      for (std::size_t c = 0; c < game.cols() && stable; ++c)
        if (game.is_defined(i, c) &&
            arith<R>::gt(game.cost2.at(i, j), game.cost2.at(i, c)))
          stable = false;
      if (stable) out.push_back(Cell{i, j});
    }
  }
  return out;
}

// One mixed profile: full probability vectors (zeros off support) plus each
// player's expected payment.
template <class R>
struct MixedProfile {
  std::vector<R> p;
  std::vector<R> q;
  R cost1;
  R cost2;
};

template <class R>
struct EquilibriumReport {
  std::vector<Cell> pure;
  std::vector<MixedProfile<R>> mixed;
  std::vector<std::string> notes;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
  const std::size_t k = pick.size();
  for (std::size_t slot = k; slot-- > 0;) {
    if (pick[slot] + (k - slot) < n) {
      ++pick[slot];
      for (std::size_t rest = slot + 1; rest < k; ++rest)
        pick[rest] = pick[rest - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::string support_label(const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) {
  std::string text = "{";
  for (std::size_t k = 0; k < rows.size(); ++k)
    text += (k ? "," : "") + std::to_string(rows[k]);
  text += "}x{";
  for (std::size_t k = 0; k < cols.size(); ++k)
    text += (k ? "," : "") + std::to_string(cols[k]);
  return text + "}";
}

// Opponent mix making `mover`'s support rows mutually indifferent, found by
// solving the square indifference system. Returns the full-length mix or
// nothing when the system is singular or leaves the support.
template <class R>
std::optional<std::vector<R>> indifference_mix(
    const Grid<R>& cost, const std::vector<std::size_t>& own,
    const std::vector<std::size_t>& other, bool own_are_rows,
    bool* singular) {
  const std::size_t k = own.size();
  Grid<R> a(k + 1, k + 1, R(0));
  std::vector<R> b(k + 1, R(0));
  for (std::size_t row = 0; row < k; ++row) {
    for (std::size_t col = 0; col < k; ++col)
      a.at(row, col) = own_are_rows ? cost.at(own[row], other[col])
                                    : cost.at(other[col], own[row]);
    a.at(row, k) = R(-1);
  }
  for (std::size_t col = 0; col < k; ++col) a.at(k, col) = R(1);
  b[k] = R(1);

  auto solved = solve_linear(a, b);
  if (!solved) {
    *singular = true;
    return std::nullopt;
  }
  std::size_t length = own_are_rows ? cost.cols() : cost.rows();
  std::vector<R> mix(length, R(0));
  for (std::size_t col = 0; col < k; ++col) {
    if (!arith<R>::gt((*solved)[col], R(0))) return std::nullopt;
    mix[other[col]] = (*solved)[col];
  }
  return mix;
}

template <class R>
R expected_row_cost(const Grid<R>& cost1, std::size_t i,
                    const std::vector<R>& q) {
  R acc(0);
  for (std::size_t j = 0; j < cost1.cols(); ++j) acc += cost1.at(i, j) * q[j];
  return acc;
}

template <class R>
R expected_col_cost(const Grid<R>& cost2, std::size_t j,
                    const std::vector<R>& p) {
  R acc(0);
  for (std::size_t i = 0; i < cost2.rows(); ++i) acc += cost2.at(i, j) * p[i];
  return acc;
}

}  // namespace detail

// Support enumeration over equal-size supports, smallest first and
// lexicographic within a size, so output order is reproducible. Pure
// equilibria reappear as the size-1 profiles. Singular indifference systems
// are skipped and noted, never pseudo-solved.
template <class R>
EquilibriumReport<R> mixed_equilibria(const BimatrixGame<R>& game,
                                      std::size_t cap = 8) {
  using A = arith<R>;
  if (!game.fully_defined())
    throw RequestError("mixed analysis requires a fully defined game");
  const std::size_t n = game.rows();
  const std::size_t m = game.cols();
  if (n > cap || m > cap)
    throw CapExceededError("game is " + std::to_string(n) + "x" +
                           std::to_string(m) +
                           "; support enumeration is capped at " +
                           std::to_string(cap) + " per side");

  EquilibriumReport<R> report;
  report.pure = pure_equilibria(game);

  for (std::size_t size = 1; size <= std::min(n, m); ++size) {
    std::vector<std::size_t> rows(size);
    for (std::size_t k = 0; k < size; ++k) rows[k] = k;
    do {
      std::vector<std::size_t> cols(size);
      for (std::size_t k = 0; k < size; ++k) cols[k] = k;
      do {
        bool singular = false;
        auto q = detail::indifference_mix(game.cost1, rows, cols, true,
                                          &singular);
        auto p = q ? detail::indifference_mix(game.cost2, cols, rows, false,
                                              &singular)
                   : std::nullopt;
        if (singular)
          report.notes.push_back("singular indifference system at supports " +
                                 detail::support_label(rows, cols) +
                                 "; skipped");
        if (p && q) {
          R value1 = detail::expected_row_cost(game.cost1, rows[0], *q);
          R value2 = detail::expected_col_cost(game.cost2, cols[0], *p);
          bool best = true;
          for (std::size_t i = 0; i < n && best; ++i)
            if (A::gt(value1, detail::expected_row_cost(game.cost1, i, *q)))
              best = false;
          for (std::size_t j = 0; j < m && best; ++j)
            if (A::gt(value2, detail::expected_col_cost(game.cost2, j, *p)))
              best = false;
          if (best)
            report.mixed.push_back({std::move(*p), std::move(*q), value1,
                                    value2});
        }
      } while (detail::next_combination(cols, m));
    } while (detail::next_combination(rows, n));
  }
  if (report.mixed.empty())
    report.notes.push_back("support enumeration found no verified profile");
  return report;
}

// Outcome of the optimizer test: on failure, the first axis (scanning
// columns then rows, each in index order) where the cheapest-payment
// choices differ from the cheapest-total-cost choices.
struct OptimizerWitness {
  bool column = true;
  std::size_t index = 0;
  std::vector<std::size_t> payment_argmin;
  std::vector<std::size_t> total_argmin;
};

struct OptimizerCheck {
  bool optimizer = true;
  std::optional<OptimizerWitness> witness;
};

// A rule is an optimizer when along every line (column for player 1, row
// for player 2) the set of payment-minimizing choices coincides with the
// set of total-cost-minimizing choices. Both argmins run over feasible
// cells only: infeasible outcomes carry payments but no transaction cost to
// steer toward. Lines without a feasible cell are skipped entirely.
template <class R>
OptimizerCheck is_optimizer(const SharingRule<R>& rule,
                            const TransactionType<R>& t, const R& exposure) {
  using A = arith<R>;
  BimatrixGame<R> game = build_game(t, exposure, rule);

  for (std::size_t j = 0; j < t.cols(); ++j) {
    std::optional<R> best_pay, best_total;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!t.feasible(i, j)) continue;
      const R& pay = game.cost1.at(i, j);
      if (!best_pay || pay < *best_pay) best_pay = pay;
      R total = total_cost(t, exposure, i, j).total;
      if (!best_total || total < *best_total) best_total = total;
    }
    if (!best_pay) continue;
    std::vector<std::size_t> payment_argmin, total_argmin;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!t.feasible(i, j)) continue;
      if (A::eq(game.cost1.at(i, j), *best_pay)) payment_argmin.push_back(i);
      if (A::eq(total_cost(t, exposure, i, j).total, *best_total))
        total_argmin.push_back(i);
    }
    if (payment_argmin != total_argmin)
      return {false, OptimizerWitness{true, j, std::move(payment_argmin),
                                      std::move(total_argmin)}};
  }

  for (std::size_t i = 0; i < t.rows(); ++i) {
    std::optional<R> best_pay, best_total;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!t.feasible(i, j)) continue;
      const R& pay = game.cost2.at(i, j);
      if (!best_pay || pay < *best_pay) best_pay = pay;
      R total = total_cost(t, exposure, i, j).total;
      if (!best_total || total < *best_total) best_total = total;
    }
    if (!best_pay) continue;
    std::vector<std::size_t> payment_argmin, total_argmin;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!t.feasible(i, j)) continue;
      if (A::eq(game.cost2.at(i, j), *best_pay)) payment_argmin.push_back(j);
      if (A::eq(total_cost(t, exposure, i, j).total, *best_total))
        total_argmin.push_back(j);
    }
    if (payment_argmin != total_argmin)
      return {false, OptimizerWitness{false, i, std::move(payment_argmin),
                                      std::move(total_argmin)}};
  }
  return {true, std::nullopt};
}

// Constant share for player 1. The open interval keeps both players exposed
// to the total cost; a share of 0 or 1 would leave one side indifferent
// everywhere.
template <class R>
SharingRule<R> fixed_share_rule(const R& share, std::size_t rows,
                                std::size_t cols) {
  if (!arith<R>::is_finite(share) || !arith<R>::gt(share, R(0)) ||
      !arith<R>::lt(share, R(1)))
    throw RequestError("fixed share must lie strictly inside (0, 1)");
  return SharingRule<R>{Grid<R>(rows, cols, share)};
}

// Regret of leaving the optimum: the payment increase at the deviating
// player's cheapest unilateral move. Deviation targets are reported twice,
// by cheapest payment and by cheapest total cost; the two coincide under
// the constructive rules but can differ for arbitrary ones.
template <class R>
struct RegretProfile {
  Cell optimum;
  R regret1;
  R regret2;
  std::vector<Cell> payment_deviation1;
  std::vector<Cell> payment_deviation2;
  std::vector<Cell> total_deviation1;
  std::vector<Cell> total_deviation2;
  bool balanced = false;
};

template <class R>
RegretProfile<R> regret_profile(const SharingRule<R>& rule,
                                const TransactionType<R>& t, const R& exposure,
                                const Cell& opt) {
  using A = arith<R>;
  BimatrixGame<R> game = build_game(t, exposure, rule);
  OptimumReport<R> optimum = minimize_cost(t, exposure);
  if (std::find(optimum.argmin.begin(), optimum.argmin.end(), opt) ==
      optimum.argmin.end())
    throw RequestError("cell " + to_string(opt) +
                       " does not attain the total-cost optimum");
  if (t.rows() < 2 || t.cols() < 2)
    throw RequestError("regret needs at least one deviation per player");

  RegretProfile<R> profile{opt, R(0), R(0), {}, {}, {}, {}, false};

  std::optional<R> best1;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (i == opt.i) continue;
    const R& pay = game.cost1.at(i, opt.j);
    if (!best1 || pay < *best1) best1 = pay;
  }
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (i != opt.i && A::eq(game.cost1.at(i, opt.j), *best1))
      profile.payment_deviation1.push_back(Cell{i, opt.j});
  profile.regret1 = *best1 - game.cost1.at(opt.i, opt.j);

  std::optional<R> best2;
  for (std::size_t j = 0; j < t.cols(); ++j) {
    if (j == opt.j) continue;
    const R& pay = game.cost2.at(opt.i, j);
    if (!best2 || pay < *best2) best2 = pay;
  }
  for (std::size_t j = 0; j < t.cols(); ++j)
    if (j != opt.j && A::eq(game.cost2.at(opt.i, j), *best2))
      profile.payment_deviation2.push_back(Cell{opt.i, j});
  profile.regret2 = *best2 - game.cost2.at(opt.i, opt.j);

  std::optional<R> best_total1;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (i == opt.i || !t.feasible(i, opt.j)) continue;
    R total = total_cost(t, exposure, i, opt.j).total;
    if (!best_total1 || total < *best_total1) best_total1 = total;
  }
  if (best_total1)
    for (std::size_t i = 0; i < t.rows(); ++i)
      if (i != opt.i && t.feasible(i, opt.j) &&
          A::eq(total_cost(t, exposure, i, opt.j).total, *best_total1))
        profile.total_deviation1.push_back(Cell{i, opt.j});

  std::optional<R> best_total2;
  for (std::size_t j = 0; j < t.cols(); ++j) {
    if (j == opt.j || !t.feasible(opt.i, j)) continue;
    R total = total_cost(t, exposure, opt.i, j).total;
    if (!best_total2 || total < *best_total2) best_total2 = total;
  }
  if (best_total2)
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (j != opt.j && t.feasible(opt.i, j) &&
          A::eq(total_cost(t, exposure, opt.i, j).total, *best_total2))
        profile.total_deviation2.push_back(Cell{opt.i, j});

  profile.balanced = A::eq(profile.regret1, profile.regret2);
  return profile;
}

// Result of the balanced-regret construction. `opt_share` is the share c*
// used away from the deviation lines; when the balance equation pushes c*
// outside [0, 1] it is clamped and the leftover |r1 - r2| is reported.
template <class R>
struct BalancedDesign {
  SharingRule<R> rule;
  R opt_share;
  bool clamped = false;
  R residual_imbalance;
  RegretProfile<R> regret;
};

namespace detail {

template <class R>
Cell unique_optimum(const TransactionType<R>& t, const R& exposure) {
  OptimumReport<R> optimum = minimize_cost(t, exposure);
  if (optimum.argmin.size() != 1) {
    std::string cells;
    for (const Cell& c : optimum.argmin) cells += " " + to_string(c);
    throw MultipleOptimaError("total-cost optimum is not unique:" + cells);
  }
  return optimum.argmin.front();
}

template <class R>
std::optional<R> cheapest_column_deviation(const TransactionType<R>& t,
                                           const R& exposure,
                                           const Cell& opt) {
  std::optional<R> best;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (i == opt.i || !t.feasible(i, opt.j)) continue;
    R total = total_cost(t, exposure, i, opt.j).total;
    if (!best || total < *best) best = total;
  }
  return best;
}

template <class R>
std::optional<R> cheapest_row_deviation(const TransactionType<R>& t,
                                        const R& exposure, const Cell& opt) {
  std::optional<R> best;
  for (std::size_t j = 0; j < t.cols(); ++j) {
    if (j == opt.j || !t.feasible(opt.i, j)) continue;
    R total = total_cost(t, exposure, opt.i, j).total;
    if (!best || total < *best) best = total;
  }
  return best;
}

}  // namespace detail

// Charges each deviator their full column (or row) and solves the single
// linear balance equation for the share at every remaining cell. The
// construction only works when the optimum row and column keep their
// conditional minima, so the result is verified before it is returned.
template <class R>
BalancedDesign<R> design_balanced_rule(
    const TransactionType<R>& t, const R& exposure,
    std::optional<R> opt_share_hint = std::nullopt) {
  using A = arith<R>;
  require_valid(t);
  require_positive_exposure(exposure);
  if (opt_share_hint &&
      (A::lt(*opt_share_hint, R(0)) || A::gt(*opt_share_hint, R(1))))
    throw RequestError("share hint must lie in [0, 1]");

  Cell opt = detail::unique_optimum(t, exposure);
  if (t.rows() < 2 || t.cols() < 2)
    throw DegenerateGridError("balanced design needs a deviation per player");
  auto dev1 = detail::cheapest_column_deviation(t, exposure, opt);
  auto dev2 = detail::cheapest_row_deviation(t, exposure, opt);
  if (!dev1 || !dev2)
    throw DegenerateGridError(
        "balanced design needs a feasible deviation in the optimum row and "
        "column");
  R opt_total = total_cost(t, exposure, opt.i, opt.j).total;

  R share(0);
  bool clamped = false;
  if (A::is_zero(opt_total)) {
    // Zero cost at the optimum makes the balance equation vacuous; any
    // share splits zero, so the hint decides.
    share = opt_share_hint ? *opt_share_hint : R(1) / R(2);
  } else {
    share = (*dev1 - *dev2 + opt_total) / (R(2) * opt_total);
    if (A::lt(share, R(0))) {
      share = R(0);
      clamped = true;
    } else if (A::gt(share, R(1))) {
      share = R(1);
      clamped = true;
    }
  }

  SharingRule<R> rule{Grid<R>(t.rows(), t.cols(), share)};
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (i != opt.i) rule.c1.at(i, opt.j) = R(1);
  for (std::size_t j = 0; j < t.cols(); ++j)
    if (j != opt.j) rule.c1.at(opt.i, j) = R(0);

  OptimizerCheck check = is_optimizer(rule, t, exposure);
  if (!check.optimizer)
    throw DesignError(
        "balanced construction is not an optimizer on this model (axis " +
        std::string(check.witness->column ? "column " : "row ") +
        std::to_string(check.witness->index) + ")");
  RegretProfile<R> regret = regret_profile(rule, t, exposure, opt);
  R residual = A::abs(regret.regret1 - regret.regret2);
  if (!clamped && !A::is_zero(residual))
    throw DesignError("balanced construction left residual regret imbalance");

  return BalancedDesign<R>{std::move(rule), share, clamped, residual,
                           std::move(regret)};
}

// Result of the pay-for-your-mistake construction. The share formula cannot
// actually exceed 1 for nonnegative costs, but the guard stays and any
// clamp is reported.
template <class R>
struct MistakeDesign {
  SharingRule<R> rule;
  std::vector<Cell> clamped;
};

// The deviator's share grows by exactly the damage their deviation causes:
// at a player-1 deviation cell the player-2 payment stays at its optimum
// share level and player 1 absorbs the whole cost increase.
template <class R>
MistakeDesign<R> pay_for_mistake_rule(const TransactionType<R>& t,
                                      const R& exposure,
                                      const R& base_share) {
  using A = arith<R>;
  require_valid(t);
  require_positive_exposure(exposure);
  if (!A::is_finite(base_share) || !A::gt(base_share, R(0)) ||
      !A::lt(base_share, R(1)))
    throw RequestError("base share must lie strictly inside (0, 1)");

  Cell opt = detail::unique_optimum(t, exposure);
  if (t.rows() < 2 || t.cols() < 2)
    throw DegenerateGridError(
        "pay-for-mistake design needs a deviation per player");
  R opt_total = total_cost(t, exposure, opt.i, opt.j).total;

  MistakeDesign<R> design{SharingRule<R>{Grid<R>(t.rows(), t.cols(),
                                                 base_share)},
                          {}};
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (i == opt.i || !t.feasible(i, opt.j)) continue;
    R dev_total = total_cost(t, exposure, i, opt.j).total;
    R raw = (base_share * opt_total + dev_total - opt_total) / dev_total;
    if (A::gt(raw, R(1))) {
      raw = R(1);
      design.clamped.push_back(Cell{i, opt.j});
    }
    design.rule.c1.at(i, opt.j) = raw;
  }
  for (std::size_t j = 0; j < t.cols(); ++j) {
    if (j == opt.j || !t.feasible(opt.i, j)) continue;
    R dev_total = total_cost(t, exposure, opt.i, j).total;
    R raw = ((R(1) - base_share) * opt_total + dev_total - opt_total) /
            dev_total;
    if (A::gt(raw, R(1))) {
      raw = R(1);
      design.clamped.push_back(Cell{opt.i, j});
    }
    design.rule.c1.at(opt.i, j) = R(1) - raw;
  }
  return design;
}

}  // namespace txcost

#endif  // TXCOST_SHARING_HPP_
