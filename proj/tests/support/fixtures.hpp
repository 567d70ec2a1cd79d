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

// Shared worked-example models. Every number is written as decimal text and
// parsed exactly, so the double and rational instantiations agree on inputs.

#ifndef TXCOST_TESTS_SUPPORT_FIXTURES_HPP_
#define TXCOST_TESTS_SUPPORT_FIXTURES_HPP_

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/dispute.hpp"
#include "txcost/grid.hpp"
#include "txcost/model.hpp"
#include "txcost/sharing.hpp"

namespace txcost::testing {

template <class R>
R num(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    auto top = parse_rational(text.substr(0, slash));
    auto bottom = parse_rational(text.substr(slash + 1));
    if (!top || !bottom || *bottom == 0)
      throw std::logic_error("bad fixture literal: " + text);
    return R(arith<R>::from_rational(*top / *bottom));
  }
  auto parsed = parse_rational(text);
  if (!parsed) throw std::logic_error("bad fixture literal: " + text);
  return R(arith<R>::from_rational(*parsed));
}

template <class R>
std::vector<R> nums(std::initializer_list<const char*> texts) {
  std::vector<R> out;
  for (const char* t : texts) out.push_back(num<R>(t));
  return out;
}

template <class R>
Grid<R> grid_of(std::initializer_list<std::initializer_list<const char*>>
                    rows) {
  std::size_t n = rows.size();
  std::size_t m = rows.begin()->size();
  Grid<R> out(n, m, R(0));
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* t : row) out.at(i, j++) = num<R>(t);
    ++i;
  }
  return out;
}

template <class R>
Grid<std::optional<R>> partial_grid_of(
    std::initializer_list<std::initializer_list<const char*>> rows) {
  std::size_t n = rows.size();
  std::size_t m = rows.begin()->size();
  Grid<std::optional<R>> out(n, m, std::nullopt);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* t : row) {
      if (std::string(t) != "-") out.at(i, j) = num<R>(t);
      ++j;
    }
    ++i;
  }
  return out;
}

// 3x3 symmetric precaution model: direct costs 0/1/2 per side, loss
// probability falling from certainty to 1% as both sides spend more.
template <class R>
TransactionType<R> symmetric_model() {
  TransactionType<R> t = make_transaction_type<R>(
      nums<R>({"0", "1", "2"}), nums<R>({"0", "1", "2"}),
      partial_grid_of<R>({{"1.00", "0.05", "0.04"},
                          {"0.05", "0.03", "0.02"},
                          {"0.04", "0.02", "0.01"}}));
  t.player1.labels = {"none", "low", "high"};
  t.player2.labels = {"none", "low", "high"};
  return t;
}

template <class R>
SharingRule<R> uniform_rule() {
  return fixed_share_rule(num<R>("0.5"), 3, 3);
}

// Non-optimizer rule: its column-1 payment minimum sits at row 2 while the
// total-cost minimum sits at row 1.
template <class R>
SharingRule<R> skewed_rule() {
  return SharingRule<R>{grid_of<R>({{"0.5", "0.5", "0.9"},
                                    {"0.1", "0.3", "0.9"},
                                    {"0.3", "0.1", "0.5"}})};
}

// Optimizer rule without pure equilibria in its game.
template <class R>
SharingRule<R> cycling_rule() {
  return SharingRule<R>{grid_of<R>({{"0.5", "0.5", "0.9"},
                                    {"0.1", "0.3", "0.2"},
                                    {"0.3", "0.1", "0.5"}})};
}

// Balanced-regret rule for the symmetric model at exposure 60: deviation
// column charged in full to the deviator, deviation row free for player 1.
template <class R>
SharingRule<R> balanced_rule() {
  return SharingRule<R>{grid_of<R>({{"0.5", "1", "0.5"},
                                    {"0", "0.5", "0"},
                                    {"0.5", "1", "0.5"}})};
}

// Symmetric dispute function over spend levels 0/1/2 per side.
template <class R>
DisputeModel<R> symmetric_dispute(const char* stake,
                                  DisputeInstitution institution =
                                      DisputeInstitution::each_pays_own) {
  return DisputeModel<R>{nums<R>({"0", "1", "2"}), nums<R>({"0", "1", "2"}),
                         partial_grid_of<R>({{"0.5", "0.8", "0.9"},
                                             {"0.2", "0.5", "0.6"},
                                             {"0.1", "0.4", "0.5"}}),
                         num<R>(stake), institution, std::nullopt};
}

// Asymmetric dispute function: player 1 starts with 80% of the stake.
template <class R>
DisputeModel<R> asymmetric_dispute(const char* stake) {
  return DisputeModel<R>{nums<R>({"0", "1", "2"}), nums<R>({"0", "1", "2"}),
                         partial_grid_of<R>({{"0.8", "0.9", "0.95"},
                                             {"0.3", "0.5", "0.6"},
                                             {"0.1", "0.4", "0.5"}}),
                         num<R>(stake), DisputeInstitution::each_pays_own,
                         std::nullopt};
}

// Loser-pays model where the responder cannot escalate before the initiator
// files: (0,1) and (0,2) are disallowed combinations.
template <class R>
DisputeModel<R> deterrence_dispute() {
  return DisputeModel<R>{
      nums<R>({"0", "1", "2"}), nums<R>({"0", "1", "2"}),
      partial_grid_of<R>({{"0.5", "-", "-"},
                          {"0.2", "0.5", "0.6"},
                          {"0.1", "0.4", "0.5"}}),
      num<R>("5"), DisputeInstitution::loser_pays_initiator, std::nullopt};
}

}  // namespace txcost::testing

#endif  // TXCOST_TESTS_SUPPORT_FIXTURES_HPP_
