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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "txcost/dispute.hpp"

namespace txcost {
namespace {

using testing::asymmetric_dispute;
using testing::deterrence_dispute;
using testing::num;
using testing::nums;
using testing::partial_grid_of;
using testing::symmetric_dispute;
using testing::symmetric_model;

TEMPLATE_TEST_CASE("dispute validation", "[dispute]", double, Rational) {
  using R = TestType;
  SECTION("the worked models are valid") {
    CHECK(validate(symmetric_dispute<R>("5")).empty());
    CHECK(validate(asymmetric_dispute<R>("4")).empty());
    CHECK(validate(deterrence_dispute<R>()).empty());
  }
  SECTION("spends must start at zero") {
    auto d = symmetric_dispute<R>("5");
    d.spend1 = nums<R>({"1", "2", "3"});
    auto diagnostics = validate(d);
    REQUIRE_FALSE(diagnostics.empty());
    CHECK(diagnostics[0].message == "player 1 must start at spend 0");
  }
  SECTION("spends must strictly increase") {
    auto d = symmetric_dispute<R>("5");
    d.spend2 = nums<R>({"0", "2", "2"});
    REQUIRE(validate(d).size() == 1);
  }
  SECTION("standstill cell must be defined") {
    auto d = symmetric_dispute<R>("5");
    d.share1.at(0, 0) = std::nullopt;
    REQUIRE_FALSE(validate(d).empty());
  }
  SECTION("shares live in [0,1]") {
    auto d = symmetric_dispute<R>("5");
    d.share1.at(1, 2) = num<R>("1.5");
    auto diagnostics = validate(d);
    REQUIRE(diagnostics.size() == 1);
    REQUIRE(diagnostics[0].cell.has_value());
    CHECK(*diagnostics[0].cell == Cell{1, 2});
  }
  SECTION("negative stake is rejected") {
    auto d = symmetric_dispute<R>("5");
    d.stake = R(-1);
    REQUIRE(validate(d).size() == 1);
  }
  SECTION("proportional institution needs its split") {
    auto d = symmetric_dispute<R>("5", DisputeInstitution::proportional);
    REQUIRE(validate(d).size() == 1);
    d.d1 = num<R>("0.5");
    CHECK(validate(d).empty());
    d.d1 = num<R>("1.5");
    REQUIRE(validate(d).size() == 1);
  }
  SECTION("build refuses invalid models") {
    auto d = symmetric_dispute<R>("5");
    d.stake = R(-1);
    CHECK_THROWS_AS(build_dispute_game(d), ValidationError);
  }
}

TEMPLATE_TEST_CASE("shape advisories flag a perverse dispute function",
                   "[dispute]", double, Rational) {
  using R = TestType;
  CHECK(shape_advisories(symmetric_dispute<R>("5")).empty());

  auto d = symmetric_dispute<R>("5");
  // Player 1's share now rises with own spend in column 0 and falls with
  // the opponent's spend in row 0: both slopes point the wrong way.
  d.share1 = partial_grid_of<R>({{"0.5", "0.4", "0.3"},
                                 {"0.6", "0.5", "0.4"},
                                 {"0.7", "0.6", "0.5"}});
  auto advisories = shape_advisories(d);
  CHECK_FALSE(advisories.empty());
}

TEMPLATE_TEST_CASE("each side pays its own dispute costs", "[dispute]",
                   double, Rational) {
  using R = TestType;
  auto game = build_dispute_game(symmetric_dispute<R>("5"));
  const char* pay1[3][3] = {{"2.5", "4", "4.5"},
                            {"2", "3.5", "4"},
                            {"2.5", "4", "4.5"}};
  const char* pay2[3][3] = {{"2.5", "2", "2.5"},
                            {"4", "3.5", "4"},
                            {"4.5", "4", "4.5"}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      INFO("cell (" << i << "," << j << ")");
      CHECK(arith<R>::eq(game.cost1.at(i, j), num<R>(pay1[i][j])));
      CHECK(arith<R>::eq(game.cost2.at(i, j), num<R>(pay2[i][j])));
    }

  auto low = build_dispute_game(symmetric_dispute<R>("3"));
  CHECK(arith<R>::eq(low.cost1.at(0, 0), num<R>("1.5")));
  CHECK(arith<R>::eq(low.cost2.at(0, 0), num<R>("1.5")));
  CHECK(arith<R>::eq(low.cost1.at(1, 0), num<R>("1.6")));
  CHECK(arith<R>::eq(low.cost2.at(1, 0), num<R>("2.4")));
}

TEMPLATE_TEST_CASE("loser pays the initiator's bill", "[dispute]", double,
                   Rational) {
  using R = TestType;
  auto game = build_dispute_game(deterrence_dispute<R>());
  CHECK_FALSE(game.is_defined(0, 1));
  CHECK_FALSE(game.is_defined(0, 2));

  struct Expect {
    std::size_t i, j;
    const char* pay1;
    const char* pay2;
  };
  const Expect cells[] = {
      {0, 0, "2.5", "2.5"}, {1, 0, "1", "5"},   {1, 1, "4.5", "2.5"},
      {1, 2, "6", "2"},     {2, 0, "0.5", "6.5"}, {2, 1, "2", "6"},
      {2, 2, "6.5", "2.5"},
  };
  for (const auto& c : cells) {
    INFO("cell (" << c.i << "," << c.j << ")");
    CHECK(arith<R>::eq(game.cost1.at(c.i, c.j), num<R>(c.pay1)));
    CHECK(arith<R>::eq(game.cost2.at(c.i, c.j), num<R>(c.pay2)));
  }
}

TEMPLATE_TEST_CASE("proportional split divides the combined spend",
                   "[dispute]", double, Rational) {
  using R = TestType;
  auto d = symmetric_dispute<R>("5", DisputeInstitution::proportional);
  d.d1 = num<R>("0.25");
  auto game = build_dispute_game(d);
  // At (1,2): share 0.6, spends 1 + 2 = 3 split 0.25 / 0.75.
  CHECK(arith<R>::eq(game.cost1.at(1, 2), num<R>("3.75")));
  CHECK(arith<R>::eq(game.cost2.at(1, 2), num<R>("4.25")));
  CHECK(arith<R>::eq(game.cost1.at(0, 0), num<R>("2.5")));
}

TEMPLATE_TEST_CASE("proportional split at the spend ratio mimics own-pay",
                   "[dispute]", double, Rational) {
  using R = TestType;
  auto own = build_dispute_game(symmetric_dispute<R>("5"));
  auto base = symmetric_dispute<R>("5", DisputeInstitution::proportional);
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j) {
      R joint = base.spend1[i] + base.spend2[j];
      if (arith<R>::is_zero(joint)) continue;
      auto prop = base;
      prop.d1 = base.spend1[i] / joint;
      auto game = build_dispute_game(prop);
      CHECK(arith<R>::eq(game.cost1.at(i, j), own.cost1.at(i, j)));
      CHECK(arith<R>::eq(game.cost2.at(i, j), own.cost2.at(i, j)));
    }
}

TEMPLATE_TEST_CASE("payments conserve stake plus spends", "[dispute]",
                   double, Rational) {
  using R = TestType;
  testing::Rng rng(31);
  for (int round = 0; round < 200; ++round) {
    auto d = testing::random_dispute<R>(rng);
    auto game = build_dispute_game(d);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) {
        if (!game.is_defined(i, j)) continue;
        R expected = d.stake;
        if (i != 0 || j != 0 ||
            d.institution != DisputeInstitution::loser_pays_initiator)
          expected = expected + d.spend1[i] + d.spend2[j];
        CHECK(arith<R>::eq(game.cost1.at(i, j) + game.cost2.at(i, j),
                           expected));
      }
  }
}

TEMPLATE_TEST_CASE("simultaneous play of the worked disputes", "[dispute]",
                   double, Rational) {
  using R = TestType;
  SECTION("high stake provokes a dispute trap") {
    auto outcome = simultaneous_equilibria(symmetric_dispute<R>("5"));
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{1, 1}});
    CHECK(outcome.prisoners_dilemma);
    CHECK(arith<R>::eq(outcome.game.cost1.at(1, 1), num<R>("3.5")));
    CHECK(arith<R>::eq(outcome.game.cost2.at(1, 1), num<R>("3.5")));
  }
  SECTION("low stake keeps the parties at home") {
    auto outcome = simultaneous_equilibria(symmetric_dispute<R>("3"));
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{0, 0}});
    CHECK_FALSE(outcome.prisoners_dilemma);
  }
  SECTION("asymmetric capacity moves the equilibrium off center") {
    auto outcome = simultaneous_equilibria(asymmetric_dispute<R>("4"));
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{1, 0}});
    CHECK(arith<R>::eq(outcome.game.cost1.at(1, 0), num<R>("2.2")));
    CHECK(arith<R>::eq(outcome.game.cost2.at(1, 0), num<R>("2.8")));
    CHECK_FALSE(outcome.prisoners_dilemma);
  }
}

TEMPLATE_TEST_CASE("mixed fallback covers cycling disputes", "[dispute]",
                   double, Rational) {
  using R = TestType;
  DisputeModel<R> d{nums<R>({"0", "1"}), nums<R>({"0", "1"}),
                    partial_grid_of<R>({{"0.9", "0.1"}, {"0.1", "0.9"}}),
                    num<R>("10"), DisputeInstitution::each_pays_own,
                    std::nullopt};
  auto outcome = simultaneous_equilibria(d);
  CHECK(outcome.equilibria.empty());
  REQUIRE_FALSE(outcome.mixed.empty());
  CHECK(arith<R>::eq(outcome.mixed[0].p[0], num<R>("7") / num<R>("16")));
  CHECK(arith<R>::eq(outcome.mixed[0].q[0], num<R>("9") / num<R>("16")));
}

TEMPLATE_TEST_CASE("sequential play of the worked disputes", "[dispute]",
                   double, Rational) {
  using R = TestType;
  SECTION("own-pay escalation survives first moves") {
    auto outcome = sequential_solve(symmetric_dispute<R>("5"), 1);
    CHECK(outcome.sequential);
    CHECK(outcome.leader == 1);
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{1, 1}});
    REQUIRE(outcome.replies.size() == 3);
    for (const auto& reply : outcome.replies)
      CHECK(reply.follower_move == 1);
  }
  SECTION("loser-pays deters the initiator") {
    auto outcome = sequential_solve(deterrence_dispute<R>(), 1);
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{0, 0}});
    CHECK(arith<R>::eq(outcome.game.cost1.at(0, 0), num<R>("2.5")));
    CHECK(arith<R>::eq(outcome.game.cost2.at(0, 0), num<R>("2.5")));
    // Escalation replies exist but never pay off for the leader.
    REQUIRE(outcome.replies.size() == 3);
    CHECK(outcome.replies[0].follower_move == 0);
    CHECK(outcome.replies[1].follower_move == 2);
    CHECK(outcome.replies[2].follower_move == 2);
  }
  SECTION("the responder can lead instead") {
    auto outcome = sequential_solve(deterrence_dispute<R>(), 2);
    CHECK(outcome.leader == 2);
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{1, 2}});
    REQUIRE(outcome.replies.size() == 3);
    CHECK(outcome.replies[0].follower_move == 2);
    CHECK(outcome.replies[1].follower_move == 2);
    CHECK(outcome.replies[2].follower_move == 1);
  }
  SECTION("single leader move reduces to the follower's best reply") {
    DisputeModel<R> d{nums<R>({"0"}), nums<R>({"0", "1"}),
                      partial_grid_of<R>({{"0.5", "0.2"}}), num<R>("10"),
                      DisputeInstitution::each_pays_own, std::nullopt};
    auto outcome = sequential_solve(d, 1);
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{0, 0}});
  }
  SECTION("follower ties break toward the lower spend") {
    DisputeModel<R> d{nums<R>({"0"}), nums<R>({"0", "1"}),
                      partial_grid_of<R>({{"0.5", "0.75"}}), num<R>("4"),
                      DisputeInstitution::each_pays_own, std::nullopt};
    // Player 2 pays 2 either way; the quiet option wins.
    auto outcome = sequential_solve(d, 1);
    CHECK(outcome.equilibria == std::vector<Cell>{Cell{0, 0}});
  }
  SECTION("unknown leader is rejected") {
    CHECK_THROWS_AS(sequential_solve(symmetric_dispute<R>("5"), 3),
                    RequestError);
  }
}

TEMPLATE_TEST_CASE("sequential matches the backward-induction oracle",
                   "[dispute]", double, Rational) {
  using R = TestType;
  testing::Rng rng(32);
  for (int round = 0; round < 200; ++round) {
    auto d = testing::random_dispute<R>(rng);
    auto game = build_dispute_game(d);
    auto expected = testing::oracle_sequential_leader1(game);
    auto outcome = sequential_solve(d, 1);
    REQUIRE(expected.has_value());
    REQUIRE(outcome.equilibria.size() == 1);
    // The oracle breaks payment ties by scan order, which is the same
    // lowest-spend rule the solver uses.
    CHECK(outcome.equilibria[0] == *expected);
  }
}

TEMPLATE_TEST_CASE("commitment never hurts the leader", "[dispute]", double,
                   Rational) {
  using R = TestType;
  using A = arith<R>;
  testing::Rng rng(33);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    auto d = testing::random_dispute<R>(rng);
    auto outcome = sequential_solve(d, 1);
    const auto& game = outcome.game;

    // With a tied reply the follower may punish the leader, so the bound
    // only binds when every reply is unique.
    bool unique = true;
    for (std::size_t i = 0; i < d.rows() && unique; ++i) {
      std::optional<R> best;
      int count = 0;
      for (std::size_t j = 0; j < d.cols(); ++j) {
        if (!game.is_defined(i, j)) continue;
        if (!best || A::lt(game.cost2.at(i, j), *best)) {
          best = game.cost2.at(i, j);
          count = 1;
        } else if (A::eq(game.cost2.at(i, j), *best)) {
          ++count;
        }
      }
      if (count > 1) unique = false;
    }
    if (!unique) continue;

    auto pure = pure_equilibria(game);
    if (pure.empty()) continue;
    ++checked;
    const Cell path = outcome.equilibria.front();
    for (const Cell& eq : pure)
      CHECK(A::leq(game.cost1.at(path), game.cost1.at(eq)));
  }
  CHECK(checked > 20);
}

TEMPLATE_TEST_CASE("grand total adds the dispute spends", "[dispute]",
                   double, Rational) {
  using R = TestType;
  auto t = symmetric_model<R>();
  R e = num<R>("60");
  CHECK(arith<R>::eq(grand_total(t, e, 1, 1, R(1), R(1)), num<R>("5.8")));
  CHECK(arith<R>::eq(grand_total(t, e, 1, 1, R(0), R(0)),
                     total_cost(t, e, 1, 1).total));
  CHECK(arith<R>::eq(grand_total(t, e, 0, 0, R(2), R(3)), num<R>("65")));
  CHECK_THROWS_AS(grand_total(t, e, 1, 1, R(-1), R(0)), RequestError);

  auto gapped = t;
  gapped.loss.at(1, 1) = std::nullopt;
  CHECK_THROWS_AS(grand_total(gapped, e, 1, 1, R(1), R(1)),
                  InfeasiblePairError);
}

TEST_CASE("institution names round trip", "[dispute]") {
  CHECK(to_string(DisputeInstitution::each_pays_own) == "each-pays-own");
  CHECK(parse_institution("proportional") ==
        DisputeInstitution::proportional);
  CHECK(parse_institution("loser-pays-initiator") ==
        DisputeInstitution::loser_pays_initiator);
  CHECK_FALSE(parse_institution("winner-takes-all").has_value());
}

}  // namespace
}  // namespace txcost
