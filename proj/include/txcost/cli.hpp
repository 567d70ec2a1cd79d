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

#ifndef TXCOST_CLI_HPP_
#define TXCOST_CLI_HPP_

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "txcost/dispute.hpp"
#include "txcost/efficiency.hpp"
#include "txcost/errors.hpp"
#include "txcost/io/model_file.hpp"
#include "txcost/io/report.hpp"
#include "txcost/model.hpp"
#include "txcost/sharing.hpp"

namespace txcost {

namespace cli_detail {

enum class Command {
  frontier,
  optimum,
  sweep,
  game_solve,
  rule_check,
  rule_design,
  dispute_solve,
  surface,
};

struct Options {
  Command command = Command::frontier;
  std::string model_path;
  Style style;
  bool exact = false;
  std::string exposure;
  std::string from;
  std::string to;
  bool mixed = false;
  std::size_t cap = 8;
  std::string criterion;
  std::string base = "0.5";
  std::string share;
  std::string share_hint;
  std::string mode = "simultaneous";
  int leader = 1;
};

template <class R>
R parse_amount(const std::string& text, const std::string& flag) {
  auto value = parse_scalar_token(text);
  if (!value)
    throw RequestError(flag + ": \"" + text + "\" is not a number");
  return R(arith<R>::from_rational(*value));
}

template <class R>
R resolve_exposure(const Options& options, const Scenario<R>& scenario) {
  if (!options.exposure.empty())
    return parse_amount<R>(options.exposure, "--exposure");
  if (scenario.exposure) return *scenario.exposure;
  throw RequestError(
      "an exposure is required (--exposure or an [exposure] section)");
}

template <class R>
const SharingRule<R>& require_rule(const Scenario<R>& scenario) {
  if (!scenario.rule)
    throw RequestError("the model file has no [sharing] section");
  return *scenario.rule;
}

template <class R>
int execute(const Options& options, std::ostream& out, std::ostream& err) {
  ModelDocument doc = parse_model_file(options.model_path);
  for (const auto& advisory : document_advisories(doc))
    err << advisory << "\n";
  Scenario<R> scenario = instantiate<R>(doc);
  const Style& style = options.style;

  switch (options.command) {
    case Command::frontier: {
      render_frontier(out, relevant_set(scenario.type), style);
      break;
    }
    case Command::optimum: {
      R exposure = resolve_exposure(options, scenario);
      render_optimum(out, scenario.type, minimize_cost(scenario.type, exposure),
                     style);
      break;
    }
    case Command::sweep: {
      R from = parse_amount<R>(options.from, "--from");
      R to = parse_amount<R>(options.to, "--to");
      render_sweep(out, exposure_sweep(scenario.type, from, to), style);
      break;
    }
    case Command::game_solve: {
      R exposure = resolve_exposure(options, scenario);
      BimatrixGame<R> game =
          build_game(scenario.type, exposure, require_rule(scenario));
      std::vector<Cell> pure = pure_equilibria(game);
      if (options.mixed) {
        EquilibriumReport<R> report = mixed_equilibria(game, options.cap);
        render_game(out, game, pure, &report, style);
      } else {
        render_game<R>(out, game, pure, nullptr, style);
      }
      break;
    }
    case Command::rule_check: {
      R exposure = resolve_exposure(options, scenario);
      const SharingRule<R>& rule = require_rule(scenario);
      render_optimizer_check(out, rule,
                             is_optimizer(rule, scenario.type, exposure),
                             style);
      break;
    }
    case Command::rule_design: {
      R exposure = resolve_exposure(options, scenario);
      std::vector<std::string> facts;
      if (options.criterion == "balanced") {
        std::optional<R> hint;
        if (!options.share_hint.empty())
          hint = parse_amount<R>(options.share_hint, "--share-hint");
        BalancedDesign<R> design =
            design_balanced_rule(scenario.type, exposure, hint);
        facts.push_back("criterion: balanced");
        facts.push_back("opt share c* = " + format_value(design.opt_share));
        if (design.clamped)
          facts.push_back("share clamped to [0, 1]; residual imbalance " +
                          format_money(design.residual_imbalance, style));
        facts.push_back(
            "regret r1 = " + format_money(design.regret.regret1, style) +
            ", r2 = " + format_money(design.regret.regret2, style) +
            (design.regret.balanced ? ", balanced" : ", imbalanced"));
        render_rule_design(out, design.rule, facts, style);
      } else if (options.criterion == "pay-for-mistake") {
        R base = parse_amount<R>(options.base, "--base");
        MistakeDesign<R> design =
            pay_for_mistake_rule(scenario.type, exposure, base);
        facts.push_back("criterion: pay-for-mistake");
        facts.push_back("base share = " + format_value(base));
        if (!design.clamped.empty())
          facts.push_back("shares clamped at " +
                          format_cells(design.clamped));
        render_rule_design(out, design.rule, facts, style);
      } else {
        if (options.share.empty())
          throw RequestError("--criterion fixed needs --share");
        R share = parse_amount<R>(options.share, "--share");
        SharingRule<R> rule =
            fixed_share_rule(share, scenario.type.rows(),
                             scenario.type.cols());
        facts.push_back("criterion: fixed");
        facts.push_back("share = " + format_value(share));
        render_rule_design(out, rule, facts, style);
      }
      break;
    }
    case Command::dispute_solve: {
      if (!scenario.dispute)
        throw RequestError("the model file has no [dispute] section");
      DisputeOutcome<R> outcome =
          options.mode == "sequential"
              ? sequential_solve(*scenario.dispute, options.leader)
              : simultaneous_equilibria(*scenario.dispute);
      render_dispute(out, *scenario.dispute, outcome, style);
      break;
    }
    case Command::surface: {
      R exposure = resolve_exposure(options, scenario);
      render_surface(out, surface_export(scenario.type, exposure), style);
      break;
    }
  }
  return 0;
}

}  // namespace cli_detail

// Full command-line entry point, reusable from tests: parses argv (without
// the program name), runs the command, writes reports to `out` and
// diagnostics to `err`, and returns the process exit code. 0 = success,
// 1 = unreadable or invalid model file, 2 = well-formed but unanswerable
// request (bad flags, solver caps, ill-posed designs).
inline int run_command(std::vector<std::string> args, std::ostream& out,
                       std::ostream& err) {
  using cli_detail::Command;
  cli_detail::Options options;
  std::string format_text = "table";

  CLI::App app{"transaction cost analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format_text, "output format")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  app.add_flag("--paper-rounding", options.style.paper,
               "display currency at one decimal, ties away from zero");
  app.add_flag("--exact", options.exact, "exact rational arithmetic");

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("model", options.model_path, "scenario file")
        ->required();
    cmd->fallthrough();
  };

  CLI::App* frontier =
      app.add_subcommand("frontier", "relevant decision pairs");
  add_model(frontier);

  CLI::App* optimum =
      app.add_subcommand("optimum", "total-cost minimum at one exposure");
  optimum->add_option("--exposure", options.exposure,
                      "exposure override (defaults to the file's)");
  add_model(optimum);

  CLI::App* sweep =
      app.add_subcommand("sweep", "optimal cost across an exposure range");
  sweep->add_option("--from", options.from, "range start")->required();
  sweep->add_option("--to", options.to, "range end")->required();
  add_model(sweep);

  CLI::App* game = app.add_subcommand("game", "sharing game analysis");
  game->require_subcommand(1);
  game->fallthrough();
  CLI::App* game_solve =
      game->add_subcommand("solve", "equilibria of the sharing game");
  game_solve->add_flag("--mixed", options.mixed,
                       "also enumerate mixed equilibria");
  game_solve->add_option("--cap", options.cap,
                         "support enumeration size cap")
      ->capture_default_str();
  add_model(game_solve);

  CLI::App* rule = app.add_subcommand("rule", "sharing rule analysis");
  rule->require_subcommand(1);
  rule->fallthrough();
  CLI::App* rule_check = rule->add_subcommand(
      "check-optimizer", "test the file's rule for the optimizer property");
  add_model(rule_check);
  CLI::App* rule_design =
      rule->add_subcommand("design", "construct a sharing rule");
  rule_design
      ->add_option("--criterion", options.criterion, "design criterion")
      ->check(CLI::IsMember({"balanced", "pay-for-mistake", "fixed"}))
      ->required();
  rule_design->add_option("--base", options.base,
                          "base share for pay-for-mistake")
      ->capture_default_str();
  rule_design->add_option("--share", options.share,
                          "constant share for the fixed criterion");
  rule_design->add_option("--share-hint", options.share_hint,
                          "share at a zero-cost optimum (balanced)");
  add_model(rule_design);

  CLI::App* dispute = app.add_subcommand("dispute", "dispute game analysis");
  dispute->require_subcommand(1);
  dispute->fallthrough();
  CLI::App* dispute_solve =
      dispute->add_subcommand("solve", "solve the file's dispute game");
  dispute_solve->add_option("--mode", options.mode, "simultaneous/sequential")
      ->check(CLI::IsMember({"simultaneous", "sequential"}))
      ->capture_default_str();
  dispute_solve->add_option("--leader", options.leader,
                            "first mover in sequential mode")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  add_model(dispute_solve);

  CLI::App* surface = app.add_subcommand(
      "export-surface", "per-cell cost surface for external plotting");
  surface->add_option("--exposure", options.exposure,
                      "exposure override (defaults to the file's)");
  add_model(surface);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& help) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (frontier->parsed()) options.command = Command::frontier;
  else if (optimum->parsed()) options.command = Command::optimum;
  else if (sweep->parsed()) options.command = Command::sweep;
  else if (game->parsed()) options.command = Command::game_solve;
  else if (rule->parsed())
    options.command = rule_check->parsed() ? Command::rule_check
                                           : Command::rule_design;
  else if (dispute->parsed()) options.command = Command::dispute_solve;
  else options.command = Command::surface;
  options.style.format =
      format_text == "csv" ? OutputFormat::csv : OutputFormat::table;

  try {
    return options.exact ? cli_detail::execute<Rational>(options, out, err)
                         : cli_detail::execute<double>(options, out, err);
  } catch (const ParseError& e) {
    err << options.model_path << ": " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    for (const auto& d : e.diagnostics()) err << d.message << "\n";
    return 1;
  } catch (const RequestError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace txcost

#endif  // TXCOST_CLI_HPP_
