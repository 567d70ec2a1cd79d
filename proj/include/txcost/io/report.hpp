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

#ifndef TXCOST_IO_REPORT_HPP_
#define TXCOST_IO_REPORT_HPP_

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/dispute.hpp"
#include "txcost/efficiency.hpp"
#include "txcost/io/model_file.hpp"
#include "txcost/model.hpp"
#include "txcost/sharing.hpp"

namespace txcost {

enum class OutputFormat { table, csv };

// Display policy. Paper rounding shows currency amounts at one decimal,
// ties away from zero; it never touches probabilities, shares or loss
// fractions, and CSV output always carries full precision.
struct Style {
  OutputFormat format = OutputFormat::table;
  bool paper = false;
};

namespace io_detail {

inline std::string printf_double(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, value);
  return buffer;
}

}  // namespace io_detail

// Plain value: shortest faithful form for the mode (exact text in rational
// mode, 6 significant digits in double mode).
template <class R>
std::string format_value(const R& value) {
  if constexpr (arith<R>::exact) return format_scalar(value);
  else return io_detail::printf_double("%.6g", value);
}

template <class R>
std::string format_csv_value(const R& value) {
  return io_detail::printf_double("%.17g", arith<R>::to_double(value));
}

template <class R>
std::string format_money(const R& value, const Style& style) {
  if (style.format == OutputFormat::csv) return format_csv_value(value);
  if (style.paper) return round_tenths_str(value);
  return format_value(value);
}

template <class R>
std::string format_fraction(const R& value, const Style& style) {
  if (style.format == OutputFormat::csv) return format_csv_value(value);
  return format_value(value);
}

template <class R>
std::string format_probability(const R& value) {
  return io_detail::printf_double("%.6f", arith<R>::to_double(value));
}

inline std::string format_cells(const std::vector<Cell>& cells) {
  std::string out;
  for (const Cell& c : cells) {
    if (!out.empty()) out += " ";
    out += to_string(c);
  }
  return out.empty() ? "none" : out;
}

// Column-aligned text table. Every column is padded to its widest entry;
// alignment is left for the first column and right for the rest, which
// reads well for numeric grids.
class TableWriter {
 public:
  explicit TableWriter(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& out) const {
    std::vector<std::size_t> widths(header_.size(), 0);
    auto grow = [&](const std::vector<std::string>& row) {
      for (std::size_t k = 0; k < row.size(); ++k)
        widths[k] = std::max(widths[k], row[k].size());
    };
    grow(header_);
    for (const auto& row : rows_) grow(row);
    auto emit = [&](const std::vector<std::string>& row) {
      std::string text;
      for (std::size_t k = 0; k < row.size(); ++k) {
        std::string pad(widths[k] - row[k].size(), ' ');
        if (k) text += "  ";
        text += k == 0 ? row[k] + pad : pad + row[k];
      }
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out << text << "\n";
    };
    emit(header_);
    for (const auto& row : rows_) emit(row);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline void write_csv_row(std::ostream& out,
                          const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k)
    out << (k ? "," : "") << fields[k];
  out << "\n";
}

namespace io_detail {

template <class R>
std::string hull_certificate(const Elimination<R>& e) {
  std::string text;
  for (const auto& w : e.weights) {
    if (!text.empty()) text += " + ";
    text += format_probability(w.weight) + "*" + to_string(w.cell);
  }
  return text;
}

template <class R>
std::string certificate_text(const Elimination<R>& e) {
  if (e.dominator) return "dominated by " + to_string(*e.dominator);
  return "mix " + hull_certificate(e);
}

}  // namespace io_detail

template <class R>
void render_frontier(std::ostream& out, const RelevantSet<R>& frontier,
                     const Style& style) {
  const bool csv = style.format == OutputFormat::csv;
  std::vector<std::string> header{"i", "j",      "z1",     "z2",
                                  "pl", "status", "reason", "certificate"};
  TableWriter table(header);
  auto row_of = [&](const DecisionPoint<R>& p, const std::string& status,
                    const std::string& reason, const std::string& cert) {
    return std::vector<std::string>{
        std::to_string(p.cell.i),           std::to_string(p.cell.j),
        format_money(p.cost1, style),       format_money(p.cost2, style),
        format_fraction(p.loss, style),     status,
        reason,                             cert};
  };

  std::vector<std::vector<std::string>> rows;
  std::size_t kept_cursor = 0;
  std::size_t elim_cursor = 0;
  while (kept_cursor < frontier.kept.size() ||
         elim_cursor < frontier.eliminated.size()) {
    bool take_kept =
        elim_cursor >= frontier.eliminated.size() ||
        (kept_cursor < frontier.kept.size() &&
         frontier.kept[kept_cursor].cell <
             frontier.eliminated[elim_cursor].point.cell);
    if (take_kept) {
      rows.push_back(row_of(frontier.kept[kept_cursor], "kept", "-", "-"));
      ++kept_cursor;
    } else {
      const auto& e = frontier.eliminated[elim_cursor];
      rows.push_back(row_of(e.point, "eliminated", to_string(e.reason),
                            io_detail::certificate_text(e)));
      ++elim_cursor;
    }
  }

  if (csv) {
    write_csv_row(out, header);
    for (auto& row : rows) write_csv_row(out, row);
    return;
  }
  for (auto& row : rows) table.add_row(std::move(row));
  table.render(out);
  out << "kept " << frontier.kept.size() << " of "
      << frontier.kept.size() + frontier.eliminated.size()
      << " feasible pairs\n";
}

template <class R>
void render_optimum(std::ostream& out, const TransactionType<R>& t,
                    const OptimumReport<R>& report, const Style& style) {
  if (style.format == OutputFormat::csv) {
    write_csv_row(out, {"i", "j", "z1", "z2", "pl", "tc", "is_optimum"});
    for (const Cell& c : t.feasible_cells()) {
      bool is_opt = std::find(report.argmin.begin(), report.argmin.end(), c) !=
                    report.argmin.end();
      auto parts = total_cost(t, report.exposure, c.i, c.j);
      write_csv_row(out, {std::to_string(c.i), std::to_string(c.j),
                          format_csv_value(parts.cost1),
                          format_csv_value(parts.cost2),
                          format_csv_value(t.loss_at(c.i, c.j)),
                          format_csv_value(parts.total), is_opt ? "1" : "0"});
    }
    return;
  }

  out << "total cost at exposure " << format_money(report.exposure, style)
      << "\n";
  std::vector<std::string> header{""};
  for (std::size_t j = 0; j < t.cols(); ++j)
    header.push_back(t.player2.name(j));
  TableWriter table(header);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    std::vector<std::string> row{t.player1.name(i)};
    for (std::size_t j = 0; j < t.cols(); ++j)
      row.push_back(t.feasible(i, j)
                        ? format_money(
                              total_cost(t, report.exposure, i, j).total,
                              style)
                        : "-");
    table.add_row(std::move(row));
  }
  table.render(out);
  out << "optimum " << format_money(report.value, style) << " at "
      << format_cells(report.argmin) << "\n";
}

template <class R>
void render_sweep(std::ostream& out, const ExposureSweep<R>& sweep,
                  const Style& style) {
  if (style.format == OutputFormat::csv) {
    write_csv_row(out, {"e_lo", "e_hi", "intercept", "slope", "cells"});
    for (const auto& s : sweep.segments) {
      std::string cells;
      for (const Cell& c : s.argmin)
        cells += (cells.empty() ? "" : ";") + std::to_string(c.i) + ":" +
                 std::to_string(c.j);
      write_csv_row(out, {format_csv_value(s.e_lo), format_csv_value(s.e_hi),
                          format_csv_value(s.intercept),
                          format_csv_value(s.slope), cells});
    }
    return;
  }

  TableWriter table({"from", "to", "intercept", "slope", "cells"});
  for (const auto& s : sweep.segments)
    table.add_row({format_value(s.e_lo), format_value(s.e_hi),
                   format_money(s.intercept, style),
                   format_fraction(s.slope, style), format_cells(s.argmin)});
  table.render(out);
  if (sweep.breakpoints.empty()) {
    out << "no breakpoints\n";
    return;
  }
  out << "breakpoints\n";
  TableWriter breaks({"e", "cells"});
  for (const auto& b : sweep.breakpoints)
    breaks.add_row({format_value(b.exposure), format_cells(b.argmin)});
  breaks.render(out);
}

template <class R>
void render_payment_matrix(std::ostream& out, const BimatrixGame<R>& game,
                           const Style& style) {
  std::vector<std::string> header{""};
  for (std::size_t j = 0; j < game.cols(); ++j)
    header.push_back(std::to_string(j));
  TableWriter table(header);
  for (std::size_t i = 0; i < game.rows(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (std::size_t j = 0; j < game.cols(); ++j)
      row.push_back(game.is_defined(i, j)
                        ? format_money(game.cost1.at(i, j), style) + ", " +
                              format_money(game.cost2.at(i, j), style)
                        : "-");
    table.add_row(std::move(row));
  }
  table.render(out);
}

template <class R>
void render_mixed_profiles(std::ostream& out,
                           const std::vector<MixedProfile<R>>& mixed,
                           const std::vector<std::string>& notes,
                           const Style& style) {
  if (mixed.empty()) {
    out << "no mixed profile found\n";
  }
  for (std::size_t k = 0; k < mixed.size(); ++k) {
    const auto& profile = mixed[k];
    out << "mixed profile " << k + 1 << "\n";
    auto vec = [&](const std::vector<R>& mix) {
      std::string text = "(";
      for (std::size_t s = 0; s < mix.size(); ++s)
        text += (s ? ", " : "") + format_probability(mix[s]);
      return text + ")";
    };
    out << "  p = " << vec(profile.p) << "\n";
    out << "  q = " << vec(profile.q) << "\n";
    out << "  expected payments " << format_money(profile.cost1, style)
        << ", " << format_money(profile.cost2, style) << "\n";
  }
  for (const auto& note : notes) out << "note: " << note << "\n";
}

template <class R>
void render_game(std::ostream& out, const BimatrixGame<R>& game,
                 const std::vector<Cell>& pure,
                 const EquilibriumReport<R>* mixed, const Style& style) {
  if (style.format == OutputFormat::csv) {
    write_csv_row(out,
                  {"i", "j", "cost1", "cost2", "defined", "pure_equilibrium"});
    for (std::size_t i = 0; i < game.rows(); ++i)
      for (std::size_t j = 0; j < game.cols(); ++j) {
        bool eq = std::find(pure.begin(), pure.end(), Cell{i, j}) != pure.end();
        write_csv_row(out, {std::to_string(i), std::to_string(j),
                            format_csv_value(game.cost1.at(i, j)),
                            format_csv_value(game.cost2.at(i, j)),
                            game.is_defined(i, j) ? "1" : "0",
                            eq ? "1" : "0"});
      }
    return;
  }

  out << "payments (player 1, player 2), " << game.provenance << "\n";
  render_payment_matrix(out, game, style);
  out << "pure equilibria: " << format_cells(pure) << "\n";
  if (mixed) render_mixed_profiles(out, mixed->mixed, mixed->notes, style);
}

template <class R>
void render_rule_matrix(std::ostream& out, const SharingRule<R>& rule,
                        const Style& style) {
  std::vector<std::string> header{""};
  for (std::size_t j = 0; j < rule.c1.cols(); ++j)
    header.push_back(std::to_string(j));
  TableWriter table(header);
  for (std::size_t i = 0; i < rule.c1.rows(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (std::size_t j = 0; j < rule.c1.cols(); ++j)
      row.push_back(format_fraction(rule.c1.at(i, j), style));
    table.add_row(std::move(row));
  }
  table.render(out);
}

inline std::string axis_text(const OptimizerWitness& witness) {
  std::string text = witness.column ? "column " : "row ";
  text += std::to_string(witness.index);
  auto set_text = [](const std::vector<std::size_t>& set) {
    std::string inner;
    for (std::size_t k : set) inner += (inner.empty() ? "" : ",") +
                                       std::to_string(k);
    return "{" + inner + "}";
  };
  text += ": payment argmin " + set_text(witness.payment_argmin) +
          " vs total-cost argmin " + set_text(witness.total_argmin);
  return text;
}

template <class R>
void render_optimizer_check(std::ostream& out, const SharingRule<R>& rule,
                            const OptimizerCheck& check, const Style& style) {
  if (style.format == OutputFormat::csv) {
    write_csv_row(out, {"i", "j", "c1"});
    for (std::size_t i = 0; i < rule.c1.rows(); ++i)
      for (std::size_t j = 0; j < rule.c1.cols(); ++j)
        write_csv_row(out, {std::to_string(i), std::to_string(j),
                            format_csv_value(rule.c1.at(i, j))});
    out << "# optimizer: " << (check.optimizer ? "yes" : "no") << "\n";
    if (check.witness) out << "# witness: " << axis_text(*check.witness) << "\n";
    return;
  }
  out << "rule (player 1 share)\n";
  render_rule_matrix(out, rule, style);
  out << "optimizer: " << (check.optimizer ? "yes" : "no") << "\n";
  if (check.witness) out << "witness: " << axis_text(*check.witness) << "\n";
}

template <class R>
void render_rule_design(std::ostream& out, const SharingRule<R>& rule,
                        const std::vector<std::string>& facts,
                        const Style& style) {
  if (style.format == OutputFormat::csv) {
    write_csv_row(out, {"i", "j", "c1"});
    for (std::size_t i = 0; i < rule.c1.rows(); ++i)
      for (std::size_t j = 0; j < rule.c1.cols(); ++j)
        write_csv_row(out, {std::to_string(i), std::to_string(j),
                            format_csv_value(rule.c1.at(i, j))});
    for (const auto& fact : facts) out << "# " << fact << "\n";
    return;
  }
  out << "designed rule (player 1 share)\n";
  render_rule_matrix(out, rule, style);
  for (const auto& fact : facts) out << fact << "\n";
}

template <class R>
void render_dispute(std::ostream& out, const DisputeModel<R>& d,
                    const DisputeOutcome<R>& outcome, const Style& style) {
  const BimatrixGame<R>& game = outcome.game;
  if (style.format == OutputFormat::csv) {
    write_csv_row(out, {"i", "j", "v1", "v2", "s1", "cost1", "cost2",
                        "defined", "equilibrium"});
    for (std::size_t i = 0; i < game.rows(); ++i)
      for (std::size_t j = 0; j < game.cols(); ++j) {
        bool defined = game.is_defined(i, j);
        bool eq = std::find(outcome.equilibria.begin(),
                            outcome.equilibria.end(),
                            Cell{i, j}) != outcome.equilibria.end();
        write_csv_row(
            out,
            {std::to_string(i), std::to_string(j),
             format_csv_value(d.spend1[i]), format_csv_value(d.spend2[j]),
             defined ? format_csv_value(*d.share1.at(i, j)) : "",
             defined ? format_csv_value(game.cost1.at(i, j)) : "",
             defined ? format_csv_value(game.cost2.at(i, j)) : "",
             defined ? "1" : "0", eq ? "1" : "0"});
      }
    out << "# institution: " << to_string(d.institution) << "\n";
    out << "# stake: " << format_csv_value(d.stake) << "\n";
    if (outcome.sequential)
      out << "# mode: sequential, leader player " << outcome.leader << "\n";
    else
      out << "# mode: simultaneous\n";
    return;
  }

  out << "dispute payments (" << to_string(d.institution) << ", stake "
      << format_money(d.stake, style) << ")\n";
  render_payment_matrix(out, game, style);

  auto outcome_total = [&](const Cell& c) -> R {
    return R(d.stake + d.spend1[c.i] + d.spend2[c.j]);
  };
  if (outcome.sequential) {
    out << "best replies (leader player " << outcome.leader << ")\n";
    TableWriter replies({"leader", "follower", "leader-pay", "follower-pay"});
    for (const auto& reply : outcome.replies)
      replies.add_row({std::to_string(reply.leader_move),
                       std::to_string(reply.follower_move),
                       format_money(reply.leader_pay, style),
                       format_money(reply.follower_pay, style)});
    replies.render(out);
    const Cell& path = outcome.equilibria.front();
    out << "outcome " << to_string(path) << " payments "
        << format_money(game.cost1.at(path), style) << ", "
        << format_money(game.cost2.at(path), style) << " total "
        << format_money(outcome_total(path), style) << "\n";
    return;
  }

  out << "pure equilibria: " << format_cells(outcome.equilibria) << "\n";
  for (const Cell& c : outcome.equilibria)
    out << "  " << to_string(c) << " payments "
        << format_money(game.cost1.at(c), style) << ", "
        << format_money(game.cost2.at(c), style) << " total "
        << format_money(outcome_total(c), style) << "\n";
  if (!outcome.mixed.empty())
    render_mixed_profiles(out, outcome.mixed, {}, style);
  out << "prisoners-dilemma pattern: "
      << (outcome.prisoners_dilemma ? "yes" : "no") << "\n";
}

template <class R>
void render_surface(std::ostream& out, const std::vector<SurfaceRow<R>>& rows,
                    const Style& style) {
  std::vector<std::string> header{"i", "j", "z1", "z2", "pl", "tc",
                                  "relevant"};
  if (style.format == OutputFormat::csv) {
    write_csv_row(out, header);
    for (const auto& row : rows)
      write_csv_row(out, {std::to_string(row.cell.i),
                          std::to_string(row.cell.j),
                          format_csv_value(row.cost1),
                          format_csv_value(row.cost2),
                          format_csv_value(row.loss),
                          format_csv_value(row.total),
                          row.relevant ? "1" : "0"});
    return;
  }
  TableWriter table(header);
  for (const auto& row : rows)
    table.add_row({std::to_string(row.cell.i), std::to_string(row.cell.j),
                   format_money(row.cost1, style),
                   format_money(row.cost2, style),
                   format_fraction(row.loss, style),
                   format_money(row.total, style), row.relevant ? "1" : "0"});
  table.render(out);
}

}  // namespace txcost

#endif  // TXCOST_IO_REPORT_HPP_
