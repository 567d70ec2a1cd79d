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

#ifndef TXCOST_IO_MODEL_FILE_HPP_
#define TXCOST_IO_MODEL_FILE_HPP_

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/dispute.hpp"
#include "txcost/errors.hpp"
#include "txcost/grid.hpp"
#include "txcost/model.hpp"
#include "txcost/sharing.hpp"

namespace txcost {

// In-memory form of a scenario file. Values stay exact rationals so that a
// document can be re-serialized without loss and instantiated in either
// arithmetic mode. The grammar lives in docs/format.md.
struct ModelDocument {
  std::vector<std::string> labels1;
  std::vector<std::string> labels2;
  std::vector<Rational> costs1;
  std::vector<Rational> costs2;
  Grid<std::optional<Rational>> loss;
  std::optional<Rational> exposure;
  std::optional<Grid<Rational>> sharing;

  struct DisputeSection {
    std::vector<Rational> spend1;
    std::vector<Rational> spend2;
    Grid<std::optional<Rational>> share1;
    Rational stake = 0;
    DisputeInstitution institution = DisputeInstitution::each_pays_own;
    std::optional<Rational> d1;

    friend bool operator==(const DisputeSection&,
                           const DisputeSection&) = default;
  };
  std::optional<DisputeSection> dispute;

  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

// A document instantiated in one arithmetic mode, ready for the solvers.
template <class R>
struct Scenario {
  TransactionType<R> type;
  std::optional<R> exposure;
  std::optional<SharingRule<R>> rule;
  std::optional<DisputeModel<R>> dispute;
};

// Accepts decimal literals and integer fractions ("0.05", "60", "20/19").
inline std::optional<Rational> parse_scalar_token(const std::string& token) {
  auto slash = token.find('/');
  if (slash != std::string::npos) {
    auto num = parse_rational(token.substr(0, slash));
    auto den = parse_rational(token.substr(slash + 1));
    if (!num || !den || den->is_zero()) return std::nullopt;
    if (denominator(*num) != 1 || denominator(*den) != 1) return std::nullopt;
    return *num / *den;
  }
  return parse_rational(token);
}

// Shortest faithful text for a rational: integer, finite decimal when the
// denominator allows one, fraction otherwise. parse_scalar_token reads all
// three back exactly.
inline std::string format_scalar(const Rational& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  if (den == 1) return num.str();
  BigInt rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest == 1) {
    unsigned places = std::max(twos, fives);
    BigInt scaled = num * (pow(BigInt(10), places) / den);
    if (scaled < 0) scaled = -scaled;
    std::string digits = scaled.str();
    if (digits.size() <= places)
      digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    return (num < 0 ? "-" : "") + digits;
  }
  return num.str() + "/" + den.str();
}

namespace io_detail {

inline std::string trim(const std::string& text) {
  auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream stream(text);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

struct MatrixRows {
  std::vector<std::vector<std::optional<Rational>>> rows;
  std::vector<std::size_t> lines;
};

// Where each piece of the document came from, for diagnostics that point
// at the offending file line.
struct SourceMap {
  std::string name;
  std::map<std::string, std::size_t> keys;
  std::vector<std::size_t> loss_lines;
  std::vector<std::size_t> sharing_lines;
  std::vector<std::size_t> share1_lines;

  std::string at_key(const std::string& key) const {
    auto found = keys.find(key);
    std::string where = name;
    if (found != keys.end()) where += ":" + std::to_string(found->second);
    return where;
  }
  std::string at_row(const std::vector<std::size_t>& lines,
                     std::size_t row) const {
    std::string where = name;
    if (row < lines.size()) where += ":" + std::to_string(lines[row]);
    return where;
  }
};

inline Grid<std::optional<Rational>> to_grid(const MatrixRows& rows,
                                             const std::string& section) {
  if (rows.rows.empty()) return {};
  std::size_t cols = rows.rows.front().size();
  for (std::size_t r = 0; r < rows.rows.size(); ++r)
    if (rows.rows[r].size() != cols)
      throw ParseError(rows.lines[r], "[" + section + "] row has " +
                                          std::to_string(rows.rows[r].size()) +
                                          " entries, expected " +
                                          std::to_string(cols));
  Grid<std::optional<Rational>> grid(rows.rows.size(), cols);
  for (std::size_t r = 0; r < rows.rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) grid.at(r, c) = rows.rows[r][c];
  return grid;
}

inline std::vector<Rational> parse_number_list(const std::string& text,
                                               std::size_t line,
                                               const std::string& key) {
  std::vector<Rational> values;
  for (const auto& token : split_tokens(text)) {
    auto value = parse_scalar_token(token);
    if (!value)
      throw ParseError(line, key + ": \"" + token + "\" is not a number");
    values.push_back(*value);
  }
  return values;
}

}  // namespace io_detail

// Builds the typed scenario for one arithmetic mode. The document is
// expected to be validated already; this is a pure conversion.
template <class R>
Scenario<R> instantiate(const ModelDocument& doc) {
  auto convert = [](const Rational& v) { return R(arith<R>::from_rational(v)); };
  Scenario<R> scenario;
  scenario.type.player1.labels = doc.labels1;
  scenario.type.player2.labels = doc.labels2;
  for (const auto& v : doc.costs1) scenario.type.player1.costs.push_back(convert(v));
  for (const auto& v : doc.costs2) scenario.type.player2.costs.push_back(convert(v));
  scenario.type.loss =
      Grid<std::optional<R>>(doc.loss.rows(), doc.loss.cols());
  for (std::size_t i = 0; i < doc.loss.rows(); ++i)
    for (std::size_t j = 0; j < doc.loss.cols(); ++j)
      if (doc.loss.at(i, j))
        scenario.type.loss.at(i, j) = convert(*doc.loss.at(i, j));
  if (doc.exposure) scenario.exposure = convert(*doc.exposure);
  if (doc.sharing) {
    SharingRule<R> rule{Grid<R>(doc.sharing->rows(), doc.sharing->cols(), R(0))};
    for (std::size_t i = 0; i < doc.sharing->rows(); ++i)
      for (std::size_t j = 0; j < doc.sharing->cols(); ++j)
        rule.c1.at(i, j) = convert(doc.sharing->at(i, j));
    scenario.rule = std::move(rule);
  }
  if (doc.dispute) {
    DisputeModel<R> dispute;
    for (const auto& v : doc.dispute->spend1) dispute.spend1.push_back(convert(v));
    for (const auto& v : doc.dispute->spend2) dispute.spend2.push_back(convert(v));
    dispute.share1 = Grid<std::optional<R>>(doc.dispute->share1.rows(),
                                            doc.dispute->share1.cols());
    for (std::size_t i = 0; i < dispute.share1.rows(); ++i)
      for (std::size_t j = 0; j < dispute.share1.cols(); ++j)
        if (doc.dispute->share1.at(i, j))
          dispute.share1.at(i, j) = convert(*doc.dispute->share1.at(i, j));
    dispute.stake = convert(doc.dispute->stake);
    dispute.institution = doc.dispute->institution;
    if (doc.dispute->d1) dispute.d1 = convert(*doc.dispute->d1);
    scenario.dispute = std::move(dispute);
  }
  return scenario;
}

namespace io_detail {

// Cross-checks the assembled document against every module invariant and
// anchors each finding to its source line.
inline void validate_document(const ModelDocument& doc, const SourceMap& map) {
  std::vector<Diagnostic> findings;
  auto add = [&](const std::string& where, const Diagnostic& d) {
    findings.push_back({where + ": " + d.message, d.cell});
  };

  if (doc.costs1.empty())
    findings.push_back({map.name + ": [player1] needs a costs line",
                        std::nullopt});
  if (doc.costs2.empty())
    findings.push_back({map.name + ": [player2] needs a costs line",
                        std::nullopt});
  if (doc.loss.empty())
    findings.push_back({map.name + ": missing [loss] section", std::nullopt});
  if (!findings.empty()) throw ValidationError(std::move(findings));

  Scenario<Rational> scenario = instantiate<Rational>(doc);
  for (const auto& d : validate(scenario.type)) {
    std::string where = d.cell ? map.at_row(map.loss_lines, d.cell->i)
                               : map.at_key("player1.costs");
    add(where, d);
  }
  if (scenario.exposure)
    for (const auto& d : validate(Exposure<Rational>{*scenario.exposure}))
      add(map.at_key("exposure.value"), d);
  if (scenario.rule) {
    if (!scenario.rule->c1.same_shape(scenario.type.loss))
      findings.push_back(
          {map.at_row(map.sharing_lines, 0) + ": sharing rule is " +
               std::to_string(scenario.rule->c1.rows()) + "x" +
               std::to_string(scenario.rule->c1.cols()) +
               " but the model needs " +
               std::to_string(scenario.type.rows()) + "x" +
               std::to_string(scenario.type.cols()),
           std::nullopt});
    else
      for (const auto& d : validate(*scenario.rule))
        add(map.at_row(map.sharing_lines, d.cell ? d.cell->i : 0), d);
  }
  if (scenario.dispute)
    for (const auto& d : validate(*scenario.dispute)) {
      std::string where = d.cell ? map.at_row(map.share1_lines, d.cell->i)
                                 : map.at_key("dispute.spend1");
      add(where, d);
    }
  if (!findings.empty()) throw ValidationError(std::move(findings));
}

}  // namespace io_detail

// Parses one scenario document. Syntax problems raise ParseError with the
// line; invariant violations are aggregated into one ValidationError whose
// diagnostics carry file:line anchors.
inline ModelDocument parse_model(std::istream& input,
                                 const std::string& name = "<input>") {
  using io_detail::MatrixRows;
  using io_detail::SourceMap;

  ModelDocument doc;
  SourceMap map;
  map.name = name;

  enum class Section {
    none, player1, player2, loss, exposure, sharing, dispute, dispute_share
  };
  Section section = Section::none;
  std::vector<std::string> seen;
  MatrixRows loss_rows, sharing_rows, share_rows;
  ModelDocument::DisputeSection dispute;
  bool dispute_seen = false;
  bool share_seen = false;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(input, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::string text = io_detail::trim(raw);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']')
        throw ParseError(line, "unterminated section header");
      std::string title = text.substr(1, text.size() - 2);
      if (std::find(seen.begin(), seen.end(), title) != seen.end())
        throw ParseError(line, "duplicate section [" + title + "]");
      seen.push_back(title);
      if (title == "player1") section = Section::player1;
      else if (title == "player2") section = Section::player2;
      else if (title == "loss") section = Section::loss;
      else if (title == "exposure") section = Section::exposure;
      else if (title == "sharing") section = Section::sharing;
      else if (title == "dispute") section = Section::dispute;
      else if (title == "dispute-share") section = Section::dispute_share;
      else throw ParseError(line, "unknown section [" + title + "]");
      if (section == Section::dispute) dispute_seen = true;
      if (section == Section::dispute_share) share_seen = true;
      continue;
    }

    if (section == Section::loss || section == Section::sharing ||
        section == Section::dispute_share) {
      MatrixRows& rows = section == Section::loss ? loss_rows
                         : section == Section::sharing ? sharing_rows
                                                       : share_rows;
      std::vector<std::optional<Rational>> row;
      for (const auto& token : io_detail::split_tokens(text)) {
        if (token == "-") {
          row.push_back(std::nullopt);
          continue;
        }
        auto value = parse_scalar_token(token);
        if (!value)
          throw ParseError(line, "\"" + token + "\" is not a number");
        row.push_back(*value);
      }
      rows.rows.push_back(std::move(row));
      rows.lines.push_back(line);
      continue;
    }

    auto equals = text.find('=');
    if (equals == std::string::npos || section == Section::none)
      throw ParseError(line, section == Section::none
                                 ? "content before any section header"
                                 : "expected key = value");
    std::string key = io_detail::trim(text.substr(0, equals));
    std::string value = io_detail::trim(text.substr(equals + 1));

    auto expect = [&](const char* section_name, bool ok) {
      if (!ok)
        throw ParseError(line, "unknown key \"" + key + "\" in [" +
                                   section_name + "]");
    };
    switch (section) {
      case Section::player1:
      case Section::player2: {
        const char* who = section == Section::player1 ? "player1" : "player2";
        auto& labels = section == Section::player1 ? doc.labels1 : doc.labels2;
        auto& costs = section == Section::player1 ? doc.costs1 : doc.costs2;
        expect(who, key == "labels" || key == "costs");
        if (key == "labels") labels = io_detail::split_tokens(value);
        else costs = io_detail::parse_number_list(value, line, key);
        map.keys[std::string(who) + "." + key] = line;
        break;
      }
      case Section::exposure: {
        expect("exposure", key == "value");
        auto parsed = parse_scalar_token(value);
        if (!parsed)
          throw ParseError(line, "\"" + value + "\" is not a number");
        doc.exposure = *parsed;
        map.keys["exposure.value"] = line;
        break;
      }
      case Section::dispute: {
        expect("dispute", key == "spend1" || key == "spend2" ||
                              key == "stake" || key == "institution" ||
                              key == "d1");
        if (key == "spend1")
          dispute.spend1 = io_detail::parse_number_list(value, line, key);
        else if (key == "spend2")
          dispute.spend2 = io_detail::parse_number_list(value, line, key);
        else if (key == "institution") {
          auto parsed = parse_institution(value);
          if (!parsed)
            throw ParseError(line, "unknown institution \"" + value + "\"");
          dispute.institution = *parsed;
        } else {
          auto parsed = parse_scalar_token(value);
          if (!parsed)
            throw ParseError(line, "\"" + value + "\" is not a number");
          if (key == "stake") dispute.stake = *parsed;
          else dispute.d1 = *parsed;
        }
        map.keys["dispute." + key] = line;
        break;
      }
      default:
        throw ParseError(line, "expected a matrix row here");
    }
  }

  doc.loss = io_detail::to_grid(loss_rows, "loss");
  map.loss_lines = loss_rows.lines;
  if (!sharing_rows.rows.empty()) {
    auto grid = io_detail::to_grid(sharing_rows, "sharing");
    Grid<Rational> dense(grid.rows(), grid.cols(), Rational(0));
    for (std::size_t i = 0; i < grid.rows(); ++i)
      for (std::size_t j = 0; j < grid.cols(); ++j) {
        if (!grid.at(i, j))
          throw ParseError(sharing_rows.lines[i],
                           "sharing entries cannot be \"-\"");
        dense.at(i, j) = *grid.at(i, j);
      }
    doc.sharing = std::move(dense);
    map.sharing_lines = sharing_rows.lines;
  }
  if (dispute_seen || share_seen) {
    std::vector<Diagnostic> findings;
    if (!dispute_seen)
      findings.push_back({name + ": [dispute-share] needs a [dispute] section",
                          std::nullopt});
    if (!share_seen)
      findings.push_back({name + ": [dispute] needs a [dispute-share] matrix",
                          std::nullopt});
    if (!findings.empty()) throw ValidationError(std::move(findings));
    dispute.share1 = io_detail::to_grid(share_rows, "dispute-share");
    map.share1_lines = share_rows.lines;
    doc.dispute = std::move(dispute);
  }

  io_detail::validate_document(doc, map);
  return doc;
}

inline ModelDocument parse_model_file(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw Error("cannot open " + path);
  return parse_model(input, path);
}

// Canonical text form; parse_model reads it back to an equal document.
inline std::string serialize(const ModelDocument& doc) {
  std::ostringstream out;
  auto write_list = [&](const char* key, const std::vector<Rational>& values) {
    out << key << " =";
    for (const auto& v : values) out << " " << format_scalar(v);
    out << "\n";
  };
  auto write_labels = [&](const std::vector<std::string>& labels) {
    if (labels.empty()) return;
    out << "labels =";
    for (const auto& l : labels) out << " " << l;
    out << "\n";
  };

  out << "[player1]\n";
  write_labels(doc.labels1);
  write_list("costs", doc.costs1);
  out << "\n[player2]\n";
  write_labels(doc.labels2);
  write_list("costs", doc.costs2);
  out << "\n[loss]\n";
  for (std::size_t i = 0; i < doc.loss.rows(); ++i) {
    for (std::size_t j = 0; j < doc.loss.cols(); ++j) {
      const auto& entry = doc.loss.at(i, j);
      out << (j ? " " : "") << (entry ? format_scalar(*entry) : "-");
    }
    out << "\n";
  }
  if (doc.exposure)
    out << "\n[exposure]\nvalue = " << format_scalar(*doc.exposure) << "\n";
  if (doc.sharing) {
    out << "\n[sharing]\n";
    for (std::size_t i = 0; i < doc.sharing->rows(); ++i) {
      for (std::size_t j = 0; j < doc.sharing->cols(); ++j)
        out << (j ? " " : "") << format_scalar(doc.sharing->at(i, j));
      out << "\n";
    }
  }
  if (doc.dispute) {
    out << "\n[dispute]\n";
    write_list("spend1", doc.dispute->spend1);
    write_list("spend2", doc.dispute->spend2);
    out << "stake = " << format_scalar(doc.dispute->stake) << "\n";
    out << "institution = " << to_string(doc.dispute->institution) << "\n";
    if (doc.dispute->d1)
      out << "d1 = " << format_scalar(*doc.dispute->d1) << "\n";
    out << "\n[dispute-share]\n";
    for (std::size_t i = 0; i < doc.dispute->share1.rows(); ++i) {
      for (std::size_t j = 0; j < doc.dispute->share1.cols(); ++j) {
        const auto& entry = doc.dispute->share1.at(i, j);
        out << (j ? " " : "") << (entry ? format_scalar(*entry) : "-");
      }
      out << "\n";
    }
  }
  return out.str();
}

// Formatted warnings from the soft shape checks; empty for clean documents.
inline std::vector<std::string> document_advisories(const ModelDocument& doc) {
  std::vector<std::string> out;
  if (!doc.dispute) return out;
  Scenario<Rational> scenario = instantiate<Rational>(doc);
  for (const auto& d : shape_advisories(*scenario.dispute))
    out.push_back("advisory: " + d.message);
  return out;
}

}  // namespace txcost

#endif  // TXCOST_IO_MODEL_FILE_HPP_
