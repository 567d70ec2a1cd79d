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

#ifndef TXCOST_LP_HPP_
#define TXCOST_LP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "txcost/arithmetic.hpp"
#include "txcost/errors.hpp"
#include "txcost/grid.hpp"

namespace txcost {

enum class LpStatus { optimal, infeasible, unbounded };

template <class R>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<R> x;
  R objective = R(0);
};

namespace detail {

// Pivot tolerance: tighter than the semantic tolerance so that near-zero
// tableau noise never selects a pivot. Exact mode pivots on any nonzero.
template <class R>
bool pivot_nonzero(const R& v) {
  if constexpr (arith<R>::exact) return !arith<R>::is_zero(v);
  else return arith<R>::abs(v) > 1e-11;
}

template <class R>
bool pivot_positive(const R& v) {
  if constexpr (arith<R>::exact) return v > R(0);
  else return arith<R>::to_double(v) > 1e-11;
}

// Dense simplex tableau with an explicit objective row, Bland's entering
// rule and lexicographic-by-index leaving ties. Terminates on every input
// in exact mode; the iteration cap only guards floating point cycling.
template <class R>
class Tableau {
 public:
  Tableau(const Grid<R>& a, const std::vector<R>& b, std::size_t vars)
      : m_(a.rows()), n_(vars), body_(a.rows(), vars + 1, R(0)),
        basis_(a.rows()) {
    for (std::size_t r = 0; r < m_; ++r) {
      bool flip = b[r] < R(0);
      for (std::size_t c = 0; c < a.cols(); ++c)
        body_.at(r, c) = flip ? R(-a.at(r, c)) : a.at(r, c);
      body_.at(r, n_) = flip ? R(-b[r]) : b[r];
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  R& at(std::size_t r, std::size_t c) { return body_.at(r, c); }
  R rhs(std::size_t r) const { return body_.at(r, n_); }
  std::size_t basic(std::size_t r) const { return basis_[r]; }
  void set_basic(std::size_t r, std::size_t var) { basis_[r] = var; }

  void pivot(std::size_t row, std::size_t col) {
    R inv = R(1) / body_.at(row, col);
    for (std::size_t c = 0; c <= n_; ++c) body_.at(row, c) = body_.at(row, c) * inv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row) continue;
      R factor = body_.at(r, col);
      if (factor == R(0)) continue;
      for (std::size_t c = 0; c <= n_; ++c)
        body_.at(r, c) = body_.at(r, c) - factor * body_.at(row, c);
    }
    basis_[row] = col;
  }

  // Maximizes cost over the current feasible tableau. `allowed(c)` filters
  // entering candidates (used to lock out artificials in phase two).
  template <class Allowed>
  LpStatus optimize(const std::vector<R>& cost, const Allowed& allowed) {
    for (int iter = 0; iter < 10000; ++iter) {
      std::vector<R> reduced = cost;
      for (std::size_t r = 0; r < m_; ++r) {
        const R& cb = cost[basis_[r]];
        if (cb == R(0)) continue;
        for (std::size_t c = 0; c < n_; ++c)
          reduced[c] = reduced[c] - cb * body_.at(r, c);
      }
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!allowed(c)) continue;
        if (pivot_positive(reduced[c])) { enter = c; break; }
      }
      if (!enter) return LpStatus::optimal;
      std::optional<std::size_t> leave;
      R best_ratio = R(0);
      for (std::size_t r = 0; r < m_; ++r) {
        const R& coeff = body_.at(r, *enter);
        if (!pivot_positive(coeff)) continue;
        R ratio = rhs(r) / coeff;
        if (!leave || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave) return LpStatus::unbounded;
      pivot(*leave, *enter);
    }
    return LpStatus::unbounded;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  Grid<R> body_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// Solves: maximize c.x subject to A x = b, x >= 0, by the two-phase
// simplex method.
template <class R>
LpResult<R> solve_lp_max(const Grid<R>& a, const std::vector<R>& b,
                         const std::vector<R>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  detail::Tableau<R> tab(a, b, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    tab.at(r, n + r) = R(1);
    tab.set_basic(r, n + r);
  }

  std::vector<R> phase1(n + m, R(0));
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = R(-1);
  tab.optimize(phase1, [](std::size_t) { return true; });

  R infeasibility = R(0);
  for (std::size_t r = 0; r < m; ++r)
    if (tab.basic(r) >= n) infeasibility += tab.rhs(r);
  if (detail::pivot_positive(infeasibility)) return {LpStatus::infeasible, {}, R(0)};

  // Drive any artificial that is still basic (at zero) out of the basis so
  // phase two can ignore artificial columns entirely.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) continue;
    for (std::size_t col = 0; col < n; ++col) {
      if (detail::pivot_nonzero(tab.at(r, col))) {
        tab.pivot(r, col);
        break;
      }
    }
  }

  std::vector<R> phase2(n + m, R(0));
  for (std::size_t col = 0; col < n; ++col) phase2[col] = c[col];
  LpStatus status =
      tab.optimize(phase2, [&](std::size_t col) { return col < n; });
  if (status == LpStatus::unbounded) return {LpStatus::unbounded, {}, R(0)};

  LpResult<R> result;
  result.status = LpStatus::optimal;
  result.x.assign(n, R(0));
  for (std::size_t r = 0; r < m; ++r)
    if (tab.basic(r) < n) result.x[tab.basic(r)] = tab.rhs(r);
  for (std::size_t col = 0; col < n; ++col)
    result.objective += c[col] * result.x[col];
  return result;
}

// Gaussian elimination with pivoting; returns nothing when the matrix is
// singular (to working precision in double mode, exactly in rational mode).
template <class R>
std::optional<std::vector<R>> solve_linear(Grid<R> a, std::vector<R> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw RequestError("square system required");
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double best = -1.0;
    for (std::size_t r = col; r < n; ++r) {
      double mag = std::fabs(arith<R>::to_double(a.at(r, col)));
      if (mag > best) { best = mag; pivot_row = r; }
    }
    if (!detail::pivot_nonzero(a.at(pivot_row, col))) return std::nullopt;
    if (pivot_row != col) {
      for (std::size_t c2 = 0; c2 < n; ++c2)
        std::swap(a.at(pivot_row, c2), a.at(col, c2));
      std::swap(b[pivot_row], b[col]);
    }
    R inv = R(1) / a.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      R factor = a.at(r, col) * inv;
      if (factor == R(0)) continue;
      for (std::size_t c2 = col; c2 < n; ++c2)
        a.at(r, c2) = a.at(r, c2) - factor * a.at(col, c2);
      b[r] = b[r] - factor * b[col];
    }
  }

  std::vector<R> x(n, R(0));
  for (std::size_t step = n; step-- > 0;) {
    R acc = b[step];
    for (std::size_t c2 = step + 1; c2 < n; ++c2)
      acc = acc - a.at(step, c2) * x[c2];
    x[step] = acc / a.at(step, step);
  }
  return x;
}

}  // namespace txcost

#endif  // TXCOST_LP_HPP_
