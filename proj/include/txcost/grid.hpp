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

#ifndef TXCOST_GRID_HPP_
#define TXCOST_GRID_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace txcost {

// Row/column coordinate of one decision pair.
struct Cell {
  std::size_t i = 0;
  std::size_t j = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::string to_string(const Cell& c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

// Dense row-major rectangular array. Bounds are always checked; the grids in
// this library are tiny and the check costs nothing that matters.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Grid from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    Grid g;
    g.rows_ = rows.size();
    g.cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    g.data_.reserve(g.rows_ * g.cols_);
    for (const auto& row : rows) {
      if (row.size() != g.cols_) throw std::invalid_argument("ragged grid rows");
      g.data_.insert(g.data_.end(), row.begin(), row.end());
    }
    return g;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * cols_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * cols_ + j];
  }
  T& at(const Cell& c) { return at(c.i, c.j); }
  const T& at(const Cell& c) const { return at(c.i, c.j); }

  template <class U>
  bool same_shape(const Grid<U>& other) const {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw std::out_of_range("grid index " + to_string(Cell{i, j}) +
                              " outside " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace txcost

#endif  // TXCOST_GRID_HPP_
