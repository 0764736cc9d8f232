// src/assignment.cpp
//
// Copyright 2026  mswer authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mswer/assignment.hpp"

#include <algorithm>
#include <limits>

namespace mswer {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw ScoringError(ScoringError::Kind::kInvalidInput,
                       "assignment cost accumulation overflowed");
  return out;
}

// Shortest-augmenting-path Hungarian (Jonker-Volgenant style). Returns the
// column-to-row matching and the dual potentials, which satisfy
// u[row] + v[col] <= cost(row, col) with equality on every optimal edge.
struct HungarianState {
  std::vector<int> row_of_col;  // 0-based; size n
  std::vector<std::int64_t> u, v;  // 1-based potentials
};

HungarianState hungarian(const CostMatrix& m) {
  const int n = static_cast<int>(m.size);
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = 0;
      std::int64_t delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = m.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  HungarianState state;
  state.row_of_col.assign(n, -1);
  for (int j = 1; j <= n; ++j) state.row_of_col[j - 1] = p[j] - 1;
  state.u = std::move(u);
  state.v = std::move(v);
  return state;
}

// Every optimal assignment uses only edges that are tight under the optimal
// duals, so the lexicographically smallest optimum is the lexicographically
// smallest perfect matching of the tight-edge graph.
struct TightGraph {
  int n = 0;
  std::vector<std::vector<int>> rows_of_col;  // ascending row lists
};

class LexMatcher {
 public:
  LexMatcher(const TightGraph& graph, std::vector<int> row_of_col)
      : graph_(graph), row_of_col_(std::move(row_of_col)), col_of_row_(graph.n, -1),
        pinned_col_(graph.n, false), pinned_row_(graph.n, false), visited_(graph.n, false) {
    for (int c = 0; c < graph_.n; ++c) col_of_row_[row_of_col_[c]] = c;
  }

  std::vector<std::size_t> run() {
    for (int c = 0; c < graph_.n; ++c) {
      for (int r : graph_.rows_of_col[c]) {
        if (pinned_row_[r]) continue;
        if (try_pin(c, r)) break;
      }
      pinned_col_[c] = true;
      pinned_row_[row_of_col_[c]] = true;
    }
    std::vector<std::size_t> out(graph_.n);
    for (int c = 0; c < graph_.n; ++c) out[c] = static_cast<std::size_t>(row_of_col_[c]);
    return out;
  }

 private:
  bool try_pin(int col, int row) {
    if (row_of_col_[col] == row) return true;
    // Displace: give `row` to `col`, then find a replacement row for the
    // column that lost it. One augmenting path per attempt.
    const int displaced_col = col_of_row_[row];
    const int old_row = row_of_col_[col];
    row_of_col_[col] = row;
    col_of_row_[row] = col;
    col_of_row_[old_row] = -1;
    std::fill(visited_.begin(), visited_.end(), false);
    visited_[row] = true;
    if (displaced_col == -1 || augment(displaced_col)) return true;
    // Roll back.
    row_of_col_[col] = old_row;
    col_of_row_[old_row] = col;
    col_of_row_[row] = displaced_col;
    row_of_col_[displaced_col] = row;
    return false;
  }

  bool augment(int col) {
    for (int r : graph_.rows_of_col[col]) {
      if (visited_[r] || pinned_row_[r]) continue;
      visited_[r] = true;
      const int next = col_of_row_[r];
      if (next == -1 || augment(next)) {
        row_of_col_[col] = r;
        col_of_row_[r] = col;
        return true;
      }
    }
    return false;
  }

  const TightGraph& graph_;
  std::vector<int> row_of_col_;
  std::vector<int> col_of_row_;
  std::vector<char> pinned_col_, pinned_row_;
  std::vector<char> visited_;
};

}  // namespace

AssignmentResult solve_assignment(const CostMatrix& matrix) {
  const std::size_t n = matrix.size;
  if (matrix.entries.size() != n * n)
    throw ScoringError(ScoringError::Kind::kInvalidInput,
                       "cost matrix storage does not match its size");
  for (std::int64_t e : matrix.entries)
    if (e < 0 || e >= kInf)
      throw ScoringError(ScoringError::Kind::kInvalidInput,
                         "cost matrix entries must be nonnegative and finite");
  AssignmentResult result;
  if (n == 0) return result;

  HungarianState state = hungarian(matrix);

  TightGraph graph;
  graph.n = static_cast<int>(n);
  graph.rows_of_col.resize(n);
  for (int c = 0; c < graph.n; ++c)
    for (int r = 0; r < graph.n; ++r)
      if (matrix.at(r, c) - state.u[r + 1] - state.v[c + 1] == 0)
        graph.rows_of_col[c].push_back(r);

  result.row_of_col = LexMatcher(graph, state.row_of_col).run();
  result.total_cost = 0;
  for (std::size_t c = 0; c < n; ++c)
    result.total_cost = checked_add(result.total_cost, matrix.at(result.row_of_col[c], c));
  return result;
}

}  // namespace mswer
