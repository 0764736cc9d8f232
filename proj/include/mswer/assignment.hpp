// mswer/assignment.hpp
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

#ifndef MSWER_ASSIGNMENT_HPP_
#define MSWER_ASSIGNMENT_HPP_

#include <cstdint>
#include <vector>

#include "mswer/types.hpp"

namespace mswer {

// Square matrix of pairwise distances, rows = reference groups, columns =
// hypothesis streams, padded with empty-stream distances beforehand.
struct CostMatrix {
  std::size_t size = 0;
  std::vector<std::int64_t> entries;  // row-major, size * size

  static CostMatrix zeros(std::size_t n) {
    return CostMatrix{n, std::vector<std::int64_t>(n * n, 0)};
  }

  std::int64_t& at(std::size_t row, std::size_t col) { return entries[row * size + col]; }
  std::int64_t at(std::size_t row, std::size_t col) const {
    return entries[row * size + col];
  }
};

// row_of_col[k] is the reference row assigned to hypothesis column k.
struct AssignmentResult {
  std::vector<std::size_t> row_of_col;
  std::int64_t total_cost = 0;
};

// Minimum-cost perfect assignment in O(size^3) via shortest augmenting paths.
// Among co-optimal assignments, returns the lexicographically smallest
// row_of_col. Accumulation is overflow-checked.
AssignmentResult solve_assignment(const CostMatrix& matrix);

}  // namespace mswer

#endif  // MSWER_ASSIGNMENT_HPP_
