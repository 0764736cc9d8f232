// mswer/edit_distance.hpp
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
//
// Levenshtein engines: plain, time-constrained, and banded, with alignment
// backtrace. Distances are exact integers; no floating point accumulates in
// the dynamic program.

#ifndef MSWER_EDIT_DISTANCE_HPP_
#define MSWER_EDIT_DISTANCE_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mswer/types.hpp"

namespace mswer {

// Maps distinct tokens to dense ids so the DP inner loop compares integers.
class TokenInterner {
 public:
  std::uint32_t id(std::string_view token);
  std::vector<std::uint32_t> ids(const std::vector<TimedWord>& words);
  std::size_t size() const { return map_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> map_;
};

// Interned token with its time interval.
struct TimedToken {
  std::uint32_t id = 0;
  double begin = 0.0;
  double end = 0.0;
};

// Throws MissingTiming when a word lacks begin or end.
std::vector<TimedToken> to_timed_tokens(const std::vector<TimedWord>& words,
                                        TokenInterner& interner);

// Two words may match (as correct or substituted) iff their intervals overlap
// or the gap between them is smaller than the collar. Strict inequality:
// touching intervals do not match at collar 0.
struct MatchPredicate {
  double collar = std::numeric_limits<double>::infinity();

  bool allows(double ref_begin, double ref_end, double hyp_begin, double hyp_end) const {
    return hyp_begin < ref_end + collar && ref_begin < hyp_end + collar;
  }
  bool allows(const TimedToken& r, const TimedToken& h) const {
    return allows(r.begin, r.end, h.begin, h.end);
  }
  bool allows(const TimedWord& r, const TimedWord& h) const {
    if (!r.has_times() || !h.has_times())
      throw ScoringError(ScoringError::Kind::kMissingTiming,
                         "match predicate requires word times");
    return allows(*r.begin, *r.end, *h.begin, *h.end);
  }
};

struct EditDistanceResult {
  std::int64_t distance = 0;
  std::vector<AlignmentOp> ops;
};

// Half-open range [lo, hi) of hypothesis word positions for one reference row.
struct BandRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  friend bool operator==(const BandRange&, const BandRange&) = default;
};

std::int64_t levenshtein_distance(std::span<const std::uint32_t> ref,
                                  std::span<const std::uint32_t> hyp,
                                  const CostModel& costs = {});

EditDistanceResult levenshtein(std::span<const std::uint32_t> ref,
                               std::span<const std::uint32_t> hyp,
                               const CostModel& costs = {});

// Convenience over raw tokens.
EditDistanceResult levenshtein(const std::vector<std::string>& ref,
                               const std::vector<std::string>& hyp,
                               const CostModel& costs = {});

// Per-reference-row column ranges outside which no match is allowed. Ranges
// are contiguous, cover every allowed pair, and are monotone nondecreasing in
// the row index, so the DP can walk them as a single band.
std::vector<BandRange> band_bounds(std::span<const TimedToken> ref,
                                   std::span<const TimedToken> hyp, double collar);

// Time-constrained distance: equals the plain DP over a cost model where
// disallowed pairs cost insertion + deletion, evaluated inside the band only.
std::int64_t tc_levenshtein_distance(std::span<const TimedToken> ref,
                                     std::span<const TimedToken> hyp, double collar,
                                     const CostModel& costs = {});

EditDistanceResult tc_levenshtein(std::span<const TimedToken> ref,
                                  std::span<const TimedToken> hyp, double collar,
                                  const CostModel& costs = {});

// Convenience over timed words; throws MissingTiming when times are absent.
EditDistanceResult tc_levenshtein(const std::vector<TimedWord>& ref,
                                  const std::vector<TimedWord>& hyp, double collar,
                                  TokenInterner& interner, const CostModel& costs = {});

}  // namespace mswer

#endif  // MSWER_EDIT_DISTANCE_HPP_
