// src/edit_distance.cpp
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

#include "mswer/edit_distance.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mswer {

std::uint32_t TokenInterner::id(std::string_view token) {
  auto it = map_.find(token);
  if (it != map_.end()) return it->second;
  const auto next = static_cast<std::uint32_t>(map_.size());
  map_.emplace(std::string(token), next);
  return next;
}

std::vector<std::uint32_t> TokenInterner::ids(const std::vector<TimedWord>& words) {
  std::vector<std::uint32_t> out;
  out.reserve(words.size());
  for (const TimedWord& w : words) out.push_back(id(w.token));
  return out;
}

std::vector<TimedToken> to_timed_tokens(const std::vector<TimedWord>& words,
                                        TokenInterner& interner) {
  std::vector<TimedToken> out;
  out.reserve(words.size());
  for (const TimedWord& w : words) {
    if (!w.has_times())
      throw ScoringError(ScoringError::Kind::kMissingTiming,
                         "word \"" + w.token + "\" has no begin/end time");
    out.push_back(TimedToken{interner.id(w.token), *w.begin, *w.end});
  }
  return out;
}

namespace {

struct AlwaysAllow {
  bool operator()(std::size_t, std::size_t) const { return true; }
};

struct TimeAllow {
  std::span<const TimedToken> ref;
  std::span<const TimedToken> hyp;
  double collar;

  bool operator()(std::size_t i, std::size_t j) const {
    return hyp[j].begin < ref[i].end + collar && ref[i].begin < hyp[j].end + collar;
  }
};

// Tight two-row kernel for the unbanded distance (the cpWER hot path).
template <class Cell>
Cell plain_distance_kernel(std::span<const std::uint32_t> ref,
                           std::span<const std::uint32_t> hyp, const CostModel& costs) {
  const std::size_t m = hyp.size();
  const Cell ccor = static_cast<Cell>(costs.correct);
  const Cell csub = static_cast<Cell>(costs.substitution);
  const Cell cins = static_cast<Cell>(costs.insertion);
  const Cell cdel = static_cast<Cell>(costs.deletion);

  std::vector<Cell> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = static_cast<Cell>(j) * cins;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const std::uint32_t r = ref[i];
    Cell diag = row[0];
    row[0] = static_cast<Cell>(i + 1) * cdel;
    for (std::size_t j = 0; j < m; ++j) {
      const Cell up = row[j + 1];
      const Cell via_del = up + cdel;
      const Cell via_ins = row[j] + cins;
      const Cell via_diag = diag + (r == hyp[j] ? ccor : csub);
      Cell best = via_diag < via_del ? via_diag : via_del;
      if (via_ins < best) best = via_ins;
      diag = up;
      row[j + 1] = best;
    }
  }
  return row[m];
}

// Banded engine. `band` holds one half-open hypothesis-word range per
// reference word; ranges must be monotone nondecreasing in both bounds.
// Row i of the DP evaluates columns [band[i-1].lo, band[i-1].hi]; everything
// right of a row's range is a pure run of insertions, which the reads below
// reconstruct on the fly.
enum Move : std::uint8_t { kMoveDiag = 0, kMoveUp = 1, kMoveLeft = 2 };

class MoveStore {
 public:
  MoveStore(const std::vector<BandRange>& band) {
    offsets_.reserve(band.size() + 1);
    offsets_.push_back(0);
    for (const BandRange& r : band) offsets_.push_back(offsets_.back() + (r.hi - r.lo + 1));
    bits_.assign((offsets_.back() + 3) / 4, 0);
  }

  void set(std::size_t row1, std::size_t cell_index, Move m) {
    const std::size_t idx = offsets_[row1 - 1] + cell_index;
    bits_[idx >> 2] |= static_cast<std::uint8_t>(m) << ((idx & 3) * 2);
  }

  Move get(std::size_t row1, std::size_t cell_index) const {
    const std::size_t idx = offsets_[row1 - 1] + cell_index;
    return static_cast<Move>((bits_[idx >> 2] >> ((idx & 3) * 2)) & 3);
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint8_t> bits_;
};

template <class Cell, class AllowFn>
std::int64_t banded_engine(std::span<const std::uint32_t> ref,
                           std::span<const std::uint32_t> hyp, const CostModel& costs,
                           const std::vector<BandRange>& band, const AllowFn& allowed,
                           std::vector<AlignmentOp>* ops_out) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const Cell ccor = static_cast<Cell>(costs.correct);
  const Cell csub = static_cast<Cell>(costs.substitution);
  const Cell cins = static_cast<Cell>(costs.insertion);
  const Cell cdel = static_cast<Cell>(costs.deletion);

  if (n == 0 || m == 0) {
    if (ops_out != nullptr) {
      for (std::size_t i = 1; i <= n; ++i)
        ops_out->push_back({AlignmentOp::Kind::kDelete, static_cast<std::int32_t>(i), 0});
      for (std::size_t j = 1; j <= m; ++j)
        ops_out->push_back({AlignmentOp::Kind::kInsert, 0, static_cast<std::int32_t>(j)});
    }
    return static_cast<std::int64_t>(n) * costs.deletion +
           static_cast<std::int64_t>(m) * costs.insertion;
  }
  assert(band.size() == n);

  MoveStore* moves = nullptr;
  MoveStore storage(ops_out != nullptr ? band : std::vector<BandRange>{});
  if (ops_out != nullptr) moves = &storage;

  // Previous row materialized over [plo, phi]; reads right of phi extend by
  // pure insertions.
  std::size_t plo = band[0].lo, phi = band[0].hi;
  std::vector<Cell> prev(phi - plo + 1), cur;
  for (std::size_t j = plo; j <= phi; ++j)
    prev[j - plo] = static_cast<Cell>(j) * cins;

  const auto prev_at = [&](std::size_t j) -> Cell {
    if (j <= phi) return prev[j - plo];
    return prev[phi - plo] + static_cast<Cell>(j - phi) * cins;
  };

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = band[i - 1].lo;
    const std::size_t hi = band[i - 1].hi;  // inclusive DP column
    assert(lo >= plo && hi >= phi && lo <= hi);
    cur.resize(hi - lo + 1);
    const std::uint32_t r = ref[i - 1];

    cur[0] = prev_at(lo) + cdel;
    if (moves != nullptr) moves->set(i, 0, kMoveUp);
    for (std::size_t j = lo + 1; j <= hi; ++j) {
      Cell best = prev_at(j) + cdel;
      Move mv = kMoveUp;
      // Matches exist only inside the allowed range; prefer them on ties so
      // reported alignments favor correct > substitute > delete > insert.
      if (j - 1 < band[i - 1].hi && allowed(i - 1, j - 1)) {
        const Cell via_diag = prev_at(j - 1) + (r == hyp[j - 1] ? ccor : csub);
        if (via_diag <= best) {
          best = via_diag;
          mv = kMoveDiag;
        }
      }
      const Cell via_ins = cur[j - lo - 1] + cins;
      if (via_ins < best) {
        best = via_ins;
        mv = kMoveLeft;
      }
      cur[j - lo] = best;
      if (moves != nullptr) moves->set(i, j - lo, mv);
    }

    prev.swap(cur);
    plo = lo;
    phi = hi;
  }

  std::int64_t distance;
  if (m > phi)
    distance = static_cast<std::int64_t>(prev[phi - plo]) +
               static_cast<std::int64_t>(m - phi) * costs.insertion;
  else
    distance = static_cast<std::int64_t>(prev[m - plo]);

  if (ops_out != nullptr) {
    std::vector<AlignmentOp>& ops = *ops_out;
    ops.reserve(ops.size() + n + m);
    const std::size_t first = ops.size();
    std::size_t i = n, j = m;
    while (i >= 1) {
      const std::size_t hi = band[i - 1].hi;
      if (j > hi) {
        ops.push_back({AlignmentOp::Kind::kInsert, 0, static_cast<std::int32_t>(j)});
        --j;
        continue;
      }
      const Move mv = moves->get(i, j - band[i - 1].lo);
      switch (mv) {
        case kMoveDiag:
          ops.push_back({ref[i - 1] == hyp[j - 1] ? AlignmentOp::Kind::kCorrect
                                                  : AlignmentOp::Kind::kSubstitute,
                         static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
          --i;
          --j;
          break;
        case kMoveUp:
          ops.push_back({AlignmentOp::Kind::kDelete, static_cast<std::int32_t>(i), 0});
          --i;
          break;
        case kMoveLeft:
          ops.push_back({AlignmentOp::Kind::kInsert, 0, static_cast<std::int32_t>(j)});
          --j;
          break;
      }
    }
    while (j >= 1) {
      ops.push_back({AlignmentOp::Kind::kInsert, 0, static_cast<std::int32_t>(j)});
      --j;
    }
    std::reverse(ops.begin() + static_cast<std::ptrdiff_t>(first), ops.end());
  }
  return distance;
}

bool fits_int32(std::size_t n, std::size_t m, const CostModel& costs) {
  const long double bound =
      static_cast<long double>(n) * static_cast<long double>(costs.deletion) +
      static_cast<long double>(m) * static_cast<long double>(costs.insertion) +
      static_cast<long double>(std::max(costs.substitution, costs.correct));
  return bound < static_cast<long double>(1u << 30);
}

std::vector<BandRange> full_band(std::size_t n, std::size_t m) {
  return std::vector<BandRange>(n, BandRange{0, m});
}

template <class AllowFn>
std::int64_t dispatch_distance(std::span<const std::uint32_t> ref,
                               std::span<const std::uint32_t> hyp, const CostModel& costs,
                               const std::vector<BandRange>& band, const AllowFn& allowed) {
  if (fits_int32(ref.size(), hyp.size(), costs))
    return banded_engine<std::int32_t>(ref, hyp, costs, band, allowed, nullptr);
  return banded_engine<std::int64_t>(ref, hyp, costs, band, allowed, nullptr);
}

template <class AllowFn>
EditDistanceResult dispatch_align(std::span<const std::uint32_t> ref,
                                  std::span<const std::uint32_t> hyp,
                                  const CostModel& costs, const std::vector<BandRange>& band,
                                  const AllowFn& allowed) {
  EditDistanceResult result;
  if (fits_int32(ref.size(), hyp.size(), costs))
    result.distance = banded_engine<std::int32_t>(ref, hyp, costs, band, allowed, &result.ops);
  else
    result.distance = banded_engine<std::int64_t>(ref, hyp, costs, band, allowed, &result.ops);
  return result;
}

}  // namespace

std::int64_t levenshtein_distance(std::span<const std::uint32_t> ref,
                                  std::span<const std::uint32_t> hyp,
                                  const CostModel& costs) {
  costs.check();
  if (fits_int32(ref.size(), hyp.size(), costs))
    return plain_distance_kernel<std::int32_t>(ref, hyp, costs);
  return plain_distance_kernel<std::int64_t>(ref, hyp, costs);
}

EditDistanceResult levenshtein(std::span<const std::uint32_t> ref,
                               std::span<const std::uint32_t> hyp, const CostModel& costs) {
  costs.check();
  return dispatch_align(ref, hyp, costs, full_band(ref.size(), hyp.size()), AlwaysAllow{});
}

EditDistanceResult levenshtein(const std::vector<std::string>& ref,
                               const std::vector<std::string>& hyp, const CostModel& costs) {
  TokenInterner interner;
  std::vector<std::uint32_t> r, h;
  r.reserve(ref.size());
  h.reserve(hyp.size());
  for (const std::string& t : ref) r.push_back(interner.id(t));
  for (const std::string& t : hyp) h.push_back(interner.id(t));
  return levenshtein(std::span<const std::uint32_t>(r), std::span<const std::uint32_t>(h),
                     costs);
}

std::vector<BandRange> band_bounds(std::span<const TimedToken> ref,
                                   std::span<const TimedToken> hyp, double collar) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<BandRange> band(n);
  if (n == 0) return band;
  if (!std::isfinite(collar)) {
    for (BandRange& r : band) r = {0, m};
    return band;
  }
  if (m == 0) return band;  // all {0, 0}

  // end_max[j]   = max end time over hyp[0..j]        (nondecreasing)
  // begin_min[j] = min begin time over hyp[j..m-1]    (nondecreasing)
  // A word pair (i, j) can only be allowed when end_max[j] > begin(i) - collar
  // and begin_min[j] < end(i) + collar, so the per-row hull below contains
  // every allowed cell even when end times are not monotone.
  std::vector<double> end_max(m), begin_min(m);
  end_max[0] = hyp[0].end;
  for (std::size_t j = 1; j < m; ++j) end_max[j] = std::max(end_max[j - 1], hyp[j].end);
  begin_min[m - 1] = hyp[m - 1].begin;
  for (std::size_t j = m - 1; j-- > 0;)
    begin_min[j] = std::min(begin_min[j + 1], hyp[j].begin);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> raw_lo(n, kNone), raw_hi(n, kNone);  // half-open
  for (std::size_t i = 0; i < n; ++i) {
    const double need_end = ref[i].begin - collar;  // end_max[j] > need_end
    const double need_begin = ref[i].end + collar;  // begin_min[j] < need_begin
    const auto lo_it = std::upper_bound(end_max.begin(), end_max.end(), need_end);
    const auto hi_it =
        std::lower_bound(begin_min.begin(), begin_min.end(), need_begin);
    const std::size_t lo = static_cast<std::size_t>(lo_it - end_max.begin());
    const std::size_t hi = static_cast<std::size_t>(hi_it - begin_min.begin());
    if (lo < hi) {
      raw_lo[i] = lo;
      raw_hi[i] = hi;
    }
  }

  // Monotone closure: suffix-min of the left edges, prefix-max of the right
  // edges. Rows without allowed cells collapse to an empty range positioned
  // to keep both edges nondecreasing.
  std::vector<std::size_t> lo_cl(n, kNone), hi_cl(n, kNone);
  std::size_t run = kNone;
  for (std::size_t i = n; i-- > 0;) {
    if (raw_lo[i] != kNone) run = run == kNone ? raw_lo[i] : std::min(run, raw_lo[i]);
    lo_cl[i] = run;
  }
  run = kNone;
  for (std::size_t i = 0; i < n; ++i) {
    if (raw_hi[i] != kNone) run = run == kNone ? raw_hi[i] : std::max(run, raw_hi[i]);
    hi_cl[i] = run;
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = lo_cl[i], hi = hi_cl[i];
    if (lo == kNone && hi == kNone) {
      band[i] = {0, 0};
    } else if (lo == kNone) {
      band[i] = {hi, hi};
    } else if (hi == kNone) {
      band[i] = {lo, lo};
    } else {
      band[i] = {std::min(lo, hi), std::max(lo, hi)};
    }
  }
  return band;
}

namespace {

std::vector<std::uint32_t> token_ids(std::span<const TimedToken> tokens) {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const TimedToken& t : tokens) ids.push_back(t.id);
  return ids;
}

}  // namespace

std::int64_t tc_levenshtein_distance(std::span<const TimedToken> ref,
                                     std::span<const TimedToken> hyp, double collar,
                                     const CostModel& costs) {
  costs.check();
  if (collar < 0)
    throw ScoringError(ScoringError::Kind::kInvalidInput, "collar must be nonnegative");
  const std::vector<BandRange> band = band_bounds(ref, hyp, collar);
  const std::vector<std::uint32_t> r = token_ids(ref), h = token_ids(hyp);
  return dispatch_distance(std::span<const std::uint32_t>(r),
                           std::span<const std::uint32_t>(h), costs, band,
                           TimeAllow{ref, hyp, collar});
}

EditDistanceResult tc_levenshtein(std::span<const TimedToken> ref,
                                  std::span<const TimedToken> hyp, double collar,
                                  const CostModel& costs) {
  costs.check();
  if (collar < 0)
    throw ScoringError(ScoringError::Kind::kInvalidInput, "collar must be nonnegative");
  const std::vector<BandRange> band = band_bounds(ref, hyp, collar);
  const std::vector<std::uint32_t> r = token_ids(ref), h = token_ids(hyp);
  return dispatch_align(std::span<const std::uint32_t>(r),
                        std::span<const std::uint32_t>(h), costs, band,
                        TimeAllow{ref, hyp, collar});
}

EditDistanceResult tc_levenshtein(const std::vector<TimedWord>& ref,
                                  const std::vector<TimedWord>& hyp, double collar,
                                  TokenInterner& interner, const CostModel& costs) {
  const std::vector<TimedToken> r = to_timed_tokens(ref, interner);
  const std::vector<TimedToken> h = to_timed_tokens(hyp, interner);
  return tc_levenshtein(std::span<const TimedToken>(r), std::span<const TimedToken>(h),
                        collar, costs);
}

}  // namespace mswer
