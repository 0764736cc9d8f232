// src/types.cpp
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

#include "mswer/types.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace mswer {

namespace {

bool has_whitespace(const std::string& token) {
  for (unsigned char c : token)
    if (std::isspace(c)) return true;
  return false;
}

std::string segment_name(const Segment& seg) {
  std::ostringstream os;
  os << "session \"" << seg.session_id << "\", speaker \"" << seg.speaker << "\"";
  if (seg.begin) os << ", begin " << *seg.begin;
  return os.str();
}

void check_segment(const Segment& seg, const ValidationPolicy& policy) {
  if (policy.require_times && !seg.has_times())
    throw ScoringError(ScoringError::Kind::kMissingTiming,
                       "segment without begin/end time (" + segment_name(seg) + ")");
  if (seg.has_times() && !time_leq(*seg.begin, *seg.end))
    throw ScoringError(ScoringError::Kind::kInvalidInput,
                       "segment begin exceeds end (" + segment_name(seg) + ")");
  for (const TimedWord& word : seg.words) {
    if (word.token.empty())
      throw ScoringError(ScoringError::Kind::kEmptyToken,
                         "empty token (" + segment_name(seg) + ")");
    if (has_whitespace(word.token))
      throw ScoringError(ScoringError::Kind::kEmptyToken,
                         "token \"" + word.token + "\" contains whitespace (" +
                             segment_name(seg) + ")");
    if (word.has_times()) {
      if (!time_leq(*word.begin, *word.end))
        throw ScoringError(ScoringError::Kind::kInvalidInput,
                           "word \"" + word.token + "\" begin exceeds end (" +
                               segment_name(seg) + ")");
      if (seg.has_times() &&
          (!time_leq(*seg.begin, *word.begin) || !time_leq(*word.end, *seg.end)))
        throw ScoringError(ScoringError::Kind::kInvalidInput,
                           "word \"" + word.token + "\" lies outside its segment (" +
                               segment_name(seg) + ")");
    }
  }
}

}  // namespace

Transcript validate(Transcript transcript, const ValidationPolicy& policy) {
  for (const Segment& seg : transcript.segments) check_segment(seg, policy);

  // Sort within each (session, group) by (begin, end, input order). Missing
  // times keep their relative input order.
  constexpr double kNoTime = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(transcript.segments.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const GroupKey key = transcript.group_key;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Segment& sa = transcript.segments[a];
    const Segment& sb = transcript.segments[b];
    const std::string& la = group_label(sa, key);
    const std::string& lb = group_label(sb, key);
    const double ba = sa.begin.value_or(kNoTime), bb = sb.begin.value_or(kNoTime);
    const double ea = sa.end.value_or(kNoTime), eb = sb.end.value_or(kNoTime);
    return std::tie(sa.session_id, la, ba, ea, a) <
           std::tie(sb.session_id, lb, bb, eb, b);
  });
  std::vector<Segment> sorted;
  sorted.reserve(transcript.segments.size());
  for (std::size_t idx : order) sorted.push_back(std::move(transcript.segments[idx]));
  transcript.segments = std::move(sorted);

  if (policy.reject_overlaps) {
    const Segment* prev = nullptr;
    for (const Segment& seg : transcript.segments) {
      if (prev != nullptr && prev->session_id == seg.session_id &&
          group_label(*prev, key) == group_label(seg, key) && prev->has_times() &&
          seg.has_times() && !time_leq(*prev->end, *seg.begin)) {
        std::ostringstream os;
        os << "segments overlap within one stream (" << segment_name(*prev)
           << " ends at " << *prev->end << ", next begins at " << *seg.begin << ")";
        throw ScoringError(ScoringError::Kind::kOverlapWithinStream, os.str());
      }
      prev = &seg;
    }
  }
  return transcript;
}

std::map<std::string, std::map<std::string, SegmentGroup>> group_segments(
    const Transcript& transcript) {
  std::map<std::string, std::map<std::string, SegmentGroup>> grouped;
  for (const Segment& seg : transcript.segments)
    grouped[seg.session_id][group_label(seg, transcript.group_key)].push_back(&seg);
  return grouped;
}

std::vector<TimedWord> words_of(const SegmentGroup& group) {
  std::vector<TimedWord> words;
  for (const Segment* seg : group)
    words.insert(words.end(), seg->words.begin(), seg->words.end());
  return words;
}

std::vector<TimedWord> words_of(const std::vector<Segment>& group) {
  SegmentGroup ptrs;
  ptrs.reserve(group.size());
  for (const Segment& seg : group) ptrs.push_back(&seg);
  return words_of(ptrs);
}

std::int64_t total_word_count(const Transcript& transcript) {
  std::int64_t count = 0;
  for (const Segment& seg : transcript.segments)
    count += static_cast<std::int64_t>(seg.words.size());
  return count;
}

const char* to_string(AlignmentOp::Kind kind) {
  switch (kind) {
    case AlignmentOp::Kind::kCorrect: return "correct";
    case AlignmentOp::Kind::kSubstitute: return "substitute";
    case AlignmentOp::Kind::kInsert: return "insert";
    case AlignmentOp::Kind::kDelete: return "delete";
  }
  return "unknown";
}

}  // namespace mswer
