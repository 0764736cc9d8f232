// mswer/types.hpp
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

#ifndef MSWER_TYPES_HPP_
#define MSWER_TYPES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mswer {

// Timestamps are decimal seconds as parsed from text. Comparisons that decide
// validity (not matching) use an absolute-plus-relative tolerance.
inline constexpr double kTimeTolerance = 1e-9;

inline double time_tolerance(double a, double b) {
  return kTimeTolerance * std::max({1.0, std::fabs(a), std::fabs(b)});
}
inline bool time_leq(double a, double b) { return a <= b + time_tolerance(a, b); }
inline bool time_eq(double a, double b) {
  return std::fabs(a - b) <= time_tolerance(a, b);
}

// Error raised when an input cannot be scored (as opposed to parsed).
class ScoringError : public std::runtime_error {
 public:
  enum class Kind {
    kOverlapWithinStream,
    kMissingTiming,
    kEmptyToken,
    kZeroLengthReference,
    kStateSpaceLimit,
    kInvalidInput,
  };

  ScoringError(Kind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
        kind_(kind) {}

  Kind kind() const { return kind_; }

  static const char* kind_name(Kind kind) {
    switch (kind) {
      case Kind::kOverlapWithinStream: return "OverlapWithinStream";
      case Kind::kMissingTiming: return "MissingTiming";
      case Kind::kEmptyToken: return "EmptyToken";
      case Kind::kZeroLengthReference: return "ZeroLengthReference";
      case Kind::kStateSpaceLimit: return "StateSpaceLimit";
      case Kind::kInvalidInput: return "InvalidInput";
    }
    return "ScoringError";
  }

 private:
  Kind kind_;
};

// Error raised by the file parsers. line is 1-based and doubles as the record
// index for record-per-line formats; 0 means the position is not line-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parse error for a record that is syntactically valid but misses a field or
// carries one with the wrong type.
class SchemaError : public ParseError {
 public:
  SchemaError(std::size_t record, const std::string& field, const std::string& message)
      : ParseError(record, "field \"" + field + "\": " + message), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// One token with optional begin/end time in seconds. The atomic alignment
// unit. Zero-length intervals (begin == end) mark timepoints.
struct TimedWord {
  std::string token;
  std::optional<double> begin;
  std::optional<double> end;

  bool has_times() const { return begin.has_value() && end.has_value(); }

  friend bool operator==(const TimedWord&, const TimedWord&) = default;
};

// A transcribed unit: the unit of file I/O and of ORC/MIMO assignment.
// `stream` falls back to `speaker` when a stream label is wanted but absent.
struct Segment {
  std::string session_id;
  std::string speaker;
  std::optional<std::string> stream;
  std::optional<double> begin;
  std::optional<double> end;
  std::vector<TimedWord> words;
  // Unknown record fields, kept as compact JSON text for round-tripping.
  std::map<std::string, std::string> extra;

  bool has_times() const { return begin.has_value() && end.has_value(); }

  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class GroupKey { kSpeaker, kStream };

inline const std::string& group_label(const Segment& seg, GroupKey key) {
  if (key == GroupKey::kStream && seg.stream.has_value()) return *seg.stream;
  return seg.speaker;
}

// Validated collection of segments; the input to every metric.
struct Transcript {
  std::vector<Segment> segments;
  GroupKey group_key = GroupKey::kSpeaker;
};

// The four word edit costs. Defaults give the plain error count.
struct CostModel {
  std::int64_t correct = 0;
  std::int64_t substitution = 1;
  std::int64_t insertion = 1;
  std::int64_t deletion = 1;

  bool is_default() const {
    return correct == 0 && substitution == 1 && insertion == 1 && deletion == 1;
  }

  void check() const {
    if (correct < 0 || substitution < 0 || insertion < 0 || deletion < 0)
      throw ScoringError(ScoringError::Kind::kInvalidInput, "edit costs must be nonnegative");
    if (correct > substitution)
      throw ScoringError(ScoringError::Kind::kInvalidInput,
                         "correct-match cost must not exceed substitution cost");
  }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct ValidationPolicy {
  // Reject segments that overlap in time within one (session, group).
  bool reject_overlaps = false;
  // Require begin/end on every segment (time-constrained metrics).
  bool require_times = false;
};

// Canonicalizes a transcript: segments sorted within each (session, group) by
// (begin, end, input order); token and time invariants enforced. Idempotent.
Transcript validate(Transcript transcript, const ValidationPolicy& policy = {});

using SegmentGroup = std::vector<const Segment*>;

// session -> group label -> segments in canonical order.
std::map<std::string, std::map<std::string, SegmentGroup>> group_segments(
    const Transcript& transcript);

// Concatenates the group's words in segment order, then word order.
std::vector<TimedWord> words_of(const SegmentGroup& group);
std::vector<TimedWord> words_of(const std::vector<Segment>& group);

std::int64_t total_word_count(const Transcript& transcript);

// One step of an optimal alignment. Indices are 1-based word positions;
// 0 means the side does not participate (insert has no ref, delete no hyp).
struct AlignmentOp {
  enum class Kind { kCorrect, kSubstitute, kInsert, kDelete };
  Kind kind = Kind::kCorrect;
  std::int32_t ref_index = 0;
  std::int32_t hyp_index = 0;

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

const char* to_string(AlignmentOp::Kind kind);

// Alignment of one matched (reference group, hypothesis group) pair.
// An empty label marks a padding stream inserted for the assignment.
struct PairAlignment {
  std::string ref_group;
  std::string hyp_group;
  std::vector<AlignmentOp> ops;
};

// cpWER speaker permutation entry; nullopt marks an inserted empty stream.
struct SpeakerMatch {
  std::optional<std::string> ref_speaker;
  std::optional<std::string> hyp_stream;

  friend bool operator==(const SpeakerMatch&, const SpeakerMatch&) = default;
};
using CpAssignment = std::vector<SpeakerMatch>;

// Reference utterance id: speaker label plus 0-based index in that speaker's
// begin-time order.
struct SegmentRef {
  std::string speaker;
  std::int32_t utterance = 0;

  friend bool operator==(const SegmentRef&, const SegmentRef&) = default;
};

// Segments routed to one hypothesis stream, in emission order.
struct StreamAssignment {
  std::string stream;
  std::vector<SegmentRef> segments;

  friend bool operator==(const StreamAssignment&, const StreamAssignment&) = default;
};
using MimoAssignment = std::vector<StreamAssignment>;

using Assignment = std::variant<std::monostate, CpAssignment, MimoAssignment>;

// Error counts plus the resolved assignment. `error_rate()` is undefined
// (nullopt) when the reference is empty.
struct ErrorRateReport {
  std::int64_t errors = 0;
  std::int64_t length = 0;
  std::int64_t insertions = 0;
  std::int64_t deletions = 0;
  std::int64_t substitutions = 0;
  Assignment assignment;
  std::map<std::string, ErrorRateReport> per_session;
  std::vector<PairAlignment> alignments;  // session-level reports only

  std::optional<double> error_rate() const {
    if (length == 0) return std::nullopt;
    return static_cast<double>(errors) / static_cast<double>(length);
  }
};

}  // namespace mswer

#endif  // MSWER_TYPES_HPP_
