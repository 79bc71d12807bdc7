/*
 * Copyright 2026 The RLBL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RLBL_INGESTION_H_
#define RLBL_INGESTION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlbl/corpus.h"

namespace rlbl {

struct LineError {
  size_t line = 0;  // 1-based
  std::string reason;
};

struct ParseResult {
  std::vector<RawEvent> events;
  std::vector<LineError> malformed;
  size_t skipped_unknown_behavior = 0;
  std::vector<std::string> behavior_labels;
};

// Fraction of malformed lines above which parsing fails with FormatError.
inline constexpr double kMaxMalformedFraction = 0.01;

// `user::item::rating::timestamp`; rating r in 1..5 becomes behavior r - 1.
// Throws IoError if the file cannot be read.
ParseResult parse_movielens(const std::string& path);
ParseResult parse_movielens_text(std::string_view text);

// Column layout of a delimited event log.
//
// One record per line, fields separated by a single delimiter character.
// There is no quoting or escaping: fields may not contain the delimiter or a
// line break. A trailing '\r' is stripped. Timestamps are integers,
// multiplied by `time_scale` (86400 for day-granularity logs).
struct GenericFormat {
  char delimiter = '\t';
  size_t user_col = 0;
  size_t item_col = 1;
  size_t behavior_col = 2;
  size_t time_col = 3;
  bool header = false;
  int64_t time_scale = 1;
  // Unknown behavior labels fail the parse when strict, are counted and
  // skipped otherwise.
  bool strict = true;
};

// behavior_map[i] is the label of behavior i. When empty, labels must be
// non-negative integers and are used as ids directly.
ParseResult parse_generic(const std::string& path, const GenericFormat& format,
                          const std::vector<std::string>& behavior_map);
ParseResult parse_generic_text(std::string_view text,
                               const GenericFormat& format,
                               const std::vector<std::string>& behavior_map);

// Writes user, item, behavior, timestamp in the default column order.
// Behaviors are written as labels when given, ids otherwise. Throws
// FormatError for fields containing the delimiter or a line break.
std::string format_generic(const std::vector<RawEvent>& events,
                           char delimiter = '\t',
                           const std::vector<std::string>& behavior_map = {});
void write_generic(const std::string& path, const std::vector<RawEvent>& events,
                   char delimiter = '\t',
                   const std::vector<std::string>& behavior_map = {});

// Synthetic multi-behavior sequences with a planted successor structure.
//
// Each item i has a successor succ(i) drawn from a random permutation made of
// cycles of length `cycle_period` (0: an unconstrained random permutation).
// After an event on item i the next item is, with probability
// markov_strength, succ(i), or the predecessor succ^-1(i) when that event was
// "flipped"; otherwise it is uniform. An event with behavior b is flipped
// with probability behavior_flip_prob[b]. Behaviors are uniform, gaps between
// timestamps are exponential with mean gap_mean_seconds.
struct SynthSpec {
  size_t n_users = 100;
  size_t n_items = 100;
  size_t n_behaviors = 3;
  size_t min_len = 50;
  size_t max_len = 50;
  uint64_t seed = 1;
  double markov_strength = 0.9;
  size_t cycle_period = 0;
  std::vector<double> behavior_flip_prob;  // missing entries are 0
  double gap_mean_seconds = 3600.0;
  int64_t start_time = 1'000'000'000;

  void validate() const;
};

std::vector<RawEvent> generate_synthetic(const SynthSpec& spec);

// succ for the generator seed; exposed so tests can check the planted chain.
std::vector<size_t> planted_successors(const SynthSpec& spec);

}  // namespace rlbl

#endif  // RLBL_INGESTION_H_
