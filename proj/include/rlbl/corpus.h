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

#ifndef RLBL_CORPUS_H_
#define RLBL_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rlbl {

using Timestamp = int64_t;

// One observed action. Indices are dense and 0-based; `ordinal` is the
// record's position in the ingested input and is used for stable ordering.
struct Event {
  size_t user_id = 0;
  size_t item_id = 0;
  size_t behavior_id = 0;
  Timestamp timestamp = 0;
  size_t ordinal = 0;

  bool operator==(const Event&) const = default;
};

// An event as it comes out of a parser: raw ids, mapped behavior.
struct RawEvent {
  std::string user;
  std::string item;
  size_t behavior_id = 0;
  Timestamp timestamp = 0;

  bool operator==(const RawEvent&) const = default;
};

struct UserSequence {
  size_t user_id = 0;
  std::vector<Event> events;

  size_t size() const { return events.size(); }
  // 1-based access: event(1) is the first item of the sequence.
  const Event& event(size_t position) const { return events[position - 1]; }

  bool operator==(const UserSequence&) const = default;
};

// Per-user cut indices into the chronologically sorted sequence:
// [0, train_end) train, [train_end, valid_end) validation, rest test.
struct SplitPoints {
  size_t train_end = 0;
  size_t valid_end = 0;

  bool operator==(const SplitPoints&) const = default;
};

// "What will user_id do next under behavior_id, after event `position`?"
// query_time is only meaningful for the time-aware model.
struct PredictionQuery {
  size_t user_id = 0;
  size_t position = 0;
  size_t behavior_id = 0;
  std::optional<Timestamp> query_time;
};

enum class Segment { kTrain, kValidation, kTest };

struct SplitFractions {
  double train = 0.7;
  double validation = 0.1;
};

struct IngestReport {
  size_t input_events = 0;
  size_t dropped_users = 0;
  size_t dropped_events = 0;
};

// Minimum events a user needs to be kept.
inline constexpr size_t kMinEventsPerUser = 3;

class Corpus {
 public:
  Corpus() = default;

  const std::vector<UserSequence>& sequences() const { return sequences_; }
  const UserSequence& sequence(size_t user) const { return sequences_[user]; }
  const SplitPoints& split(size_t user) const { return splits_[user]; }

  size_t n_users() const { return user_ids_.size(); }
  size_t n_items() const { return item_ids_.size(); }
  size_t n_behaviors() const { return behavior_labels_.size(); }
  size_t n_events() const;

  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  const std::vector<std::string>& behavior_labels() const {
    return behavior_labels_;
  }
  std::optional<size_t> find_user(const std::string& raw) const;
  std::optional<size_t> find_item(const std::string& raw) const;
  std::optional<size_t> find_behavior(const std::string& label) const;

  const IngestReport& report() const { return report_; }

  // 1-based prediction positions k whose target (event k + 1) lies in
  // `segment`. Position 0 (the bare cold-start state) is never used.
  std::vector<size_t> prediction_positions(size_t user, Segment segment) const;

  // Every kept event re-expressed with raw ids, in original input order.
  std::vector<RawEvent> to_raw_events() const;

  bool operator==(const Corpus& other) const;

 private:
  friend Corpus build_corpus(const std::vector<RawEvent>&, SplitFractions,
                             const std::vector<std::string>&);

  std::vector<UserSequence> sequences_;
  std::vector<SplitPoints> splits_;
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
  std::vector<std::string> behavior_labels_;
  std::unordered_map<std::string, size_t> user_index_;
  std::unordered_map<std::string, size_t> item_index_;
  IngestReport report_;
};

// Groups events per user, sorts each user chronologically (stable), drops
// users with fewer than kMinEventsPerUser events and assigns dense ids in
// first-seen order. `behavior_labels` names behavior ids; missing names are
// filled with the decimal id. Throws EmptyCorpus, TimeError or ConfigError.
Corpus build_corpus(const std::vector<RawEvent>& events,
                    SplitFractions fractions = {},
                    const std::vector<std::string>& behavior_labels = {});

// Cut indices for a sequence of `length` events.
SplitPoints split_points(size_t length, SplitFractions fractions);

enum class LengthBucket { kShort, kMedium, kLong };

struct BucketThresholds {
  size_t medium = 50;
  size_t long_ = 200;
};

LengthBucket length_bucket(const UserSequence& seq, BucketThresholds t);
LengthBucket length_bucket(size_t length, BucketThresholds t);
const char* bucket_name(LengthBucket bucket);

}  // namespace rlbl

#endif  // RLBL_CORPUS_H_
