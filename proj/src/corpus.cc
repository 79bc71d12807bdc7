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

#include "rlbl/corpus.h"

#include <algorithm>
#include <cmath>

#include "rlbl/errors.h"

namespace rlbl {
namespace {

// Absorbs representation error in products like 10 * (0.7 + 0.1).
constexpr double kFloorSlack = 1e-9;

size_t floor_fraction(size_t length, double fraction) {
  return static_cast<size_t>(
      std::floor(static_cast<double>(length) * fraction + kFloorSlack));
}

}  // namespace

SplitPoints split_points(size_t length, SplitFractions fractions) {
  SplitPoints p;
  p.train_end = std::min(length, floor_fraction(length, fractions.train));
  p.valid_end = std::min(
      length, floor_fraction(length, fractions.train + fractions.validation));
  p.valid_end = std::max(p.valid_end, p.train_end);
  return p;
}

Corpus build_corpus(const std::vector<RawEvent>& events,
                    SplitFractions fractions,
                    const std::vector<std::string>& behavior_labels) {
  if (events.empty()) throw EmptyCorpus("no events");
  if (!(fractions.train > 0.0 && fractions.train < 1.0 &&
        fractions.validation > 0.0 && fractions.validation < 1.0 &&
        fractions.train + fractions.validation < 1.0)) {
    throw ConfigError("split fractions must lie in (0,1) and sum below 1");
  }

  std::unordered_map<std::string, size_t> per_user_count;
  size_t max_behavior = 0;
  for (const RawEvent& e : events) {
    if (e.timestamp < 0) {
      throw TimeError("negative timestamp for user '" + e.user + "'");
    }
    ++per_user_count[e.user];
    max_behavior = std::max(max_behavior, e.behavior_id);
  }

  Corpus corpus;
  corpus.report_.input_events = events.size();
  for (const auto& [user, count] : per_user_count) {
    if (count < kMinEventsPerUser) {
      ++corpus.report_.dropped_users;
      corpus.report_.dropped_events += count;
    }
  }

  for (size_t ordinal = 0; ordinal < events.size(); ++ordinal) {
    const RawEvent& raw = events[ordinal];
    if (per_user_count[raw.user] < kMinEventsPerUser) continue;

    auto [uit, new_user] =
        corpus.user_index_.try_emplace(raw.user, corpus.user_ids_.size());
    if (new_user) {
      corpus.user_ids_.push_back(raw.user);
      corpus.sequences_.push_back(UserSequence{uit->second, {}});
    }
    auto [iit, new_item] =
        corpus.item_index_.try_emplace(raw.item, corpus.item_ids_.size());
    if (new_item) corpus.item_ids_.push_back(raw.item);

    corpus.sequences_[uit->second].events.push_back(
        Event{uit->second, iit->second, raw.behavior_id, raw.timestamp,
              ordinal});
  }
  if (corpus.sequences_.empty()) {
    throw EmptyCorpus("every user has fewer than " +
                      std::to_string(kMinEventsPerUser) + " events");
  }

  corpus.behavior_labels_ = behavior_labels;
  for (size_t b = corpus.behavior_labels_.size(); b <= max_behavior; ++b) {
    corpus.behavior_labels_.push_back(std::to_string(b));
  }

  corpus.splits_.reserve(corpus.sequences_.size());
  for (UserSequence& seq : corpus.sequences_) {
    std::stable_sort(seq.events.begin(), seq.events.end(),
                     [](const Event& a, const Event& b) {
                       return a.timestamp < b.timestamp;
                     });
    corpus.splits_.push_back(split_points(seq.size(), fractions));
  }
  return corpus;
}

size_t Corpus::n_events() const {
  size_t total = 0;
  for (const auto& seq : sequences_) total += seq.size();
  return total;
}

std::optional<size_t> Corpus::find_user(const std::string& raw) const {
  auto it = user_index_.find(raw);
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<size_t> Corpus::find_item(const std::string& raw) const {
  auto it = item_index_.find(raw);
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<size_t> Corpus::find_behavior(const std::string& label) const {
  auto it = std::find(behavior_labels_.begin(), behavior_labels_.end(), label);
  if (it == behavior_labels_.end()) return std::nullopt;
  return static_cast<size_t>(it - behavior_labels_.begin());
}

std::vector<size_t> Corpus::prediction_positions(size_t user,
                                                 Segment segment) const {
  const SplitPoints& s = splits_[user];
  const size_t len = sequences_[user].size();
  // Target event at 1-based position k + 1 sits at 0-based index k.
  size_t lo = 0, hi = 0;
  switch (segment) {
    case Segment::kTrain:
      lo = 0, hi = s.train_end;
      break;
    case Segment::kValidation:
      lo = s.train_end, hi = s.valid_end;
      break;
    case Segment::kTest:
      lo = s.valid_end, hi = len;
      break;
  }
  std::vector<size_t> out;
  for (size_t k = std::max<size_t>(lo, 1); k < hi; ++k) out.push_back(k);
  return out;
}

std::vector<RawEvent> Corpus::to_raw_events() const {
  std::vector<const Event*> all;
  all.reserve(n_events());
  for (const auto& seq : sequences_) {
    for (const auto& e : seq.events) all.push_back(&e);
  }
  std::sort(all.begin(), all.end(), [](const Event* a, const Event* b) {
    return a->ordinal < b->ordinal;
  });
  std::vector<RawEvent> out;
  out.reserve(all.size());
  for (const Event* e : all) {
    out.push_back(RawEvent{user_ids_[e->user_id], item_ids_[e->item_id],
                           e->behavior_id, e->timestamp});
  }
  return out;
}

bool Corpus::operator==(const Corpus& other) const {
  // Ordinals are an ingest artifact and are not part of corpus identity.
  if (user_ids_ != other.user_ids_ || item_ids_ != other.item_ids_ ||
      behavior_labels_ != other.behavior_labels_ ||
      splits_ != other.splits_ || sequences_.size() != other.sequences_.size()) {
    return false;
  }
  for (size_t u = 0; u < sequences_.size(); ++u) {
    const auto& a = sequences_[u].events;
    const auto& b = other.sequences_[u].events;
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].user_id != b[i].user_id || a[i].item_id != b[i].item_id ||
          a[i].behavior_id != b[i].behavior_id ||
          a[i].timestamp != b[i].timestamp) {
        return false;
      }
    }
  }
  return true;
}

LengthBucket length_bucket(size_t length, BucketThresholds t) {
  if (t.medium >= t.long_) {
    throw ConfigError("bucket thresholds must be strictly increasing");
  }
  if (length < t.medium) return LengthBucket::kShort;
  if (length < t.long_) return LengthBucket::kMedium;
  return LengthBucket::kLong;
}

LengthBucket length_bucket(const UserSequence& seq, BucketThresholds t) {
  return length_bucket(seq.size(), t);
}

const char* bucket_name(LengthBucket bucket) {
  switch (bucket) {
    case LengthBucket::kShort:
      return "short";
    case LengthBucket::kMedium:
      return "medium";
    case LengthBucket::kLong:
      return "long";
  }
  return "unknown";
}

}  // namespace rlbl
