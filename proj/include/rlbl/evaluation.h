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

#ifndef RLBL_EVALUATION_H_
#define RLBL_EVALUATION_H_

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rlbl/corpus.h"

namespace rlbl {

struct EvalConfig {
  std::vector<size_t> cutoffs{1, 2, 5, 10};
  std::set<size_t> target_behaviors;  // empty scores every behavior
  bool exclude_seen = false;
  BucketThresholds thresholds;
  Segment segment = Segment::kTest;
  size_t threads = 1;

  void validate() const;
};

// Scores every item for "what comes after position k under `behavior`".
class UserScorer {
 public:
  virtual ~UserScorer() = default;
  virtual void scores(size_t k, size_t behavior, std::vector<double>& out) = 0;
};

// Factory of per-user scorers. Implementations must be safe to call from
// several threads at once; each returned UserScorer is used by one thread.
class SequenceScorer {
 public:
  virtual ~SequenceScorer() = default;
  virtual std::unique_ptr<UserScorer> for_user(
      const UserSequence& seq) const = 0;
};

// 1 + #{strictly higher scores} + #{equal scores at smaller item index}.
size_t rank_of_target(std::span<const double> scores, size_t target);
// Same, counting only items where `candidate[j]` is true.
size_t rank_of_target(std::span<const double> scores, size_t target,
                      const std::vector<bool>& candidate);

struct InstanceMetrics {
  std::vector<double> recall;  // one per cutoff
  std::vector<double> f1;
  double average_precision = 0.0;
};

// Single relevant item: recall@k = [rank <= k], precision@k = recall@k / k,
// F1@k = 2 recall@k / (k + 1), AP = 1 / rank.
InstanceMetrics instance_metrics(size_t rank,
                                 const std::vector<size_t>& cutoffs);

struct MetricSet {
  std::vector<double> recall;
  std::vector<double> f1;
  double map = 0.0;
  size_t n_instances = 0;
};

struct RankingReport {
  std::vector<size_t> cutoffs;
  MetricSet overall;
  std::map<LengthBucket, MetricSet> buckets;
};

// Ranks the next event of every position whose target falls in
// config.segment and whose behavior is a target behavior, conditioning on
// the full history before it. Throws EmptyEval if nothing qualifies.
RankingReport evaluate(const SequenceScorer& scorer, const Corpus& corpus,
                       const EvalConfig& config);

// metric<TAB>cutoff<TAB>bucket<TAB>value rows.
std::string report_table(const RankingReport& report);
std::string report_summary(const RankingReport& report);

}  // namespace rlbl

#endif  // RLBL_EVALUATION_H_
