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

#include "rlbl/evaluation.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "rlbl/errors.h"

namespace rlbl {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct Accumulator {
  std::vector<CompensatedSum> recall, f1;
  CompensatedSum ap;
  size_t n = 0;

  explicit Accumulator(size_t n_cutoffs) : recall(n_cutoffs), f1(n_cutoffs) {}

  void add(const InstanceMetrics& m) {
    for (size_t i = 0; i < recall.size(); ++i) {
      recall[i].add(m.recall[i]);
      f1[i].add(m.f1[i]);
    }
    ap.add(m.average_precision);
    ++n;
  }

  MetricSet finish() const {
    MetricSet out;
    out.n_instances = n;
    const double denom = n > 0 ? double(n) : 1.0;
    for (size_t i = 0; i < recall.size(); ++i) {
      out.recall.push_back(recall[i].value() / denom);
      out.f1.push_back(f1[i].value() / denom);
    }
    out.map = ap.value() / denom;
    return out;
  }
};

std::vector<InstanceMetrics> evaluate_user(const SequenceScorer& scorer,
                                           const Corpus& corpus, size_t user,
                                           const EvalConfig& cfg) {
  const UserSequence& seq = corpus.sequence(user);
  std::vector<InstanceMetrics> out;
  const auto positions = corpus.prediction_positions(user, cfg.segment);
  if (positions.empty()) return out;

  auto user_scorer = scorer.for_user(seq);
  std::vector<double> scores;
  std::vector<bool> unseen;
  size_t seen_upto = 0;
  if (cfg.exclude_seen) unseen.assign(corpus.n_items(), true);
  for (size_t k : positions) {
    const Event& target = seq.event(k + 1);
    if (cfg.exclude_seen) {
      for (; seen_upto < k; ++seen_upto) {
        unseen[seq.events[seen_upto].item_id] = false;
      }
    }
    if (!cfg.target_behaviors.empty() &&
        !cfg.target_behaviors.contains(target.behavior_id)) {
      continue;
    }
    user_scorer->scores(k, target.behavior_id, scores);
    size_t rank = 0;
    if (cfg.exclude_seen) {
      const bool was_seen = !unseen[target.item_id];
      unseen[target.item_id] = true;
      rank = rank_of_target(scores, target.item_id, unseen);
      unseen[target.item_id] = !was_seen;
    } else {
      rank = rank_of_target(scores, target.item_id);
    }
    out.push_back(instance_metrics(rank, cfg.cutoffs));
  }
  return out;
}

}  // namespace

void EvalConfig::validate() const {
  if (cutoffs.empty()) throw ConfigError("at least one cutoff required");
  for (size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] == 0) throw ConfigError("cutoffs must be positive");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw ConfigError("cutoffs must be strictly increasing");
    }
  }
  if (thresholds.medium >= thresholds.long_) {
    throw ConfigError("bucket thresholds must be strictly increasing");
  }
}

size_t rank_of_target(std::span<const double> scores, size_t target) {
  if (target >= scores.size()) throw IndexError("target outside score vector");
  const double t = scores[target];
  size_t rank = 1;
  for (size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] > t || (scores[j] == t && j < target)) ++rank;
  }
  return rank;
}

size_t rank_of_target(std::span<const double> scores, size_t target,
                      const std::vector<bool>& candidate) {
  if (target >= scores.size() || candidate.size() != scores.size()) {
    throw IndexError("target or candidate mask does not match scores");
  }
  const double t = scores[target];
  size_t rank = 1;
  for (size_t j = 0; j < scores.size(); ++j) {
    if (!candidate[j]) continue;
    if (scores[j] > t || (scores[j] == t && j < target)) ++rank;
  }
  return rank;
}

InstanceMetrics instance_metrics(size_t rank,
                                 const std::vector<size_t>& cutoffs) {
  InstanceMetrics m;
  for (size_t k : cutoffs) {
    const double hit = rank <= k ? 1.0 : 0.0;
    m.recall.push_back(hit);
    m.f1.push_back(2.0 * hit / double(k + 1));
  }
  m.average_precision = 1.0 / double(rank);
  return m;
}

RankingReport evaluate(const SequenceScorer& scorer, const Corpus& corpus,
                       const EvalConfig& cfg) {
  cfg.validate();
  const size_t n_users = corpus.n_users();
  std::vector<std::vector<InstanceMetrics>> per_user(n_users);

  const size_t threads = std::max<size_t>(1, std::min(cfg.threads, n_users));
  if (threads == 1) {
    for (size_t u = 0; u < n_users; ++u) {
      per_user[u] = evaluate_user(scorer, corpus, u, cfg);
    }
  } else {
    std::vector<std::thread> workers;
    for (size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (size_t u = w; u < n_users; u += threads) {
          per_user[u] = evaluate_user(scorer, corpus, u, cfg);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  // Reduction in user order keeps the report independent of thread count.
  Accumulator overall(cfg.cutoffs.size());
  std::map<LengthBucket, Accumulator> buckets;
  for (LengthBucket b :
       {LengthBucket::kShort, LengthBucket::kMedium, LengthBucket::kLong}) {
    buckets.emplace(b, Accumulator(cfg.cutoffs.size()));
  }
  for (size_t u = 0; u < n_users; ++u) {
    const LengthBucket b = length_bucket(corpus.sequence(u), cfg.thresholds);
    for (const InstanceMetrics& m : per_user[u]) {
      overall.add(m);
      buckets.at(b).add(m);
    }
  }
  if (overall.n == 0) throw EmptyEval("no qualifying evaluation instance");

  RankingReport report;
  report.cutoffs = cfg.cutoffs;
  report.overall = overall.finish();
  for (const auto& [b, acc] : buckets) report.buckets[b] = acc.finish();
  return report;
}

namespace {

void emit_rows(std::ostream& os, const MetricSet& m,
               const std::vector<size_t>& cutoffs, const char* bucket) {
  for (size_t i = 0; i < cutoffs.size(); ++i) {
    os << "recall\t" << cutoffs[i] << '\t' << bucket << '\t' << m.recall[i]
       << '\n';
  }
  for (size_t i = 0; i < cutoffs.size(); ++i) {
    os << "f1\t" << cutoffs[i] << '\t' << bucket << '\t' << m.f1[i] << '\n';
  }
  os << "map\t-\t" << bucket << '\t' << m.map << '\n';
  os << "instances\t-\t" << bucket << '\t' << m.n_instances << '\n';
}

}  // namespace

std::string report_table(const RankingReport& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "metric\tcutoff\tbucket\tvalue\n";
  emit_rows(os, r.overall, r.cutoffs, "all");
  for (const auto& [b, m] : r.buckets) emit_rows(os, m, r.cutoffs, bucket_name(b));
  return os.str();
}

std::string report_summary(const RankingReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  auto line = [&](const char* label, const MetricSet& m) {
    os << std::left << std::setw(8) << label << " n=" << m.n_instances;
    for (size_t i = 0; i < r.cutoffs.size(); ++i) {
      os << "  R@" << r.cutoffs[i] << '=' << m.recall[i];
    }
    for (size_t i = 0; i < r.cutoffs.size(); ++i) {
      os << "  F1@" << r.cutoffs[i] << '=' << m.f1[i];
    }
    os << "  MAP=" << m.map << '\n';
  };
  line("all", r.overall);
  for (const auto& [b, m] : r.buckets) line(bucket_name(b), m);
  return os.str();
}

}  // namespace rlbl
