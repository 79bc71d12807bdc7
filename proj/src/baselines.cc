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

#include "rlbl/baselines.h"

#include <numeric>

#include "rlbl/errors.h"

namespace rlbl {

PopModel train_pop(const Corpus& corpus) {
  PopModel model;
  model.item_counts.assign(corpus.n_items(), 0.0);
  for (size_t u = 0; u < corpus.n_users(); ++u) {
    const auto& events = corpus.sequence(u).events;
    for (size_t i = 0; i < corpus.split(u).train_end; ++i) {
      model.item_counts[events[i].item_id] += 1.0;
    }
  }
  return model;
}

MarkovModel train_markov(const Corpus& corpus) {
  MarkovModel model;
  model.rows.resize(corpus.n_items());
  for (size_t u = 0; u < corpus.n_users(); ++u) {
    const auto& events = corpus.sequence(u).events;
    for (size_t i = 1; i < corpus.split(u).train_end; ++i) {
      model.rows[events[i - 1].item_id][events[i].item_id] += 1.0;
    }
  }
  for (auto& row : model.rows) {
    double total = 0.0;
    for (const auto& kv : row) total += kv.second;
    for (auto& kv : row) kv.second /= total;
  }
  model.fallback = train_pop(corpus).item_counts;
  const double total =
      std::accumulate(model.fallback.begin(), model.fallback.end(), 0.0);
  if (total > 0.0) {
    for (double& x : model.fallback) x /= total;
  }
  return model;
}

std::vector<double> pop_scores(const PopModel& model, const PredictionQuery&) {
  return model.item_counts;
}

std::vector<double> markov_scores(const MarkovModel& model,
                                  size_t previous_item) {
  if (previous_item >= model.rows.size()) {
    throw IndexError("item " + std::to_string(previous_item) + " out of range");
  }
  const auto& row = model.rows[previous_item];
  if (row.empty()) return model.fallback;
  std::vector<double> out(model.rows.size(), 0.0);
  for (const auto& [item, p] : row) out[item] = p;
  return out;
}

RlblParams linear_rnn_as_rlbl(size_t d, const Corpus& corpus, uint64_t seed) {
  RlblParams p = init_rlbl(shape_of(corpus, d, 1), seed);
  for (Mat& m : p.core.M) m = Mat::Identity(d);
  return p;
}

namespace {

class PopUserScorer : public UserScorer {
 public:
  PopUserScorer(const PopModel& model, size_t user)
      : model_(model), user_(user) {}
  void scores(size_t k, size_t behavior, std::vector<double>& out) override {
    out = pop_scores(model_, PredictionQuery{user_, k, behavior, {}});
  }

 private:
  const PopModel& model_;
  size_t user_;
};

class MarkovUserScorer : public UserScorer {
 public:
  MarkovUserScorer(const MarkovModel& model, const UserSequence& seq)
      : model_(model), seq_(seq) {}
  void scores(size_t k, size_t, std::vector<double>& out) override {
    // No previous item at the cold start; fall back to popularity.
    if (k == 0) {
      out = model_.fallback;
    } else {
      out = markov_scores(model_, seq_.event(k).item_id);
    }
  }

 private:
  const MarkovModel& model_;
  const UserSequence& seq_;
};

}  // namespace

std::unique_ptr<UserScorer> PopScorer::for_user(const UserSequence& seq) const {
  return std::make_unique<PopUserScorer>(model_, seq.user_id);
}

std::unique_ptr<UserScorer> MarkovScorer::for_user(
    const UserSequence& seq) const {
  return std::make_unique<MarkovUserScorer>(model_, seq);
}

}  // namespace rlbl
