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

#ifndef RLBL_BASELINES_H_
#define RLBL_BASELINES_H_

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "rlbl/corpus.h"
#include "rlbl/evaluation.h"
#include "rlbl/model.h"

namespace rlbl {

// Item frequencies over every user's training segment.
struct PopModel {
  std::vector<double> item_counts;
};

// Row-normalized item-to-item transition frequencies over consecutive
// training events. Rows never observed fall back to normalized popularity.
struct MarkovModel {
  std::vector<std::map<size_t, double>> rows;
  std::vector<double> fallback;  // popularity, sums to 1
};

PopModel train_pop(const Corpus& corpus);
MarkovModel train_markov(const Corpus& corpus);

// Behavior-agnostic training counts; identical for every query.
std::vector<double> pop_scores(const PopModel& model,
                               const PredictionQuery& query);
std::vector<double> markov_scores(const MarkovModel& model,
                                  size_t previous_item);

// RLBL with window width 1 and every M_b = identity: the linear recurrent
// network h_k = W h_{k-1} + C r_{v_k}. Train with freeze_behavior_mats.
RlblParams linear_rnn_as_rlbl(size_t d, const Corpus& corpus, uint64_t seed);

class PopScorer : public SequenceScorer {
 public:
  explicit PopScorer(const PopModel& model) : model_(model) {}
  std::unique_ptr<UserScorer> for_user(const UserSequence& seq) const override;

 private:
  const PopModel& model_;
};

class MarkovScorer : public SequenceScorer {
 public:
  explicit MarkovScorer(const MarkovModel& model) : model_(model) {}
  std::unique_ptr<UserScorer> for_user(const UserSequence& seq) const override;

 private:
  const MarkovModel& model_;
};

}  // namespace rlbl

#endif  // RLBL_BASELINES_H_
