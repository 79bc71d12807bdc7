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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.h"
#include "rlbl/errors.h"
#include "rlbl/evaluation.h"
#include "rlbl/ingestion.h"
#include "rlbl/scorers.h"
#include "rlbl/training.h"

namespace rlbl {
namespace {

Corpus synthetic(uint64_t seed, double strength = 0.9) {
  SynthSpec s;
  s.n_users = 40;
  s.n_items = 25;
  s.min_len = 10;
  s.max_len = 40;
  s.markov_strength = strength;
  s.seed = seed;
  return build_corpus(generate_synthetic(s));
}

TEST(Pop, FrequentItemRanksFirstAndUnseenScoresZero) {
  std::vector<RawEvent> ev;
  for (int j = 0; j < 10; ++j) ev.push_back(RawEvent{"u", "hot", 0, j});
  ev.push_back(RawEvent{"u", "cold", 0, 10});
  for (int j = 0; j < 20; ++j) ev.push_back(RawEvent{"u", "late", 0, 100 + j});
  const Corpus c = build_corpus(ev);
  const auto scores = pop_scores(train_pop(c), PredictionQuery{});
  const size_t hot = *c.find_item("hot"), cold = *c.find_item("cold");
  const size_t late = *c.find_item("late");
  EXPECT_EQ(rank_of_target(scores, hot), 1u);
  EXPECT_EQ(scores[hot], 10.0);
  EXPECT_EQ(scores[cold], 1.0);
  // 31 events: train_end = 21, so only the first 10 "late" events count.
  EXPECT_EQ(scores[late], 10.0);
}

TEST(Pop, CountsMatchIndependentPass) {
  const Corpus c = synthetic(1);
  std::vector<double> ref(c.n_items(), 0.0);
  for (size_t u = 0; u < c.n_users(); ++u) {
    const auto& seq = c.sequence(u);
    const size_t len = seq.size();
    const size_t train_end = size_t(std::floor(0.7 * double(len) + 1e-9));
    for (size_t k = 1; k <= train_end; ++k) ref[seq.event(k).item_id] += 1.0;
  }
  EXPECT_EQ(train_pop(c).item_counts, ref);
}

TEST(Markov, DeterministicSuccessorGetsAllMass) {
  std::vector<RawEvent> ev;
  for (int u = 0; u < 3; ++u) {
    for (int j = 0; j < 10; ++j) {
      ev.push_back(RawEvent{"u" + std::to_string(u), j % 2 ? "B" : "A", 0, j});
    }
  }
  const Corpus c = build_corpus(ev);
  const MarkovModel m = train_markov(c);
  const size_t a = *c.find_item("A"), b = *c.find_item("B");
  ASSERT_EQ(m.rows[a].size(), 1u);
  EXPECT_EQ(m.rows[a].at(b), 1.0);
  EXPECT_EQ(markov_scores(m, a)[b], 1.0);
  EXPECT_EQ(markov_scores(m, a)[a], 0.0);
}

TEST(Markov, UnseenPreviousItemFallsBackToPopularity) {
  std::vector<RawEvent> ev;
  for (int j = 0; j < 10; ++j) ev.push_back(RawEvent{"u", j < 6 ? "x" : "y", 0, j});
  ev.push_back(RawEvent{"v", "x", 0, 0});
  ev.push_back(RawEvent{"v", "y", 0, 1});
  ev.push_back(RawEvent{"v", "only_test", 0, 2});
  const Corpus c = build_corpus(ev);
  const MarkovModel m = train_markov(c);
  const size_t unseen = *c.find_item("only_test");
  const auto fallback = markov_scores(m, unseen);
  const auto pop = pop_scores(train_pop(c), PredictionQuery{});
  for (size_t v = 0; v < c.n_items(); ++v) {
    EXPECT_EQ(rank_of_target(fallback, v), rank_of_target(pop, v));
  }
  EXPECT_THROW(markov_scores(m, c.n_items()), IndexError);
}

TEST(Markov, RowsMatchBruteForceCounts) {
  const Corpus c = synthetic(2, 0.6);
  std::map<std::pair<size_t, size_t>, double> pairs;
  std::map<size_t, double> totals;
  for (size_t u = 0; u < c.n_users(); ++u) {
    const auto& seq = c.sequence(u);
    const size_t train_end = c.split(u).train_end;
    for (size_t k = 2; k <= train_end; ++k) {
      pairs[{seq.event(k - 1).item_id, seq.event(k).item_id}] += 1.0;
      totals[seq.event(k - 1).item_id] += 1.0;
    }
  }
  const MarkovModel m = train_markov(c);
  size_t entries = 0;
  for (const auto& row : m.rows) entries += row.size();
  EXPECT_EQ(entries, pairs.size());
  for (const auto& [key, count] : pairs) {
    EXPECT_DOUBLE_EQ(m.rows[key.first].at(key.second), count / totals[key.first]);
  }
}

TEST(LinearRnn, ShapeContract) {
  const Corpus c = synthetic(3);
  const RlblParams p = linear_rnn_as_rlbl(5, c, 1);
  EXPECT_EQ(p.core.n, 1u);
  ASSERT_EQ(p.C.size(), 1u);
  for (const Mat& m : p.core.M) EXPECT_EQ(m, Mat::Identity(5));
  EXPECT_NO_THROW(validate(p));
}

TEST(LinearRnn, ForwardIsTheLinearRecursion) {
  const Corpus c = synthetic(4);
  const RlblParams p = linear_rnn_as_rlbl(4, c, 2);
  const UserSequence& seq = c.sequence(0);
  oracle::Dense h = oracle::to_dense(p.core.u0);
  for (size_t k = 1; k <= seq.size(); ++k) {
    h = oracle::add(oracle::mul(oracle::to_square(p.core.W), h),
                    oracle::mul(oracle::to_square(p.C[0]),
                                oracle::to_dense(p.core.item_vecs[seq.event(k).item_id])));
    const Vec got = hidden_at(p, seq, k).h;
    for (size_t j = 0; j < 4; ++j) EXPECT_EQ(got[j], h[j]);
  }
}

TEST(LinearRnn, TrainingKeepsIdentityBehaviorsAndDiffersFromWiderWindow) {
  const Corpus c = synthetic(5);
  RlblParams rnn = linear_rnn_as_rlbl(4, c, 3);
  RlblParams wide = init_rlbl(shape_of(c, 4, 3), 3);
  TrainConfig cfg;
  cfg.freeze_behavior_mats = true;
  Rng a(1), b(1);
  sgd_epoch(rnn, c, cfg, a);
  cfg.freeze_behavior_mats = false;
  sgd_epoch(wide, c, cfg, b);
  for (const Mat& m : rnn.core.M) EXPECT_EQ(m, Mat::Identity(4));
  EXPECT_NE(report_table(evaluate(RlblScorer(rnn), c, EvalConfig{})),
            report_table(evaluate(RlblScorer(wide), c, EvalConfig{})));
}

}  // namespace
}  // namespace rlbl
