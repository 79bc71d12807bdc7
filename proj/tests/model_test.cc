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


#include "rlbl/model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.h"
#include "rlbl/errors.h"

namespace rlbl {
namespace {

void expect_close(const Vec& got, const oracle::Dense& ref, double tol) {
  ASSERT_EQ(got.size(), ref.size());
  for (size_t j = 0; j < ref.size(); ++j) {
    EXPECT_NEAR(got[j], ref[j], tol * std::max(1.0, std::abs(ref[j])))
        << "coord " << j;
  }
}

TEST(HiddenAt, WindowWidthOneWithIdentityBehaviorsIsTheLinearRnn) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    RlblParams p = oracle::random_rlbl(4, 1, 1, 6, 3, seed);
    for (Mat& m : p.core.M) m = Mat::Identity(4);
    std::mt19937_64 rng(seed);
    const UserSequence seq = oracle::random_sequence(0, 12, 6, 3, rng);
    // h_k = W h_{k-1} + C r_{v_k}, h_0 = u0.
    const auto W = oracle::to_square(p.core.W);
    const auto C = oracle::to_square(p.C[0]);
    oracle::Dense h = oracle::to_dense(p.core.u0);
    for (size_t k = 1; k <= seq.size(); ++k) {
      h = oracle::add(oracle::mul(W, h),
                      oracle::mul(C, oracle::to_dense(
                                         p.core.item_vecs[seq.event(k).item_id])));
      const Vec got = hidden_at(p, seq, k).h;
      for (size_t j = 0; j < 4; ++j) ASSERT_EQ(got[j], h[j]) << seed << " " << k;
    }
  }
}

TEST(HiddenAt, ZeroParametersGiveZeroStates) {
  RlblParams p = oracle::random_rlbl(3, 2, 1, 4, 2, 1);
  for (auto* vs : {&p.core.user_vecs, &p.core.item_vecs}) {
    for (Vec& v : *vs) v = Vec(3);
  }
  p.core.W = Mat(3, 3);
  for (Mat& m : p.core.M) m = Mat(3, 3);
  for (Mat& m : p.C) m = Mat(3, 3);
  p.core.u0 = Vec(3);
  std::mt19937_64 rng(1);
  const UserSequence seq = oracle::random_sequence(0, 8, 4, 2, rng);
  for (size_t k = 0; k <= 8; ++k) EXPECT_EQ(hidden_at(p, seq, k).h, Vec(3));
}

TEST(HiddenAt, MatchesUnrolledRecursion) {
  for (size_t n : {1, 2, 3, 5}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      const RlblParams p = oracle::random_rlbl(4, n, 2, 7, 3, seed);
      std::mt19937_64 rng(seed * 31 + n);
      const UserSequence seq = oracle::random_sequence(1, 11, 7, 3, rng);
      for (size_t k = 0; k <= seq.size(); ++k) {
        expect_close(hidden_at(p, seq, k).h, oracle::hidden(p, seq, k), 1e-12);
      }
    }
  }
}

TEST(HiddenAt, ColdStartAndPositionRange) {
  const RlblParams p = oracle::random_rlbl(3, 2, 1, 4, 1, 3);
  std::mt19937_64 rng(2);
  const UserSequence seq = oracle::random_sequence(0, 5, 4, 1, rng);
  EXPECT_EQ(hidden_at(p, seq, 0).h, p.core.u0);
  EXPECT_EQ(hidden_at(p, seq, 5).position, 5u);
  EXPECT_THROW(hidden_at(p, seq, 6), PositionError);
}

TEST(HiddenStates, BitIdenticalToHiddenAt) {
  const RlblParams p = oracle::random_rlbl(5, 3, 1, 9, 2, 4);
  const TaRlblParams q = oracle::random_ta_rlbl(5, 3, 1, 9, 2, 5, 3600, 4);
  std::mt19937_64 rng(3);
  const UserSequence seq = oracle::random_sequence(0, 17, 9, 2, rng);
  const auto all = hidden_states(p, seq, 17);
  const auto all_ta = hidden_states(q, seq, 17);
  ASSERT_EQ(all.size(), 18u);
  for (size_t k = 0; k <= 17; ++k) {
    EXPECT_EQ(all[k], hidden_at(p, seq, k).h) << k;
    EXPECT_EQ(all_ta[k], hidden_at_ta(q, seq, k).h) << k;
  }
  EXPECT_THROW(hidden_states(p, seq, 18), PositionError);
}

TEST(HiddenAtTa, MatchesUnrolledRecursion) {
  for (size_t n : {1, 2, 3, 4}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      const TaRlblParams p =
          oracle::random_ta_rlbl(3, n, 2, 6, 2, 3, 3600, seed);
      std::mt19937_64 rng(seed + 7 * n);
      const UserSequence seq = oracle::random_sequence(0, 10, 6, 2, rng);
      for (size_t k = 0; k <= seq.size(); ++k) {
        expect_close(hidden_at_ta(p, seq, k).h, oracle::hidden(p, seq, k),
                     1e-12);
      }
    }
  }
}

TEST(HiddenAtTa, SharedTimestampUsesTheZeroBoundaryForEveryOffset) {
  const TaRlblParams p = oracle::random_ta_rlbl(3, 3, 1, 5, 2, 4, 3600, 8);
  std::mt19937_64 rng(4);
  UserSequence seq = oracle::random_sequence(0, 9, 5, 2, rng);
  for (Event& e : seq.events) e.timestamp = 86400 * 300;
  RlblParams as_rlbl;
  as_rlbl.core = p.core;
  as_rlbl.C.assign(3, p.grid.boundary_mats[0]);
  for (size_t k = 0; k <= 9; ++k) {
    EXPECT_EQ(hidden_at_ta(p, seq, k).h, hidden_at(as_rlbl, seq, k).h) << k;
  }
}

TEST(HiddenAtTa, EqualBoundaryMatricesReduceToRlbl) {
  TaRlblParams p = oracle::random_ta_rlbl(3, 2, 1, 5, 2, 4, 3600, 9);
  for (Mat& m : p.grid.boundary_mats) m = p.grid.boundary_mats[2];
  std::mt19937_64 rng(5);
  const UserSequence seq = oracle::random_sequence(0, 9, 5, 2, rng);
  RlblParams as_rlbl;
  as_rlbl.core = p.core;
  as_rlbl.C.assign(2, p.grid.boundary_mats[2]);
  for (size_t k = 0; k <= 9; ++k) {
    expect_close(hidden_at_ta(p, seq, k).h,
                 oracle::to_dense(hidden_at(as_rlbl, seq, k).h), 1e-12);
  }
}

TEST(HiddenAtTa, TimeShiftLeavesStatesBitIdentical) {
  const TaRlblParams p = oracle::random_ta_rlbl(4, 3, 1, 6, 2, 5, 3600, 10);
  std::mt19937_64 rng(6);
  const UserSequence seq = oracle::random_sequence(0, 12, 6, 2, rng);
  for (Timestamp shift : {Timestamp{-1'400'000'000}, Timestamp{1}, Timestamp{86400 * 365}}) {
    UserSequence moved = seq;
    for (Event& e : moved.events) e.timestamp += shift;
    for (size_t k = 0; k <= 12; ++k) {
      EXPECT_EQ(hidden_at_ta(p, seq, k).h, hidden_at_ta(p, moved, k).h);
    }
  }
}

TEST(Score, ZeroQueryVectorScoresZero) {
  const RlblParams p = oracle::random_rlbl(4, 2, 2, 5, 2, 1);
  const Vec h = -1.0 * p.core.user_vecs[1];
  for (size_t v = 0; v < 5; ++v) EXPECT_EQ(score(p.core, h, 1, 0, v), 0.0);
}

TEST(Score, UnitVectorsAndIdentityBehavior) {
  RlblParams p = oracle::random_rlbl(3, 1, 1, 2, 1, 2);
  p.core.M[0] = Mat::Identity(3);
  p.core.user_vecs[0] = Vec(3);
  p.core.item_vecs[1] = Vec::Unit(3, 0);
  EXPECT_EQ(score(p.core, Vec::Unit(3, 0), 0, 0, 1), 1.0);
}

TEST(Score, MatchesTripleLoopAndScoreAll) {
  const RlblParams p = oracle::random_rlbl(6, 2, 3, 20, 3, 3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec h = oracle::random_vec(6, rng, 2.0);
    const size_t u = trial % 3, b = trial % 3;
    const auto all = score_all_items(p.core, h, u, b);
    ASSERT_EQ(all.size(), 20u);
    for (size_t v = 0; v < 20; ++v) {
      const double ref = oracle::score(p.core, oracle::to_dense(h), u, b, v);
      EXPECT_NEAR(score(p.core, h, u, b, v), ref, 1e-12);
      EXPECT_NEAR(all[v], score(p.core, h, u, b, v), 1e-12);
    }
  }
}

TEST(ScoreAllItems, SingletonAndConstantVocabulary) {
  RlblParams p = oracle::random_rlbl(3, 1, 1, 1, 1, 4);
  const Vec h(3, 0.5);
  const auto one = score_all_items(p.core, h, 0, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], score(p.core, h, 0, 0, 0));
  p = oracle::random_rlbl(3, 1, 1, 6, 1, 4);
  for (Vec& v : p.core.item_vecs) v = p.core.item_vecs[0];
  const auto same = score_all_items(p.core, h, 0, 0);
  for (double y : same) EXPECT_EQ(y, same[0]);
}

TEST(Score, OutOfRangeIdsThrow) {
  const RlblParams p = oracle::random_rlbl(3, 1, 2, 4, 2, 5);
  const Vec h(3);
  EXPECT_THROW(score(p.core, h, 2, 0, 0), IndexError);
  EXPECT_THROW(score(p.core, h, 0, 2, 0), IndexError);
  EXPECT_THROW(score(p.core, h, 0, 0, 4), IndexError);
  EXPECT_THROW(score_all_items(p.core, h, 0, 9), IndexError);
}

TEST(Score, BehaviorMatricesChangeTheRanking) {
  RlblParams p = oracle::random_rlbl(2, 1, 1, 2, 2, 6);
  p.core.user_vecs[0] = Vec(2);
  p.core.item_vecs[0] = Vec::Unit(2, 0);
  p.core.item_vecs[1] = Vec::Unit(2, 1);
  p.core.M[0] = Mat::Identity(2);
  p.core.M[1] = Mat(2, 2);
  p.core.M[1](0, 1) = 1.0;
  p.core.M[1](1, 0) = 1.0;
  const Vec h = Vec::Unit(2, 0);
  const auto a = score_all_items(p.core, h, 0, 0);
  const auto b = score_all_items(p.core, h, 0, 1);
  EXPECT_GT(a[0], a[1]);
  EXPECT_GT(b[1], b[0]);
}

TEST(Init, DeterministicAndWithinRanges) {
  ModelShape s;
  s.d = 8;
  s.n = 3;
  s.n_users = 5;
  s.n_items = 7;
  s.n_behaviors = 2;
  const RlblParams a = init_rlbl(s, 11), b = init_rlbl(s, 11);
  const RlblParams c = init_rlbl(s, 12);
  EXPECT_EQ(a.core.W, b.core.W);
  EXPECT_EQ(a.C, b.C);
  EXPECT_NE(a.core.item_vecs[0], c.core.item_vecs[0]);
  const double half = s.init_scale / std::sqrt(8.0);
  for (const Vec& v : a.core.item_vecs) {
    for (double x : v.values()) EXPECT_LE(std::abs(x), half);
  }
  for (size_t r = 0; r < 8; ++r) {
    for (size_t col = 0; col < 8; ++col) {
      EXPECT_NEAR(a.core.W(r, col), r == col ? 1.0 : 0.0, 0.01);
    }
  }
  EXPECT_NO_THROW(validate(a));
  const TaRlblParams t = init_ta_rlbl(s, GridShape{60.0, 4}, 3);
  EXPECT_EQ(t.grid.boundary_mats.size(), 5u);
  EXPECT_NO_THROW(validate(t));
  s.init_scale = 0.0;
  EXPECT_THROW(init_rlbl(s, 1), ConfigError);
}

TEST(Validate, RejectsShapeMismatches) {
  RlblParams p = oracle::random_rlbl(3, 2, 1, 4, 1, 7);
  p.C.pop_back();
  EXPECT_THROW(validate(p), ConfigError);
  p = oracle::random_rlbl(3, 2, 1, 4, 1, 7);
  p.core.item_vecs[2] = Vec(4);
  EXPECT_THROW(validate(p), ConfigError);
  TaRlblParams q = oracle::random_ta_rlbl(3, 2, 1, 4, 1, 3, 10, 7);
  q.grid.n_bins = 4;
  EXPECT_THROW(validate(q), ConfigError);
  q = oracle::random_ta_rlbl(3, 2, 1, 4, 1, 3, 10, 7);
  q.grid.boundary_mats[1](0, 2) = std::nan("");
  EXPECT_THROW(validate(q), NumericError);
  p = oracle::random_rlbl(3, 2, 1, 4, 1, 7);
  p.core.user_vecs[0][1] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(validate(p), NumericError);
}

}  // namespace
}  // namespace rlbl
