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

#ifndef RLBL_TRAINING_H_
#define RLBL_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rlbl/corpus.h"
#include "rlbl/linalg.h"
#include "rlbl/model.h"

namespace rlbl {

using Rng = std::mt19937_64;

enum class LrPolicy { kFixed, kBacktracking };

struct TrainConfig {
  double lambda = 0.01;
  double learning_rate = 0.05;
  LrPolicy lr_policy = LrPolicy::kBacktracking;
  size_t negatives_per_positive = 1;
  size_t epochs = 30;
  uint64_t rng_seed = 1;
  size_t bptt_truncation = 0;  // max chain layers; 0 follows the full chain
  bool regularize_u0 = true;
  // Keeps every M_b fixed (identity for the linear-RNN and single-behavior
  // comparisons).
  bool freeze_behavior_mats = false;
  // Rescales an instance gradient whose global L2 norm exceeds this value;
  // 0 disables clipping.
  double grad_clip_norm = 0.0;

  // Throws ConfigError.
  void validate() const;
};

// Halvings tried by the backtracking policy before an update is skipped.
inline constexpr int kMaxBacktracks = 8;

// Predict event k + 1 (behavior, positive item) from h_k, against sampled
// negatives.
struct TrainingInstance {
  size_t user_id = 0;
  size_t position = 0;
  size_t behavior = 0;
  size_t positive = 0;
  std::vector<size_t> negatives;
};

TrainingInstance make_instance(const UserSequence& seq, size_t position);

// Sparse in users/items/behaviors/transitions, dense in W and u0.
struct GradientBundle {
  std::map<size_t, Vec> users;
  std::map<size_t, Vec> items;
  std::map<size_t, Mat> behaviors;
  std::map<size_t, Mat> transitions;  // C_i or time-grid boundary matrices
  Mat W;
  Vec u0;

  static GradientBundle Zero(size_t d);
  Vec& user(size_t id);
  Vec& item(size_t id);
  Mat& behavior(size_t id);
  Mat& transition(size_t id);
  bool all_finite() const;
  double squared_norm() const;
  void scale(double factor);
};

// ln(1 + exp(-(y_pos - y_neg))) + reg, evaluated as a softplus so large
// margins of either sign neither overflow nor lose the tail.
double bpr_pair_loss(double y_pos, double y_neg, double reg = 0.0);

// Uniform over items other than `positive`. Throws SamplingError when
// n_items < 2.
size_t sample_negative(size_t n_items, size_t positive, Rng& rng);
size_t sample_negative(const Corpus& corpus, size_t user_id, size_t position,
                       size_t behavior, Rng& rng);

struct OutputGradients {
  double loss = 0.0;  // data term only
  Vec dJ_dh;
  GradientBundle bundle;  // u_u, r_v, r_v', M_b including lambda terms
};

// Output-layer derivatives of the BPR objective for one instance given h_k.
// The lambda term of each sampled negative is weighted 1/|negatives|.
OutputGradients output_gradients(const CoreParams& params, const Vec& h_k,
                                 const TrainingInstance& instance,
                                 double lambda);

// Accumulates dJ/dW, dJ/dC_i (or the two bracketing grid matrices),
// dJ/dM_b, dJ/dr and dJ/du0 down the chain k, k - n, ... into `bundle`.
void bptt_backward(const RlblParams& params, const UserSequence& seq,
                   size_t k, const Vec& dJ_dh, GradientBundle& bundle,
                   size_t truncation = 0);
void bptt_backward(const TaRlblParams& params, const UserSequence& seq,
                   size_t k, const Vec& dJ_dh, GradientBundle& bundle,
                   size_t truncation = 0);

// Full per-instance objective: BPR data term over every negative plus
// lambda/2 times the squared norms of u_u, r_v, every r_v', the target M_b,
// W, u0 and each transition matrix the instance's chain uses.
double instance_loss(const RlblParams& params, const UserSequence& seq,
                     const TrainingInstance& instance,
                     const TrainConfig& config);
double instance_loss(const TaRlblParams& params, const UserSequence& seq,
                     const TrainingInstance& instance,
                     const TrainConfig& config);

struct InstanceGradient {
  double loss = 0.0;
  GradientBundle bundle;
};

InstanceGradient instance_gradient(const RlblParams& params,
                                   const UserSequence& seq,
                                   const TrainingInstance& instance,
                                   const TrainConfig& config);
InstanceGradient instance_gradient(const TaRlblParams& params,
                                   const UserSequence& seq,
                                   const TrainingInstance& instance,
                                   const TrainConfig& config);

// theta <- theta - eta * g for every tensor present in the bundle.
void apply_update(RlblParams& params, const GradientBundle& g, double eta);
void apply_update(TaRlblParams& params, const GradientBundle& g, double eta);

struct EpochReport {
  size_t epoch = 0;
  double mean_loss = 0.0;
  size_t n_instances = 0;
  size_t n_skipped = 0;
  double lr_mean = 0.0;
  double lr_min = 0.0;
  double wall_seconds = 0.0;
};

// One pass over every training position, users in shuffled order. Throws
// NumericError on a non-finite loss.
EpochReport sgd_epoch(RlblParams& params, const Corpus& corpus,
                      const TrainConfig& config, Rng& rng);
EpochReport sgd_epoch(TaRlblParams& params, const Corpus& corpus,
                      const TrainConfig& config, Rng& rng);

// Tab-separated epoch log.
std::string epoch_log_header();
std::string epoch_log_line(const EpochReport& r);

struct TensorCheck {
  std::string name;
  size_t coords_checked = 0;
  double max_rel_error = 0.0;
};

struct GradCheckReport {
  std::vector<TensorCheck> tensors;
  double max_rel_error = 0.0;
  bool passed = false;
};

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  size_t coords_per_tensor = 64;
  uint64_t seed = 7;
  // Test hook: mutates the analytic bundle before comparison.
  std::function<void(GradientBundle&)> tamper;
};

// Central differences (J(theta + step) - J(theta - step)) / (2 step) on
// sampled coordinates of each tensor, against instance_gradient. Relative
// error is |a - f| / max(|a|, |f|, 1e-6).
GradCheckReport gradient_check(const RlblParams& params,
                               const UserSequence& seq,
                               const TrainingInstance& instance,
                               const TrainConfig& config,
                               const GradCheckOptions& options = {});
GradCheckReport gradient_check(const TaRlblParams& params,
                               const UserSequence& seq,
                               const TrainingInstance& instance,
                               const TrainConfig& config,
                               const GradCheckOptions& options = {});

}  // namespace rlbl

#endif  // RLBL_TRAINING_H_
