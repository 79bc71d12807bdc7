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

#ifndef RLBL_MODEL_H_
#define RLBL_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlbl/corpus.h"
#include "rlbl/linalg.h"
#include "rlbl/time_grid.h"

namespace rlbl {

// Tensors shared by RLBL and TA-RLBL.
struct CoreParams {
  size_t d = 0;  // dimensionality
  size_t n = 0;  // window width
  std::vector<Vec> user_vecs;
  std::vector<Vec> item_vecs;
  Mat W;                 // recurrence over h_{k-n}
  std::vector<Mat> M;    // one per behavior
  Vec u0;                // cold-start hidden state

  size_t n_users() const { return user_vecs.size(); }
  size_t n_items() const { return item_vecs.size(); }
  size_t n_behaviors() const { return M.size(); }
};

// Position-specific window transitions: C[i] multiplies the item i steps
// before the newest one in the window (C[0] is the newest).
struct RlblParams {
  CoreParams core;
  std::vector<Mat> C;
};

// Time-specific window transitions interpolated over a bin grid.
struct TaRlblParams {
  CoreParams core;
  TimeBinGrid grid;
};

struct HiddenState {
  Vec h;
  size_t position = 0;
};

struct ModelShape {
  size_t d = 8;
  size_t n = 3;
  size_t n_users = 0;
  size_t n_items = 0;
  size_t n_behaviors = 1;
  double init_scale = 1.0;  // embedding half-width is init_scale / sqrt(d)
};

struct GridShape {
  double bin_width = 3600.0;
  size_t n_bins = 168;
};

ModelShape shape_of(const Corpus& corpus, size_t d, size_t n);

// Embeddings and u0 ~ U(-a, a) with a = init_scale / sqrt(d); every square
// matrix is identity plus U(-0.01, 0.01) noise. Deterministic in `seed`.
RlblParams init_rlbl(const ModelShape& shape, uint64_t seed);
TaRlblParams init_ta_rlbl(const ModelShape& shape, const GridShape& grid,
                          uint64_t seed);

// Throws ConfigError when tensor shapes disagree with d, n and the grid and
// NumericError for non-finite entries.
void validate(const RlblParams& params);
void validate(const TaRlblParams& params);

// h_k = W h_{k-n} + sum_{i<n} C_i M_{b_{k-i}} r_{v_{k-i}} for k >= n and
// h_k = W u0 + sum_{i<k} C_i M_{b_{k-i}} r_{v_{k-i}} for 1 <= k < n, with
// h_0 = u0. Positions are 1-based. Throws PositionError for k outside
// [0, len(seq)].
HiddenState hidden_at(const RlblParams& params, const UserSequence& seq,
                      size_t k);

// As hidden_at with C_i replaced by the matrix interpolated at
// t_k - t_{k-i} (clamped at zero).
HiddenState hidden_at_ta(const TaRlblParams& params, const UserSequence& seq,
                         size_t k);

// All hidden states h_0 .. h_upto in one pass, sharing the recursion.
std::vector<Vec> hidden_states(const RlblParams& params,
                               const UserSequence& seq, size_t upto);
std::vector<Vec> hidden_states(const TaRlblParams& params,
                               const UserSequence& seq, size_t upto);

// y = (h + u_u)^T M_b r_v. Throws IndexError on out-of-range ids.
double score(const CoreParams& params, const Vec& h, size_t user_id,
             size_t behavior_id, size_t item_id);
inline double score(const RlblParams& p, const HiddenState& h, size_t user,
                    size_t behavior, size_t item) {
  return score(p.core, h.h, user, behavior, item);
}
inline double score_ta(const TaRlblParams& p, const HiddenState& h,
                       size_t user, size_t behavior, size_t item) {
  return score(p.core, h.h, user, behavior, item);
}

// Scores of every item, computed as q = M_b^T (h + u_u) then q . r_v.
std::vector<double> score_all_items(const CoreParams& params, const Vec& h,
                                    size_t user_id, size_t behavior_id);

}  // namespace rlbl

#endif  // RLBL_MODEL_H_
