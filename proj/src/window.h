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

// Window-term helpers shared by the forward pass and BPTT. A window term is
// one item inside the layer ending at position k, together with the
// transition weights that multiply it.

#ifndef RLBL_SRC_WINDOW_H_
#define RLBL_SRC_WINDOW_H_

#include <algorithm>
#include <vector>

#include "rlbl/model.h"

namespace rlbl::detail {

struct WindowTerm {
  size_t position = 0;  // 1-based index of the item, k - offset
  size_t offset = 0;
  InterpWeights weights;  // over C (RLBL) or grid boundaries (TA-RLBL)
};

inline size_t window_size(size_t n, size_t k) { return std::min(n, k); }

inline std::vector<WindowTerm> window_terms(const RlblParams& p,
                                            const UserSequence&, size_t k) {
  std::vector<WindowTerm> terms;
  for (size_t i = 0; i < window_size(p.core.n, k); ++i) {
    terms.push_back(WindowTerm{k - i, i, InterpWeights{i, i, 1.0, 0.0}});
  }
  return terms;
}

inline double time_diff(const UserSequence& seq, size_t newest, size_t older) {
  const Timestamp d = seq.event(newest).timestamp - seq.event(older).timestamp;
  return d > 0 ? static_cast<double>(d) : 0.0;
}

inline std::vector<WindowTerm> window_terms(const TaRlblParams& p,
                                            const UserSequence& seq,
                                            size_t k) {
  std::vector<WindowTerm> terms;
  for (size_t i = 0; i < window_size(p.core.n, k); ++i) {
    terms.push_back(WindowTerm{
        k - i, i, interp_weights(p.grid, time_diff(seq, k, k - i))});
  }
  return terms;
}

inline const std::vector<Mat>& transitions(const RlblParams& p) { return p.C; }
inline std::vector<Mat>& transitions(RlblParams& p) { return p.C; }
inline const std::vector<Mat>& transitions(const TaRlblParams& p) {
  return p.grid.boundary_mats;
}
inline std::vector<Mat>& transitions(TaRlblParams& p) {
  return p.grid.boundary_mats;
}

// T x for the term's (possibly interpolated) transition matrix.
template <typename Params>
Vec apply_transition(const Params& p, const WindowTerm& t, const Vec& x) {
  const auto& mats = transitions(p);
  if (t.weights.upper_weight == 0.0) return matvec(mats[t.weights.lower], x);
  Mat blended = t.weights.lower_weight * mats[t.weights.lower];
  axpy_inplace(t.weights.upper_weight, mats[t.weights.upper], blended);
  return matvec(blended, x);
}

// T^T g.
template <typename Params>
Vec apply_transition_transposed(const Params& p, const WindowTerm& t,
                                const Vec& g) {
  const auto& mats = transitions(p);
  Vec out = matvec_transposed(mats[t.weights.lower], g);
  if (t.weights.upper_weight == 0.0) return out;
  Vec out_lo = t.weights.lower_weight * out;
  axpy_inplace(t.weights.upper_weight,
               matvec_transposed(mats[t.weights.upper], g), out_lo);
  return out_lo;
}

// M_b r_v for the item at `position`.
inline Vec behavior_input(const CoreParams& p, const UserSequence& seq,
                          size_t position) {
  const Event& e = seq.event(position);
  return matvec(p.M[e.behavior_id], p.item_vecs[e.item_id]);
}

// sum over the window ending at k of T_i M_b r_v, added onto `acc`.
template <typename Params>
void add_window(const Params& p, const UserSequence& seq, size_t k, Vec& acc) {
  for (const WindowTerm& t : window_terms(p, seq, k)) {
    axpy_inplace(1.0, apply_transition(p, t, behavior_input(p.core, seq, t.position)),
                 acc);
  }
}

// Chain positions k, k - n, k - 2n, ... that are >= 1, newest first.
inline std::vector<size_t> chain_positions(size_t n, size_t k) {
  std::vector<size_t> chain;
  for (size_t p = k; p >= 1; p = p > n ? p - n : 0) {
    chain.push_back(p);
    if (p <= n) break;
  }
  return chain;
}

}  // namespace rlbl::detail

#endif  // RLBL_SRC_WINDOW_H_
