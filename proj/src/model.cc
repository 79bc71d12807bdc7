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

#include <cmath>
#include <random>
#include <string>

#include "rlbl/errors.h"
#include "window.h"

namespace rlbl {
namespace {

constexpr double kTransitionNoise = 0.01;

Vec uniform_vec(size_t d, double half_width, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  Vec v(d);
  for (double& x : v.values()) x = dist(rng);
  return v;
}

Mat near_identity(size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-kTransitionNoise,
                                              kTransitionNoise);
  Mat m = Mat::Identity(d);
  for (double& x : m.values()) x += dist(rng);
  return m;
}

CoreParams init_core(const ModelShape& s, std::mt19937_64& rng) {
  if (s.d == 0 || s.n == 0) throw ConfigError("d and n must be positive");
  if (!(s.init_scale > 0.0) || !std::isfinite(s.init_scale)) {
    throw ConfigError("init_scale must be positive and finite");
  }
  const double half_width = s.init_scale / std::sqrt(double(s.d));
  CoreParams p;
  p.d = s.d;
  p.n = s.n;
  p.user_vecs.reserve(s.n_users);
  for (size_t u = 0; u < s.n_users; ++u) {
    p.user_vecs.push_back(uniform_vec(s.d, half_width, rng));
  }
  p.item_vecs.reserve(s.n_items);
  for (size_t v = 0; v < s.n_items; ++v) {
    p.item_vecs.push_back(uniform_vec(s.d, half_width, rng));
  }
  p.u0 = uniform_vec(s.d, half_width, rng);
  p.W = near_identity(s.d, rng);
  for (size_t b = 0; b < std::max<size_t>(s.n_behaviors, 1); ++b) {
    p.M.push_back(near_identity(s.d, rng));
  }
  return p;
}

void check_square(const Mat& m, size_t d, const char* name) {
  if (m.rows() != d || m.cols() != d) {
    throw ConfigError(std::string(name) + " must be " + std::to_string(d) +
                      "x" + std::to_string(d));
  }
}

void validate_core(const CoreParams& p) {
  if (p.d == 0 || p.n == 0) throw ConfigError("d and n must be positive");
  if (p.M.empty()) throw ConfigError("at least one behavior matrix required");
  check_square(p.W, p.d, "W");
  for (const Mat& m : p.M) check_square(m, p.d, "M_b");
  if (p.u0.size() != p.d) throw ConfigError("u0 has wrong dimension");
  for (const Vec& v : p.user_vecs) {
    if (v.size() != p.d) throw ConfigError("user vector has wrong dimension");
  }
  for (const Vec& v : p.item_vecs) {
    if (v.size() != p.d) throw ConfigError("item vector has wrong dimension");
  }
  bool finite = all_finite(p.W.values()) && all_finite(p.u0.values());
  for (const Mat& m : p.M) finite = finite && all_finite(m.values());
  for (const Vec& v : p.user_vecs) finite = finite && all_finite(v.values());
  for (const Vec& v : p.item_vecs) finite = finite && all_finite(v.values());
  if (!finite) throw NumericError("non-finite parameter entries");
}

void require_finite(const std::vector<Mat>& mats) {
  for (const Mat& m : mats) {
    if (!all_finite(m.values())) {
      throw NumericError("non-finite parameter entries");
    }
  }
}

void check_position(const UserSequence& seq, size_t k) {
  if (k > seq.size()) {
    throw PositionError("position " + std::to_string(k) +
                        " beyond sequence of length " +
                        std::to_string(seq.size()));
  }
}

template <typename Params>
HiddenState hidden_generic(const Params& p, const UserSequence& seq,
                           size_t k) {
  check_position(seq, k);
  const auto chain = detail::chain_positions(p.core.n, k);
  Vec h = p.core.u0;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Vec next = matvec(p.core.W, h);
    detail::add_window(p, seq, *it, next);
    h = std::move(next);
  }
  return HiddenState{std::move(h), k};
}

template <typename Params>
std::vector<Vec> hidden_states_generic(const Params& p,
                                       const UserSequence& seq, size_t upto) {
  check_position(seq, upto);
  std::vector<Vec> hs;
  hs.reserve(upto + 1);
  hs.push_back(p.core.u0);
  for (size_t k = 1; k <= upto; ++k) {
    Vec next = matvec(p.core.W, hs[k > p.core.n ? k - p.core.n : 0]);
    detail::add_window(p, seq, k, next);
    hs.push_back(std::move(next));
  }
  return hs;
}

void check_indices(const CoreParams& p, size_t user, size_t behavior) {
  if (user >= p.n_users()) {
    throw IndexError("user " + std::to_string(user) + " out of range");
  }
  if (behavior >= p.n_behaviors()) {
    throw IndexError("behavior " + std::to_string(behavior) + " out of range");
  }
}

}  // namespace

ModelShape shape_of(const Corpus& corpus, size_t d, size_t n) {
  ModelShape shape;
  shape.d = d;
  shape.n = n;
  shape.n_users = corpus.n_users();
  shape.n_items = corpus.n_items();
  shape.n_behaviors = std::max<size_t>(corpus.n_behaviors(), 1);
  return shape;
}

RlblParams init_rlbl(const ModelShape& shape, uint64_t seed) {
  std::mt19937_64 rng(seed);
  RlblParams p;
  p.core = init_core(shape, rng);
  for (size_t i = 0; i < shape.n; ++i) p.C.push_back(near_identity(shape.d, rng));
  return p;
}

TaRlblParams init_ta_rlbl(const ModelShape& shape, const GridShape& grid,
                          uint64_t seed) {
  std::mt19937_64 rng(seed);
  TaRlblParams p;
  p.core = init_core(shape, rng);
  p.grid.bin_width = grid.bin_width;
  p.grid.n_bins = grid.n_bins;
  for (size_t i = 0; i <= grid.n_bins; ++i) {
    p.grid.boundary_mats.push_back(near_identity(shape.d, rng));
  }
  p.grid.validate();
  return p;
}

void validate(const RlblParams& p) {
  validate_core(p.core);
  if (p.C.size() != p.core.n) {
    throw ConfigError("need exactly n window matrices");
  }
  for (const Mat& m : p.C) check_square(m, p.core.d, "C_i");
  require_finite(p.C);
}

void validate(const TaRlblParams& p) {
  validate_core(p.core);
  p.grid.validate();
  for (const Mat& m : p.grid.boundary_mats) check_square(m, p.core.d, "T");
  require_finite(p.grid.boundary_mats);
}

HiddenState hidden_at(const RlblParams& params, const UserSequence& seq,
                      size_t k) {
  return hidden_generic(params, seq, k);
}

HiddenState hidden_at_ta(const TaRlblParams& params, const UserSequence& seq,
                         size_t k) {
  return hidden_generic(params, seq, k);
}

std::vector<Vec> hidden_states(const RlblParams& params,
                               const UserSequence& seq, size_t upto) {
  return hidden_states_generic(params, seq, upto);
}

std::vector<Vec> hidden_states(const TaRlblParams& params,
                               const UserSequence& seq, size_t upto) {
  return hidden_states_generic(params, seq, upto);
}

double score(const CoreParams& p, const Vec& h, size_t user, size_t behavior,
             size_t item) {
  check_indices(p, user, behavior);
  if (item >= p.n_items()) {
    throw IndexError("item " + std::to_string(item) + " out of range");
  }
  const Vec q = matvec_transposed(p.M[behavior], h + p.user_vecs[user]);
  return dot(q, p.item_vecs[item]);
}

std::vector<double> score_all_items(const CoreParams& p, const Vec& h,
                                    size_t user, size_t behavior) {
  check_indices(p, user, behavior);
  const Vec q = matvec_transposed(p.M[behavior], h + p.user_vecs[user]);
  std::vector<double> out(p.n_items());
  for (size_t v = 0; v < out.size(); ++v) out[v] = dot(q, p.item_vecs[v]);
  return out;
}

}  // namespace rlbl
