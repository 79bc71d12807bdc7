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

#include "rlbl/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <set>
#include <span>
#include <sstream>

#include "rlbl/errors.h"
#include "window.h"

namespace rlbl {
namespace {

// sigma(-x) = l / (1 + l) with l = exp(-x).
double neg_sigmoid(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// Transition matrices with non-zero weight anywhere on the chain of k.
template <typename Params>
std::set<size_t> touched_transitions(const Params& p, const UserSequence& seq,
                                     size_t k) {
  std::set<size_t> out;
  for (size_t pos : detail::chain_positions(p.core.n, k)) {
    for (const auto& t : detail::window_terms(p, seq, pos)) {
      if (t.weights.lower_weight != 0.0) out.insert(t.weights.lower);
      if (t.weights.upper_weight != 0.0) out.insert(t.weights.upper);
    }
  }
  return out;
}

template <typename Params>
HiddenState forward(const Params& p, const UserSequence& seq, size_t k);

template <>
HiddenState forward(const RlblParams& p, const UserSequence& seq, size_t k) {
  return hidden_at(p, seq, k);
}

template <>
HiddenState forward(const TaRlblParams& p, const UserSequence& seq, size_t k) {
  return hidden_at_ta(p, seq, k);
}

template <typename Params>
double regularization(const Params& p, const UserSequence& seq,
                      const TrainingInstance& inst, const TrainConfig& cfg) {
  const CoreParams& c = p.core;
  double sq = squared_norm(c.user_vecs[inst.user_id].values()) +
              squared_norm(c.item_vecs[inst.positive].values());
  double neg_sq = 0.0;
  for (size_t neg : inst.negatives) {
    neg_sq += squared_norm(c.item_vecs[neg].values());
  }
  if (!inst.negatives.empty()) sq += neg_sq / double(inst.negatives.size());
  if (!cfg.freeze_behavior_mats) {
    sq += squared_norm(c.M[inst.behavior].values());
  }
  sq += squared_norm(c.W.values());
  if (cfg.regularize_u0) sq += squared_norm(c.u0.values());
  const auto& mats = detail::transitions(p);
  for (size_t t : touched_transitions(p, seq, inst.position)) {
    sq += squared_norm(mats[t].values());
  }
  return 0.5 * cfg.lambda * sq;
}

template <typename Params>
double loss_generic(const Params& p, const UserSequence& seq,
                    const TrainingInstance& inst, const TrainConfig& cfg) {
  const HiddenState h = forward(p, seq, inst.position);
  const Vec s = h.h + p.core.user_vecs[inst.user_id];
  const Vec q = matvec_transposed(p.core.M[inst.behavior], s);
  const double y_pos = dot(q, p.core.item_vecs[inst.positive]);
  double loss = 0.0;
  for (size_t neg : inst.negatives) {
    loss += bpr_pair_loss(y_pos, dot(q, p.core.item_vecs[neg]));
  }
  return loss + regularization(p, seq, inst, cfg);
}

template <typename Params>
void bptt_generic(const Params& p, const UserSequence& seq, size_t k,
                  const Vec& dJ_dh, GradientBundle& bundle,
                  size_t truncation) {
  const CoreParams& c = p.core;
  if (k == 0) {
    axpy_inplace(1.0, dJ_dh, bundle.u0);
    return;
  }
  const auto chain = detail::chain_positions(c.n, k);
  const size_t m = chain.size();

  // Forward states along the chain; states[j] is h at chain[j].
  std::vector<Vec> states(m);
  Vec h = c.u0;
  for (size_t j = m; j-- > 0;) {
    Vec next = matvec(c.W, h);
    detail::add_window(p, seq, chain[j], next);
    states[j] = next;
    h = std::move(next);
  }

  const size_t depth = truncation == 0 ? m : std::min(m, truncation);
  Vec g = dJ_dh;
  for (size_t j = 0; j < depth; ++j) {
    const Vec& h_prev = j + 1 < m ? states[j + 1] : c.u0;
    add_outer(1.0, g, h_prev, bundle.W);
    for (const auto& t : detail::window_terms(p, seq, chain[j])) {
      const Event& e = seq.event(t.position);
      const Mat& M_b = c.M[e.behavior_id];
      const Vec& r = c.item_vecs[e.item_id];
      const Vec x = matvec(M_b, r);
      add_outer(t.weights.lower_weight, g, x,
                bundle.transition(t.weights.lower));
      if (t.weights.upper_weight != 0.0) {
        add_outer(t.weights.upper_weight, g, x,
                  bundle.transition(t.weights.upper));
      }
      const Vec z = detail::apply_transition_transposed(p, t, g);
      add_outer(1.0, z, r, bundle.behavior(e.behavior_id));
      axpy_inplace(1.0, matvec_transposed(M_b, z), bundle.item(e.item_id));
    }
    g = matvec_transposed(c.W, g);
  }
  if (depth == m) axpy_inplace(1.0, g, bundle.u0);
}

template <typename Params>
InstanceGradient gradient_generic(const Params& p, const UserSequence& seq,
                                  const TrainingInstance& inst,
                                  const TrainConfig& cfg) {
  const HiddenState h = forward(p, seq, inst.position);
  OutputGradients out = output_gradients(p.core, h.h, inst, cfg.lambda);
  InstanceGradient result{out.loss, std::move(out.bundle)};
  bptt_generic(p, seq, inst.position, out.dJ_dh, result.bundle,
               cfg.bptt_truncation);

  const CoreParams& c = p.core;
  const double lambda = cfg.lambda;
  axpy_inplace(lambda, c.W, result.bundle.W);
  if (cfg.regularize_u0) axpy_inplace(lambda, c.u0, result.bundle.u0);
  const auto& mats = detail::transitions(p);
  for (size_t t : touched_transitions(p, seq, inst.position)) {
    axpy_inplace(lambda, mats[t], result.bundle.transition(t));
  }
  if (cfg.freeze_behavior_mats) result.bundle.behaviors.clear();
  result.loss += regularization(p, seq, inst, cfg);
  return result;
}

template <typename Params>
void apply_generic(Params& p, const GradientBundle& g, double eta) {
  CoreParams& c = p.core;
  for (const auto& [id, v] : g.users) axpy_inplace(-eta, v, c.user_vecs[id]);
  for (const auto& [id, v] : g.items) axpy_inplace(-eta, v, c.item_vecs[id]);
  for (const auto& [id, m] : g.behaviors) axpy_inplace(-eta, m, c.M[id]);
  auto& mats = detail::transitions(p);
  for (const auto& [id, m] : g.transitions) axpy_inplace(-eta, m, mats[id]);
  axpy_inplace(-eta, g.W, c.W);
  axpy_inplace(-eta, g.u0, c.u0);
}

// Current values of every tensor the bundle touches.
template <typename Params>
GradientBundle save_touched(const Params& p, const GradientBundle& g) {
  const CoreParams& c = p.core;
  GradientBundle saved;
  for (const auto& kv : g.users) saved.users[kv.first] = c.user_vecs[kv.first];
  for (const auto& kv : g.items) saved.items[kv.first] = c.item_vecs[kv.first];
  for (const auto& kv : g.behaviors) saved.behaviors[kv.first] = c.M[kv.first];
  const auto& mats = detail::transitions(p);
  for (const auto& kv : g.transitions) {
    saved.transitions[kv.first] = mats[kv.first];
  }
  saved.W = c.W;
  saved.u0 = c.u0;
  return saved;
}

template <typename Params>
void restore_touched(Params& p, const GradientBundle& saved) {
  CoreParams& c = p.core;
  for (const auto& [id, v] : saved.users) c.user_vecs[id] = v;
  for (const auto& [id, v] : saved.items) c.item_vecs[id] = v;
  for (const auto& [id, m] : saved.behaviors) c.M[id] = m;
  auto& mats = detail::transitions(p);
  for (const auto& [id, m] : saved.transitions) mats[id] = m;
  c.W = saved.W;
  c.u0 = saved.u0;
}

template <typename Params>
EpochReport epoch_generic(Params& p, const Corpus& corpus,
                          const TrainConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<size_t> users(corpus.n_users());
  std::iota(users.begin(), users.end(), size_t{0});
  std::shuffle(users.begin(), users.end(), rng);

  EpochReport report;
  double loss_sum = 0.0;
  double lr_sum = 0.0;
  size_t lr_count = 0;
  report.lr_min = cfg.learning_rate;
  for (size_t user : users) {
    const UserSequence& seq = corpus.sequence(user);
    for (size_t k : corpus.prediction_positions(user, Segment::kTrain)) {
      TrainingInstance inst = make_instance(seq, k);
      for (size_t j = 0; j < cfg.negatives_per_positive; ++j) {
        inst.negatives.push_back(
            sample_negative(corpus.n_items(), inst.positive, rng));
      }
      InstanceGradient grad = gradient_generic(p, seq, inst, cfg);
      if (!std::isfinite(grad.loss) || !grad.bundle.all_finite()) {
        throw NumericError("non-finite loss at user " +
                           corpus.user_ids()[user] + " position " +
                           std::to_string(k));
      }
      loss_sum += grad.loss;
      ++report.n_instances;
      if (cfg.grad_clip_norm > 0.0) {
        const double norm = std::sqrt(grad.bundle.squared_norm());
        if (norm > cfg.grad_clip_norm) grad.bundle.scale(cfg.grad_clip_norm / norm);
      }

      double eta = cfg.learning_rate;
      bool accepted = true;
      if (cfg.lr_policy == LrPolicy::kFixed) {
        apply_generic(p, grad.bundle, eta);
      } else {
        const GradientBundle saved = save_touched(p, grad.bundle);
        accepted = false;
        for (int attempt = 0; attempt <= kMaxBacktracks; ++attempt) {
          apply_generic(p, grad.bundle, eta);
          const double after = loss_generic(p, seq, inst, cfg);
          if (after <= grad.loss) {
            accepted = true;
            break;
          }
          restore_touched(p, saved);
          eta *= 0.5;
        }
      }
      if (accepted) {
        lr_sum += eta;
        ++lr_count;
        report.lr_min = std::min(report.lr_min, eta);
      } else {
        ++report.n_skipped;
      }
    }
  }
  if (report.n_instances > 0) {
    report.mean_loss = loss_sum / double(report.n_instances);
  }
  report.lr_mean = lr_count > 0 ? lr_sum / double(lr_count) : 0.0;
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

// A named parameter tensor split into blocks (one vector or matrix each).
struct TensorBlocks {
  std::string name;
  std::vector<std::span<double>> blocks;
  // Analytic gradient for (block, coord), or nullopt when the block is not in
  // the bundle.
  std::function<const double*(const GradientBundle&, size_t)> block_grad;
};

template <typename Params>
std::vector<TensorBlocks> tensor_blocks(Params& p, const TrainConfig& cfg,
                                        const char* transition_name) {
  CoreParams& c = p.core;
  std::vector<TensorBlocks> out;

  TensorBlocks users{"user_vecs", {}, [](const GradientBundle& g, size_t b) {
                       auto it = g.users.find(b);
                       return it == g.users.end() ? nullptr
                                                  : it->second.values().data();
                     }};
  for (Vec& v : c.user_vecs) users.blocks.push_back(v.values());
  out.push_back(std::move(users));

  TensorBlocks items{"item_vecs", {}, [](const GradientBundle& g, size_t b) {
                       auto it = g.items.find(b);
                       return it == g.items.end() ? nullptr
                                                  : it->second.values().data();
                     }};
  for (Vec& v : c.item_vecs) items.blocks.push_back(v.values());
  out.push_back(std::move(items));

  out.push_back(TensorBlocks{"W", {c.W.values()},
                             [](const GradientBundle& g, size_t) {
                               return g.W.values().data();
                             }});

  TensorBlocks trans{transition_name, {}, [](const GradientBundle& g, size_t b) {
                       auto it = g.transitions.find(b);
                       return it == g.transitions.end()
                                  ? nullptr
                                  : it->second.values().data();
                     }};
  for (Mat& m : detail::transitions(p)) trans.blocks.push_back(m.values());
  out.push_back(std::move(trans));

  if (!cfg.freeze_behavior_mats) {
    TensorBlocks behaviors{"M", {}, [](const GradientBundle& g, size_t b) {
                             auto it = g.behaviors.find(b);
                             return it == g.behaviors.end()
                                        ? nullptr
                                        : it->second.values().data();
                           }};
    for (Mat& m : c.M) behaviors.blocks.push_back(m.values());
    out.push_back(std::move(behaviors));
  }

  out.push_back(TensorBlocks{"u0", {c.u0.values()},
                             [](const GradientBundle& g, size_t) {
                               return g.u0.values().data();
                             }});
  return out;
}

constexpr double kRelErrorFloor = 1e-6;
constexpr size_t kUntouchedCoords = 4;

template <typename Params>
GradCheckReport gradcheck_generic(const Params& original,
                                  const UserSequence& seq,
                                  const TrainingInstance& inst,
                                  const TrainConfig& cfg,
                                  const GradCheckOptions& opt,
                                  const char* transition_name) {
  if (!(opt.step > 0.0)) throw ConfigError("gradient check step must be > 0");
  Params p = original;
  InstanceGradient analytic = gradient_generic(p, seq, inst, cfg);
  if (opt.tamper) opt.tamper(analytic.bundle);

  Rng rng(opt.seed);
  GradCheckReport report;
  report.passed = true;
  for (TensorBlocks& tensor : tensor_blocks(p, cfg, transition_name)) {
    // (block, coord) pairs: from blocks the analytic gradient touches, plus
    // a few anywhere in the tensor.
    std::vector<std::pair<size_t, size_t>> touched;
    std::vector<std::pair<size_t, size_t>> all;
    for (size_t b = 0; b < tensor.blocks.size(); ++b) {
      const bool in_bundle = tensor.block_grad(analytic.bundle, b) != nullptr;
      for (size_t j = 0; j < tensor.blocks[b].size(); ++j) {
        all.emplace_back(b, j);
        if (in_bundle) touched.emplace_back(b, j);
      }
    }
    std::shuffle(touched.begin(), touched.end(), rng);
    std::shuffle(all.begin(), all.end(), rng);
    if (touched.size() > opt.coords_per_tensor) {
      touched.resize(opt.coords_per_tensor);
    }
    for (size_t i = 0; i < std::min(kUntouchedCoords, all.size()); ++i) {
      touched.push_back(all[i]);
    }

    TensorCheck check{tensor.name, 0, 0.0};
    for (const auto& [b, j] : touched) {
      double& theta = tensor.blocks[b][j];
      const double saved = theta;
      theta = saved + opt.step;
      const double up = loss_generic(p, seq, inst, cfg);
      theta = saved - opt.step;
      const double down = loss_generic(p, seq, inst, cfg);
      theta = saved;
      const double numeric = (up - down) / (2.0 * opt.step);
      const double* g = tensor.block_grad(analytic.bundle, b);
      const double a = g == nullptr ? 0.0 : g[j];
      const double denom =
          std::max({std::abs(a), std::abs(numeric), kRelErrorFloor});
      check.max_rel_error =
          std::max(check.max_rel_error, std::abs(a - numeric) / denom);
      ++check.coords_checked;
    }
    report.max_rel_error = std::max(report.max_rel_error, check.max_rel_error);
    if (check.max_rel_error > opt.tolerance) report.passed = false;
    report.tensors.push_back(std::move(check));
  }
  return report;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be finite and >= 0");
  }
  if (negatives_per_positive < 1) {
    throw ConfigError("negatives_per_positive must be >= 1");
  }
  if (!(grad_clip_norm >= 0.0) || !std::isfinite(grad_clip_norm)) {
    throw ConfigError("grad_clip_norm must be finite and >= 0");
  }
}

TrainingInstance make_instance(const UserSequence& seq, size_t position) {
  if (position < 1 || position >= seq.size()) {
    throw PositionError("no target after position " + std::to_string(position));
  }
  const Event& target = seq.event(position + 1);
  return TrainingInstance{seq.user_id, position, target.behavior_id,
                          target.item_id, {}};
}

GradientBundle GradientBundle::Zero(size_t d) {
  GradientBundle g;
  g.W = Mat(d, d);
  g.u0 = Vec(d);
  return g;
}

Vec& GradientBundle::user(size_t id) {
  return users.try_emplace(id, Vec(u0.size())).first->second;
}

Vec& GradientBundle::item(size_t id) {
  return items.try_emplace(id, Vec(u0.size())).first->second;
}

Mat& GradientBundle::behavior(size_t id) {
  return behaviors.try_emplace(id, Mat(W.rows(), W.cols())).first->second;
}

Mat& GradientBundle::transition(size_t id) {
  return transitions.try_emplace(id, Mat(W.rows(), W.cols())).first->second;
}

bool GradientBundle::all_finite() const {
  for (const auto& kv : users) {
    if (!rlbl::all_finite(kv.second.values())) return false;
  }
  for (const auto& kv : items) {
    if (!rlbl::all_finite(kv.second.values())) return false;
  }
  for (const auto& kv : behaviors) {
    if (!rlbl::all_finite(kv.second.values())) return false;
  }
  for (const auto& kv : transitions) {
    if (!rlbl::all_finite(kv.second.values())) return false;
  }
  return rlbl::all_finite(W.values()) && rlbl::all_finite(u0.values());
}

double GradientBundle::squared_norm() const {
  double sq = rlbl::squared_norm(W.values()) + rlbl::squared_norm(u0.values());
  for (const auto& kv : users) sq += rlbl::squared_norm(kv.second.values());
  for (const auto& kv : items) sq += rlbl::squared_norm(kv.second.values());
  for (const auto& kv : behaviors) sq += rlbl::squared_norm(kv.second.values());
  for (const auto& kv : transitions) {
    sq += rlbl::squared_norm(kv.second.values());
  }
  return sq;
}

void GradientBundle::scale(double factor) {
  auto mul = [factor](std::span<double> xs) {
    for (double& x : xs) x *= factor;
  };
  mul(W.values());
  mul(u0.values());
  for (auto& kv : users) mul(kv.second.values());
  for (auto& kv : items) mul(kv.second.values());
  for (auto& kv : behaviors) mul(kv.second.values());
  for (auto& kv : transitions) mul(kv.second.values());
}

double bpr_pair_loss(double y_pos, double y_neg, double reg) {
  return softplus(-(y_pos - y_neg)) + reg;
}

size_t sample_negative(size_t n_items, size_t positive, Rng& rng) {
  if (n_items < 2) throw SamplingError("need at least two items");
  std::uniform_int_distribution<size_t> dist(0, n_items - 2);
  const size_t draw = dist(rng);
  return draw >= positive ? draw + 1 : draw;
}

size_t sample_negative(const Corpus& corpus, size_t user_id, size_t position,
                       size_t /*behavior*/, Rng& rng) {
  const UserSequence& seq = corpus.sequence(user_id);
  return sample_negative(corpus.n_items(),
                         seq.event(position + 1).item_id, rng);
}

OutputGradients output_gradients(const CoreParams& p, const Vec& h_k,
                                  const TrainingInstance& inst,
                                  double lambda) {
  OutputGradients out;
  out.bundle = GradientBundle::Zero(p.d);
  out.dJ_dh = Vec(p.d);
  const Mat& M_b = p.M[inst.behavior];
  const Vec& r_pos = p.item_vecs[inst.positive];
  const Vec s = h_k + p.user_vecs[inst.user_id];
  const Vec q = matvec_transposed(M_b, s);
  const double y_pos = dot(q, r_pos);

  Vec& du = out.bundle.user(inst.user_id);
  for (size_t neg : inst.negatives) {
    const Vec& r_neg = p.item_vecs[neg];
    const double margin = y_pos - dot(q, r_neg);
    out.loss += softplus(-margin);
    const double c = neg_sigmoid(margin);
    const Vec diff = r_neg - r_pos;
    const Vec m_diff = matvec(M_b, diff);
    axpy_inplace(c, m_diff, du);
    axpy_inplace(c, m_diff, out.dJ_dh);
    axpy_inplace(-c, q, out.bundle.item(inst.positive));
    axpy_inplace(c, q, out.bundle.item(neg));
    add_outer(c, s, diff, out.bundle.behavior(inst.behavior));
  }

  axpy_inplace(lambda, p.user_vecs[inst.user_id], du);
  axpy_inplace(lambda, r_pos, out.bundle.item(inst.positive));
  const double neg_lambda = lambda / double(inst.negatives.size());
  for (size_t neg : inst.negatives) {
    axpy_inplace(neg_lambda, p.item_vecs[neg], out.bundle.item(neg));
  }
  axpy_inplace(lambda, M_b, out.bundle.behavior(inst.behavior));
  return out;
}

void bptt_backward(const RlblParams& params, const UserSequence& seq, size_t k,
                   const Vec& dJ_dh, GradientBundle& bundle,
                   size_t truncation) {
  bptt_generic(params, seq, k, dJ_dh, bundle, truncation);
}

void bptt_backward(const TaRlblParams& params, const UserSequence& seq,
                   size_t k, const Vec& dJ_dh, GradientBundle& bundle,
                   size_t truncation) {
  bptt_generic(params, seq, k, dJ_dh, bundle, truncation);
}

double instance_loss(const RlblParams& params, const UserSequence& seq,
                     const TrainingInstance& instance,
                     const TrainConfig& config) {
  return loss_generic(params, seq, instance, config);
}

double instance_loss(const TaRlblParams& params, const UserSequence& seq,
                     const TrainingInstance& instance,
                     const TrainConfig& config) {
  return loss_generic(params, seq, instance, config);
}

InstanceGradient instance_gradient(const RlblParams& params,
                                   const UserSequence& seq,
                                   const TrainingInstance& instance,
                                   const TrainConfig& config) {
  return gradient_generic(params, seq, instance, config);
}

InstanceGradient instance_gradient(const TaRlblParams& params,
                                   const UserSequence& seq,
                                   const TrainingInstance& instance,
                                   const TrainConfig& config) {
  return gradient_generic(params, seq, instance, config);
}

void apply_update(RlblParams& params, const GradientBundle& g, double eta) {
  apply_generic(params, g, eta);
}

void apply_update(TaRlblParams& params, const GradientBundle& g, double eta) {
  apply_generic(params, g, eta);
}

EpochReport sgd_epoch(RlblParams& params, const Corpus& corpus,
                      const TrainConfig& config, Rng& rng) {
  return epoch_generic(params, corpus, config, rng);
}

EpochReport sgd_epoch(TaRlblParams& params, const Corpus& corpus,
                      const TrainConfig& config, Rng& rng) {
  return epoch_generic(params, corpus, config, rng);
}

std::string epoch_log_header() {
  return "epoch\tmean_loss\tinstances\tskipped\tlr_mean\tlr_min\twall_seconds";
}

std::string epoch_log_line(const EpochReport& r) {
  std::ostringstream os;
  os << std::setprecision(10) << r.epoch << '\t' << r.mean_loss << '\t'
     << r.n_instances << '\t' << r.n_skipped << '\t' << r.lr_mean << '\t'
     << r.lr_min << '\t' << std::setprecision(4) << r.wall_seconds;
  return os.str();
}

GradCheckReport gradient_check(const RlblParams& params,
                               const UserSequence& seq,
                               const TrainingInstance& instance,
                               const TrainConfig& config,
                               const GradCheckOptions& options) {
  return gradcheck_generic(params, seq, instance, config, options, "C");
}

GradCheckReport gradient_check(const TaRlblParams& params,
                               const UserSequence& seq,
                               const TrainingInstance& instance,
                               const TrainConfig& config,
                               const GradCheckOptions& options) {
  return gradcheck_generic(params, seq, instance, config, options, "T");
}

}  // namespace rlbl
