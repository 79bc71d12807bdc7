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


#include "run_config.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "rlbl/errors.h"

namespace rlbl::cli {
namespace {

using nlohmann::json;

// Reads the members of one JSON object, remembering which keys were used so
// leftovers can be reported as typos.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where)
      : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path(key) + " has the wrong type");
    }
  }

  std::optional<ObjectReader> child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return std::nullopt;
    return ObjectReader(*it, path(key));
  }

  std::string path(const char* key) const {
    return where_.empty() ? key : where_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError("unknown config key '" + path(key.c_str()) + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

char parse_delimiter(const std::string& s) {
  if (s.size() != 1) {
    throw ConfigError("data.delimiter must be a single character");
  }
  return s[0];
}

LrPolicy parse_policy(const std::string& s) {
  if (s == "backtracking") return LrPolicy::kBacktracking;
  if (s == "fixed") return LrPolicy::kFixed;
  throw ConfigError("train.lr_policy must be 'backtracking' or 'fixed'");
}

Segment parse_segment(const std::string& s) {
  if (s == "test") return Segment::kTest;
  if (s == "validation") return Segment::kValidation;
  if (s == "train") return Segment::kTrain;
  throw ConfigError("eval.segment must be 'train', 'validation' or 'test'");
}

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::kTrain: return "train";
    case Segment::kValidation: return "validation";
    case Segment::kTest: return "test";
  }
  return "test";
}

void read_data(ObjectReader& r, DataConfig& d) {
  r.get("format", d.format);
  r.get("path", d.path);
  r.get("behavior_map", d.behavior_map);
  std::string delim(1, d.generic.delimiter);
  r.get("delimiter", delim);
  d.generic.delimiter = parse_delimiter(delim);
  r.get("header", d.generic.header);
  r.get("time_scale", d.generic.time_scale);
  r.get("strict", d.generic.strict);
  if (auto c = r.child("columns")) {
    c->get("user", d.generic.user_col);
    c->get("item", d.generic.item_col);
    c->get("behavior", d.generic.behavior_col);
    c->get("time", d.generic.time_col);
    c->finish();
  }
  if (auto s = r.child("split")) {
    s->get("train", d.split.train);
    s->get("validation", d.split.validation);
    s->finish();
  }
  if (auto s = r.child("synth")) {
    SynthSpec& sp = d.synth;
    s->get("n_users", sp.n_users);
    s->get("n_items", sp.n_items);
    s->get("n_behaviors", sp.n_behaviors);
    s->get("min_len", sp.min_len);
    s->get("max_len", sp.max_len);
    s->get("seed", sp.seed);
    s->get("markov_strength", sp.markov_strength);
    s->get("cycle_period", sp.cycle_period);
    s->get("behavior_flip_prob", sp.behavior_flip_prob);
    s->get("gap_mean_seconds", sp.gap_mean_seconds);
    s->get("start_time", sp.start_time);
    s->finish();
  }
  r.finish();
}

void validate(RunConfig& c) {
  const std::string& f = c.data.format;
  if (f != "synthetic" && f != "movielens" && f != "generic") {
    throw ConfigError("data.format must be 'synthetic', 'movielens' or 'generic'");
  }
  if (f == "synthetic") {
    c.data.synth.validate();
  } else {
    if (c.data.path.empty()) throw ConfigError("data.path is required for " + f);
    if (!std::filesystem::exists(c.data.path)) {
      throw ConfigError("data.path '" + c.data.path + "' does not exist");
    }
  }
  if (c.data.generic.time_scale < 1) {
    throw ConfigError("data.time_scale must be >= 1");
  }
  if (c.model.d < 1) throw ConfigError("model.d must be >= 1");
  if (c.model.n < 1) throw ConfigError("model.n must be >= 1");
  if (!(c.model.grid.bin_width > 0.0) || c.model.grid.n_bins < 1) {
    throw ConfigError("model.bin_width must be > 0 and model.n_bins >= 1");
  }
  if (c.model.kind == ModelKind::kLinearRnn) {
    // The linear recurrent network is RLBL with a one-item window and the
    // behavior matrices pinned at identity.
    c.model.n = 1;
    c.train.freeze_behavior_mats = true;
  }
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  c.train.rng_seed = c.seed;
  c.eval.threads = c.threads;
  c.train.validate();
  c.eval.validate();
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  ObjectReader root(j, "");
  if (auto d = root.child("data")) read_data(*d, c.data);
  if (auto m = root.child("model")) {
    std::string kind = model_kind_name(c.model.kind);
    m->get("kind", kind);
    c.model.kind = parse_model_kind(kind);
    m->get("d", c.model.d);
    m->get("n", c.model.n);
    m->get("init_scale", c.model.init_scale);
    m->get("bin_width", c.model.grid.bin_width);
    m->get("n_bins", c.model.grid.n_bins);
    m->finish();
  }
  if (auto t = root.child("train")) {
    TrainConfig& tc = c.train;
    t->get("lambda", tc.lambda);
    t->get("learning_rate", tc.learning_rate);
    std::string policy =
        tc.lr_policy == LrPolicy::kFixed ? "fixed" : "backtracking";
    t->get("lr_policy", policy);
    tc.lr_policy = parse_policy(policy);
    t->get("negatives", tc.negatives_per_positive);
    t->get("epochs", tc.epochs);
    t->get("bptt_truncation", tc.bptt_truncation);
    t->get("regularize_u0", tc.regularize_u0);
    t->get("freeze_behavior_mats", tc.freeze_behavior_mats);
    t->get("grad_clip_norm", tc.grad_clip_norm);
    t->get("patience", c.patience);
    t->finish();
  }
  if (auto e = root.child("eval")) {
    e->get("cutoffs", c.eval.cutoffs);
    e->get("target_behaviors", c.target_behaviors);
    e->get("exclude_seen", c.eval.exclude_seen);
    e->get("bucket_medium", c.eval.thresholds.medium);
    e->get("bucket_long", c.eval.thresholds.long_);
    std::string segment = segment_name(c.eval.segment);
    e->get("segment", segment);
    c.eval.segment = parse_segment(segment);
    e->finish();
  }
  root.get("output_dir", c.output_dir);
  root.get("seed", c.seed);
  root.get("threads", c.threads);
  root.finish();
  validate(c);
  return c;
}

json config_to_json(const RunConfig& c) {
  const GenericFormat& g = c.data.generic;
  const SynthSpec& s = c.data.synth;
  json j;
  j["data"] = {
      {"format", c.data.format},
      {"path", c.data.path},
      {"behavior_map", c.data.behavior_map},
      {"delimiter", std::string(1, g.delimiter)},
      {"header", g.header},
      {"time_scale", g.time_scale},
      {"strict", g.strict},
      {"columns",
       {{"user", g.user_col},
        {"item", g.item_col},
        {"behavior", g.behavior_col},
        {"time", g.time_col}}},
      {"split",
       {{"train", c.data.split.train},
        {"validation", c.data.split.validation}}},
      {"synth",
       {{"n_users", s.n_users},
        {"n_items", s.n_items},
        {"n_behaviors", s.n_behaviors},
        {"min_len", s.min_len},
        {"max_len", s.max_len},
        {"seed", s.seed},
        {"markov_strength", s.markov_strength},
        {"cycle_period", s.cycle_period},
        {"behavior_flip_prob", s.behavior_flip_prob},
        {"gap_mean_seconds", s.gap_mean_seconds},
        {"start_time", s.start_time}}},
  };
  j["model"] = {
      {"kind", model_kind_name(c.model.kind)},
      {"d", c.model.d},
      {"n", c.model.n},
      {"init_scale", c.model.init_scale},
      {"bin_width", c.model.grid.bin_width},
      {"n_bins", c.model.grid.n_bins},
  };
  j["train"] = {
      {"lambda", c.train.lambda},
      {"learning_rate", c.train.learning_rate},
      {"lr_policy",
       c.train.lr_policy == LrPolicy::kFixed ? "fixed" : "backtracking"},
      {"negatives", c.train.negatives_per_positive},
      {"epochs", c.train.epochs},
      {"bptt_truncation", c.train.bptt_truncation},
      {"regularize_u0", c.train.regularize_u0},
      {"freeze_behavior_mats", c.train.freeze_behavior_mats},
      {"grad_clip_norm", c.train.grad_clip_norm},
      {"patience", c.patience},
  };
  j["eval"] = {
      {"cutoffs", c.eval.cutoffs},
      {"target_behaviors", c.target_behaviors},
      {"exclude_seen", c.eval.exclude_seen},
      {"bucket_medium", c.eval.thresholds.medium},
      {"bucket_long", c.eval.thresholds.long_},
      {"segment", segment_name(c.eval.segment)},
  };
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

RunConfig resolve_config(const Overrides& o) {
  json j = json::object();
  if (o.config_path) {
    std::ifstream in(*o.config_path);
    if (!in) throw IoError("cannot open config '" + *o.config_path + "'");
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config '" + *o.config_path + "': " + e.what());
    }
  }
  if (o.seed) j["seed"] = *o.seed;
  if (o.threads) j["threads"] = *o.threads;
  RunConfig c = config_from_json(j);
  if (o.out) {
    c.output_dir = *o.out;
  } else if (c.output_dir.empty()) {
    const char* root = std::getenv(kOutputRootEnv);
    c.output_dir = root && *root ? root : "rlbl_out";
  }
  return c;
}

Corpus load_corpus(RunConfig& c) {
  ParseResult parsed;
  if (c.data.format == "synthetic") {
    parsed.events = generate_synthetic(c.data.synth);
  } else if (c.data.format == "movielens") {
    parsed = parse_movielens(c.data.path);
  } else {
    parsed = parse_generic(c.data.path, c.data.generic, c.data.behavior_map);
  }
  std::vector<std::string> labels = c.data.behavior_map;
  if (labels.empty()) labels = parsed.behavior_labels;
  Corpus corpus = build_corpus(parsed.events, c.data.split, labels);
  c.eval.target_behaviors.clear();
  for (const std::string& label : c.target_behaviors) {
    auto id = corpus.find_behavior(label);
    if (!id) throw ConfigError("unknown target behavior '" + label + "'");
    c.eval.target_behaviors.insert(*id);
  }
  return corpus;
}

}  // namespace rlbl::cli
