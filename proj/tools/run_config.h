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


#ifndef RLBL_TOOLS_RUN_CONFIG_H_
#define RLBL_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rlbl/corpus.h"
#include "rlbl/evaluation.h"
#include "rlbl/ingestion.h"
#include "rlbl/model.h"
#include "rlbl/snapshot.h"
#include "rlbl/training.h"

namespace rlbl::cli {

// Where events come from: "synthetic" generates them from `synth`,
// "movielens" and "generic" read `path`.
struct DataConfig {
  std::string format = "synthetic";
  std::string path;
  std::vector<std::string> behavior_map;
  GenericFormat generic;
  SynthSpec synth;
  SplitFractions split;
};

struct ModelConfig {
  ModelKind kind = ModelKind::kRlbl;
  size_t d = 8;
  size_t n = 3;
  double init_scale = 1.0;
  GridShape grid;
};

struct RunConfig {
  DataConfig data;
  ModelConfig model;
  TrainConfig train;
  size_t patience = 5;  // epochs without a validation MAP gain
  EvalConfig eval;
  std::vector<std::string> target_behaviors;  // labels; empty means all
  std::string output_dir;
  uint64_t seed = 1;
  size_t threads = 1;
};

// Throws ConfigError on unknown keys, wrong types, out-of-range values and
// data paths that do not exist.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<uint64_t> seed;
  std::optional<size_t> threads;
  std::optional<std::string> out;
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutputRootEnv = "RLBL_OUTPUT_ROOT";

// Reads the config (defaults when no path is given), applies overrides and
// fills in the output directory: --out, then "output_dir", then
// $RLBL_OUTPUT_ROOT, then "rlbl_out". Throws ConfigError or IoError.
RunConfig resolve_config(const Overrides& overrides);

// Loads and splits the configured events. Target behavior labels are
// resolved into config.eval.
Corpus load_corpus(RunConfig& config);

}  // namespace rlbl::cli

#endif  // RLBL_TOOLS_RUN_CONFIG_H_
