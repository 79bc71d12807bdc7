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


// rlbl: train, evaluate and query multi-behavior sequential recommenders.

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using namespace rlbl::cli;

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run config")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Run seed (generator seed for gen-synth)");
  cmd->add_option("--threads", o.threads, "Evaluation threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output directory (file for gen-synth)");
}

int run(int argc, char** argv) {
  CLI::App app{"Recurrent log-bilinear sequential recommenders"};
  app.require_subcommand(1);

  Overrides o;
  std::string snapshot;
  PredictRequest predict;
  int64_t query_time = 0;
  bool inject = false;

  auto* train = app.add_subcommand("train", "Train a model and write a snapshot");
  add_common(train, o);

  auto* eval = app.add_subcommand("evaluate", "Rank held-out events with a snapshot");
  add_common(eval, o);
  eval->add_option("--snapshot", snapshot,
                   "Snapshot (default: <out>/model.snap)");

  auto* pred = app.add_subcommand("predict", "Top items for one user");
  add_common(pred, o);
  pred->add_option("--snapshot", snapshot, "Snapshot (default: <out>/model.snap)");
  pred->add_option("--user", predict.user, "Raw user id")->required();
  pred->add_option("--behavior", predict.behavior, "Behavior label")->required();
  pred->add_option("--top-k", predict.top_k, "Number of items")->capture_default_str();
  auto* qt = pred->add_option("--query-time", query_time,
                              "Use only events at or before this timestamp");

  auto* grad = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  add_common(grad, o);
  grad->add_flag("--inject-sign-error", inject,
                 "Negate the analytic W gradient (negative control)");

  auto* synth = app.add_subcommand("gen-synth", "Write a synthetic event log");
  add_common(synth, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*grad) {
      const bool ok = cmd_gradcheck(o.seed.value_or(7), inject, std::cout);
      return ok ? kExitOk : kExitCheckFailed;
    }
    if (*synth) {
      Overrides no_seed = o;
      no_seed.seed.reset();
      RunConfig config = resolve_config(no_seed);
      if (o.seed) config.data.synth.seed = *o.seed;
      const std::string path =
          o.out ? *o.out : config.output_dir + "/synthetic.tsv";
      cmd_gen_synth(config, path, std::cout);
      return kExitOk;
    }
    RunConfig config = resolve_config(o);
    if (snapshot.empty()) snapshot = config.output_dir + "/" + kSnapshotFile;
    if (*train) {
      cmd_train(config, std::cout);
    } else if (*eval) {
      cmd_evaluate(config, snapshot, std::cout);
    } else if (*pred) {
      predict.snapshot_path = snapshot;
      if (*qt) predict.query_time = query_time;
      cmd_predict(config, predict, std::cout);
    }
    return kExitOk;
  } catch (const rlbl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
