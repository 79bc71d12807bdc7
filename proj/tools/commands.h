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


#ifndef RLBL_TOOLS_COMMANDS_H_
#define RLBL_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rlbl/errors.h"
#include "rlbl/evaluation.h"
#include "rlbl/training.h"
#include "run_config.h"

namespace rlbl::cli {

// File names inside the output directory.
inline constexpr const char* kSnapshotFile = "model.snap";
inline constexpr const char* kEpochLogFile = "epoch_log.tsv";
inline constexpr const char* kReportTableFile = "report.tsv";
inline constexpr const char* kReportSummaryFile = "report.txt";
inline constexpr const char* kResolvedConfigFile = "resolved_config.json";

struct TrainOutcome {
  size_t epochs_run = 0;
  size_t best_epoch = 0;  // 0 is the initialization
  std::optional<double> best_valid_map;
  std::string snapshot_path;
};

// Trains until the epoch budget or until `patience` epochs pass without a
// validation MAP gain, keeping the best parameters seen (the initialization
// counts as epoch 0). Writes the snapshot, the epoch log and the resolved
// config into config.output_dir. POP and Markov are fitted in one pass.
TrainOutcome cmd_train(RunConfig config, std::ostream& console);

// Writes the ranking report table and summary. Throws SnapshotError when the
// snapshot was trained on a different corpus.
RankingReport cmd_evaluate(RunConfig config, const std::string& snapshot_path,
                           std::ostream& console);

struct PredictRequest {
  std::string snapshot_path;
  std::string user;
  std::string behavior;  // label
  size_t top_k = 10;
  std::optional<Timestamp> query_time;  // only events at or before it
};

struct Prediction {
  std::string item;
  double score = 0.0;
};

// Ranks items after the user's stored history. Throws UserError for an
// unknown user and ConfigError for an unknown behavior label.
std::vector<Prediction> cmd_predict(RunConfig config,
                                    const PredictRequest& request,
                                    std::ostream& console);

// Gradient check of RLBL and TA-RLBL on a random instance with d=4, n=2,
// 3 users, 10 items and 3 behaviors. `inject_sign_error` negates the
// analytic W gradient first.
bool cmd_gradcheck(uint64_t seed, bool inject_sign_error,
                   std::ostream& console);

// Writes the configured synthetic corpus in the generic format.
size_t cmd_gen_synth(const RunConfig& config, const std::string& out_path,
                     std::ostream& console);

// Exit status per error class.
enum ExitCode {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitNumeric = 4,
  kExitData = 5,
  kExitCheckFailed = 6,
};

int exit_code_for(ErrorClass error_class);

}  // namespace rlbl::cli

#endif  // RLBL_TOOLS_COMMANDS_H_
