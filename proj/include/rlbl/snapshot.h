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

#ifndef RLBL_SNAPSHOT_H_
#define RLBL_SNAPSHOT_H_

#include <string>
#include <variant>
#include <vector>

#include "rlbl/baselines.h"
#include "rlbl/corpus.h"
#include "rlbl/model.h"

namespace rlbl {

enum class ModelKind { kRlbl = 1, kTaRlbl = 2, kPop = 3, kMarkov = 4, kLinearRnn = 5 };

const char* model_kind_name(ModelKind kind);
// Throws ConfigError for unknown names.
ModelKind parse_model_kind(const std::string& name);

// Raw ids the model was trained against, in dense-index order.
struct Vocabulary {
  std::vector<std::string> users;
  std::vector<std::string> items;
  std::vector<std::string> behaviors;

  static Vocabulary Of(const Corpus& corpus);
  bool operator==(const Vocabulary&) const = default;
};

using ModelVariant = std::variant<RlblParams, TaRlblParams, PopModel, MarkovModel>;

struct Snapshot {
  ModelKind kind = ModelKind::kRlbl;
  Vocabulary vocab;
  ModelVariant model;
};

// Binary container, all integers u64 and reals IEEE-754 binary64, both
// little-endian; strings are a u64 byte length followed by the bytes.
//
//   magic "RLBLSNAP" | u32 version (1) | u32 kind
//   vocabulary: users, items, behaviors (u64 count, then strings)
//   RLBL / linear-RNN: d, n, n_users, n_items, n_behaviors, then user
//     vectors, item vectors, W, C_0..C_{n-1}, M_0.., u0 (row-major)
//   TA-RLBL: d, n, n_users, n_items, n_behaviors, f64 bin_width, n_bins,
//     then user vectors, item vectors, W, T_0..T_{n_bins}, M_0.., u0
//   POP: n_items, counts
//   Markov: n_items, fallback, then per row: entry count, (item, prob)...
std::string serialize_snapshot(const Snapshot& snapshot);
// Throws SnapshotError on malformed input.
Snapshot deserialize_snapshot(const std::string& bytes);

void save_snapshot(const std::string& path, const Snapshot& snapshot);
Snapshot load_snapshot(const std::string& path);

// Throws SnapshotError unless the snapshot was trained on this vocabulary.
void check_compatible(const Snapshot& snapshot, const Corpus& corpus);

}  // namespace rlbl

#endif  // RLBL_SNAPSHOT_H_
