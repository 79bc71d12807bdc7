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

#include "rlbl/scorers.h"

#include <optional>
#include <vector>

namespace rlbl {
namespace {

template <typename Params>
class CachedUserScorer : public UserScorer {
 public:
  CachedUserScorer(const Params& params, const UserSequence& seq)
      : params_(params), seq_(seq) {}

  void scores(size_t k, size_t behavior, std::vector<double>& out) override {
    if (!states_) states_ = hidden_states(params_, seq_, seq_.size());
    out = score_all_items(params_.core, (*states_)[k], seq_.user_id, behavior);
  }

 private:
  const Params& params_;
  const UserSequence& seq_;
  std::optional<std::vector<Vec>> states_;
};

}  // namespace

std::unique_ptr<UserScorer> RlblScorer::for_user(
    const UserSequence& seq) const {
  return std::make_unique<CachedUserScorer<RlblParams>>(params_, seq);
}

std::unique_ptr<UserScorer> TaRlblScorer::for_user(
    const UserSequence& seq) const {
  return std::make_unique<CachedUserScorer<TaRlblParams>>(params_, seq);
}

}  // namespace rlbl
