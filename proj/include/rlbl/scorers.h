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

#ifndef RLBL_SCORERS_H_
#define RLBL_SCORERS_H_

#include <memory>

#include "rlbl/evaluation.h"
#include "rlbl/model.h"

namespace rlbl {

// Adapters that rank items with a trained model. Hidden states are computed
// once per user and reused for every position; the parameters are borrowed
// and must outlive the scorer.
class RlblScorer : public SequenceScorer {
 public:
  explicit RlblScorer(const RlblParams& params) : params_(params) {}
  std::unique_ptr<UserScorer> for_user(const UserSequence& seq) const override;

 private:
  const RlblParams& params_;
};

class TaRlblScorer : public SequenceScorer {
 public:
  explicit TaRlblScorer(const TaRlblParams& params) : params_(params) {}
  std::unique_ptr<UserScorer> for_user(const UserSequence& seq) const override;

 private:
  const TaRlblParams& params_;
};

}  // namespace rlbl

#endif  // RLBL_SCORERS_H_
