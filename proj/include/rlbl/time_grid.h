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

#ifndef RLBL_TIME_GRID_H_
#define RLBL_TIME_GRID_H_

#include <cstddef>
#include <vector>

#include "rlbl/linalg.h"

namespace rlbl {

// Equally spaced time-difference boundaries 0, w, 2w, ..., n_bins * w, each
// carrying its own transition matrix. Differences between two boundaries get
// a linearly interpolated matrix; differences past the last boundary are
// clamped to it.
struct TimeBinGrid {
  double bin_width = 3600.0;
  size_t n_bins = 0;
  std::vector<Mat> boundary_mats;  // n_bins + 1 entries

  double boundary(size_t index) const { return bin_width * index; }
  // Throws ConfigError if the grid is malformed.
  void validate() const;
};

// The two boundaries bracketing a time difference and their weights.
// When the difference sits exactly on a boundary (or is clamped),
// lower == upper and upper_weight == 0.
struct InterpWeights {
  size_t lower = 0;
  size_t upper = 0;
  double lower_weight = 1.0;
  double upper_weight = 0.0;
};

// Throws TimeError for negative or non-finite differences.
InterpWeights interp_weights(const TimeBinGrid& grid, double time_diff);

// T(t_d) = [T_L (U - t_d) + T_U (t_d - L)] / (U - L).
Mat interp_matrix(const TimeBinGrid& grid, double time_diff);

}  // namespace rlbl

#endif  // RLBL_TIME_GRID_H_
