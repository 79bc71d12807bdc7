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

#include "rlbl/time_grid.h"

#include <cmath>
#include <string>

#include "rlbl/errors.h"

namespace rlbl {

void TimeBinGrid::validate() const {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw ConfigError("time bin width must be positive");
  }
  if (boundary_mats.size() != n_bins + 1) {
    throw ConfigError("time grid needs n_bins + 1 boundary matrices, got " +
                      std::to_string(boundary_mats.size()));
  }
}

InterpWeights interp_weights(const TimeBinGrid& grid, double time_diff) {
  if (!(time_diff >= 0.0) || !std::isfinite(time_diff)) {
    throw TimeError("time difference must be finite and non-negative, got " +
                    std::to_string(time_diff));
  }
  const double cell = std::floor(time_diff / grid.bin_width);
  if (cell >= static_cast<double>(grid.n_bins)) {
    return InterpWeights{grid.n_bins, grid.n_bins, 1.0, 0.0};
  }
  const auto lower = static_cast<size_t>(cell);
  const double lower_t = grid.boundary(lower);
  if (time_diff == lower_t) return InterpWeights{lower, lower, 1.0, 0.0};
  const double upper_t = lower_t + grid.bin_width;
  return InterpWeights{lower, lower + 1, (upper_t - time_diff) / grid.bin_width,
                       (time_diff - lower_t) / grid.bin_width};
}

Mat interp_matrix(const TimeBinGrid& grid, double time_diff) {
  const InterpWeights w = interp_weights(grid, time_diff);
  if (w.upper_weight == 0.0) return grid.boundary_mats[w.lower];
  Mat out = w.lower_weight * grid.boundary_mats[w.lower];
  axpy_inplace(w.upper_weight, grid.boundary_mats[w.upper], out);
  return out;
}

}  // namespace rlbl
