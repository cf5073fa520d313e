/*
 * Copyright 2026 The mixsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "mixsim/geometry.hpp"

namespace mixsim {

/// Variable-radius Poisson disk sampling of initial placements.
///
/// Each agent draws its exclusion radius from a discrete set; agents drawn
/// with the largest radius become lane-bound cars, all others motorcycles.
struct SamplerConfig {
    double r_min = 3.0;
    double r_max = 6.0;
    /// Probability of drawing r_min; r_max is drawn with 1 - p_min.
    double p_min = 0.25;
    RoadGeometry road;
    int target_count = 30;
    std::uint64_t seed = 1;
    int k_candidates = 30;
    /// Also enforce the exclusion radius between cars snapped to different
    /// lanes. Off by default: lanes already keep such cars apart, and with it
    /// the default density is beyond what dart throwing can reach.
    bool cross_lane_exclusion = false;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

/// Raised when the active list runs dry before the target count is reached.
class SamplerError : public Error {
public:
    SamplerError(int achieved, int target);
    int achieved() const { return achieved_; }
    int target() const { return target_; }

private:
    int achieved_;
    int target_;
};

/// Bridson dart throwing with a per-sample radius and a cell grid sized by
/// the largest radius (cells hold lists). A pair (p, q) is accepted when its
/// wrapped distance is at least max(r_p, r_q); two cars in different lanes
/// are exempt unless `cross_lane_exclusion` is set. Cars are snapped to the
/// nearest lane center before the separation test. Returned agents have
/// heading (1, 0), zero speed and zero desired speed.
std::vector<AgentState> sample_initial_positions(const SamplerConfig& config);

/// Exclusion radius the sampler used for an agent of the given mode.
double exclusion_radius(const SamplerConfig& config, ModeClass mode);

}  // namespace mixsim
