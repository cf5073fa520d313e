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

#include <optional>
#include <span>
#include <vector>

#include "mixsim/geometry.hpp"
#include "mixsim/navigation.hpp"
#include "mixsim/params.hpp"

// First-order longitudinal dynamics shared by cars and motorcycles: leaders
// and curbs in the path of the (already updated) heading bound the distance
// that can be covered without collision, and the speed follows the optimal
// velocity relation v = min(v0, s / T).
//
// A free distance of std::nullopt means the path is unobstructed.

namespace mixsim {

struct SpeedTerms {
    std::vector<int> leaders;
    std::vector<Curb> curbs;
    std::optional<double> free_distance;
    std::optional<double> free_curb_distance;
    double speed = 0.0;
};

/// True when `j` lies ahead of `i` (e_i . e_ij >= 0) inside the corridor
/// swept along e_i.
bool is_imminent(const AgentState& i, const AgentState& j, const RoadGeometry& road,
                 const ModelParams& params);

std::vector<int> imminent_agents(const AgentState& i, std::span<const AgentState> all,
                                 const RoadGeometry& road, const ModelParams& params);

/// Curbs the heading points toward or runs parallel to.
std::vector<Curb> imminent_curbs(const AgentState& i, const RoadGeometry& road);

/// min over leaders of s_ij - (r_i + r_j). Throws CollisionError on overlap.
std::optional<double> free_distance(const AgentState& i, std::span<const AgentState> leaders,
                                    const RoadGeometry& road);

/// min over curbs of (s_iw - r_i) / cos(a_w), cos(a_w) = e_i . e_iw; a curb
/// the heading is parallel to (cos <= 1e-9) does not bound the distance.
/// Throws CollisionError on curb penetration.
std::optional<double> free_curb_distance(const AgentState& i, std::span<const Curb> curbs,
                                         const RoadGeometry& road);

/// v = min(v0, max(eps, s/T), max(eps, sw/T)); absent terms are skipped.
double update_speed(const AgentState& i, std::optional<double> free, std::optional<double> free_curb,
                    const ModelParams& params);

/// Full speed evaluation for agent `index` against the snapshot `all`, whose
/// headings are already updated.
SpeedTerms speed_terms(std::size_t index, std::span<const AgentState> all, const RoadGeometry& road,
                       const ModelParams& params);

}  // namespace mixsim
