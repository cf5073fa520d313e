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

#include <array>
#include <span>
#include <vector>

#include "mixsim/geometry.hpp"
#include "mixsim/params.hpp"

// Heading dynamics of free-moving agents (motorcycles): perception,
// anticipated spacing, anisotropic lateral repulsion from neighbors and
// curbs, and relaxation toward the resulting desired direction.
//
// All vectors between agents point from the subject i to the neighbor j.

namespace mixsim {

enum class Curb { Lower, Upper };

std::string_view to_string(Curb curb);

struct NeighborTerm {
    int id = 0;
    double repulsion = 0.0;
    Vec2 normal;
};

struct CurbTerm {
    Curb curb = Curb::Lower;
    double repulsion = 0.0;
    Vec2 normal;
};

/// Everything that went into one agent's desired direction.
struct NavigationTerms {
    Vec2 target;
    std::vector<NeighborTerm> neighbors;
    std::array<CurbTerm, 2> curbs;
    Vec2 desired;
};

/// Points at a look-ahead spot `d_look` ahead at the agent's initial lateral
/// position: normalize((d_look, y_init - y)).
Vec2 target_direction(const AgentState& agent, const ModelParams& params);

/// True when `j` belongs to the perception set of `i`: ahead along the
/// current or the intended direction, or laterally overlapping either.
bool perceives(const AgentState& i, const AgentState& j, const RoadGeometry& road,
               const ModelParams& params);

/// Ids of all agents perceived by `i` (i itself excluded).
std::vector<int> perceive(const AgentState& i, std::span<const AgentState> all,
                          const RoadGeometry& road, const ModelParams& params);

/// Projection of the predicted relative position on the current i->j unit
/// vector, never below the sum of the radii.
double anticipated_spacing(const AgentState& i, const AgentState& j, double t_a,
                           const RoadGeometry& road);

/// Exponential repulsion scaled by the head-on anisotropy k * (1 + (1 - e0_i . e_j) / 2).
double repulsion(const AgentState& i, const AgentState& j, const RoadGeometry& road,
                 const ModelParams& params);

/// Unit normal to the intended direction pointing away from j's predicted
/// position; a neighbor predicted exactly on the axis pushes to the right.
Vec2 repulsion_normal(const AgentState& i, const AgentState& j, double t_a,
                      const RoadGeometry& road, const ModelParams& params);

/// Repulsion and normal of both curbs.
std::array<CurbTerm, 2> curb_terms(const AgentState& i, const RoadGeometry& road,
                                   const ModelParams& params);

/// Normalized sum of the intended direction and all lateral repulsions.
/// Falls back to the current heading when the sum vanishes.
Vec2 desired_direction(const AgentState& i, Vec2 target, std::span<const NeighborTerm> neighbors,
                       std::span<const CurbTerm> curbs);

/// One explicit Euler step of de/dt = (e_d - e) / tau, renormalized.
Vec2 relax_heading(Vec2 heading, Vec2 desired, const ModelParams& params);

/// Full navigation evaluation for agent `index` against the snapshot `all`.
NavigationTerms navigation_terms(std::size_t index, std::span<const AgentState> all,
                                 const RoadGeometry& road, const ModelParams& params);

}  // namespace mixsim
