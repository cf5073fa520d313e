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
#include <functional>
#include <span>
#include <vector>

#include "mixsim/geometry.hpp"
#include "mixsim/navigation.hpp"
#include "mixsim/params.hpp"
#include "mixsim/sampler.hpp"
#include "mixsim/speed.hpp"
#include "mixsim/trajectory.hpp"

namespace mixsim {

struct SimulationConfig {
    RoadGeometry road;
    ModelParams params;
    SamplerConfig sampler;
    /// Vehicles per km per lane; sets the agent count unless `agents` > 0.
    double density = 100.0;
    int agents = 0;
    double duration = 300.0;
    int record_every = 20;
    std::uint64_t seed = 1;
    /// Extra sampling attempts with derived seeds when placement fails.
    int sampler_retries = 0;
    /// Worker threads for the per-agent phases; results do not depend on it.
    int threads = 1;

    int agent_count() const;
    long step_count() const;
    /// Sampler settings with the road, count and seed filled in.
    SamplerConfig sampler_config(int attempt = 0) const;
    /// Throws ConfigError naming the violated key or invariant.
    void validate() const;
};

/// Per-agent diagnostics of one step. `navigation` is only filled for motorcycles.
struct AgentDiagnostics {
    int id = 0;
    std::optional<NavigationTerms> navigation;
    SpeedTerms speed;
};

struct StepDiagnostics {
    long step = 0;
    std::vector<AgentDiagnostics> agents;
};

/// Audit tolerance on spacing and curb clearance [m].
inline constexpr double kAuditTolerance = 1e-9;

/// Throws CollisionError if two bodies overlap (center distance below the sum
/// of directional radii) or a body crosses a curb.
void audit(std::span<const AgentState> state, const RoadGeometry& road, long step = -1);

/// Samples the initial placement and assigns desired speeds by mode.
std::vector<AgentState> initial_state(const SimulationConfig& config);

/// One synchronous update: headings of motorcycles from the snapshot, then
/// speeds of everyone with the new headings and old positions, then motion
/// with periodic wrapping, then the collision audit.
std::vector<AgentState> step(std::span<const AgentState> state, const SimulationConfig& config,
                             StepDiagnostics* diagnostics = nullptr);

/// Rounds step * dt to nanoseconds so recorded times print cleanly.
double step_time(long step, double dt);

struct RunResult {
    TrajectoryRecord record;
    std::vector<AgentState> final_state;
};

/// Called after every step with the new state; diagnostics are non-null only
/// when requested.
using StepObserver = std::function<void(long step, std::span<const AgentState>, const StepDiagnostics*)>;

/// Samples, then integrates for `duration`, recording every `record_every`
/// steps (plus the initial snapshot). CollisionError carries the step number.
RunResult run(const SimulationConfig& config, const StepObserver& observer = {},
              bool want_diagnostics = false);

/// Same as run() from an explicit initial state.
RunResult run_from(std::vector<AgentState> state, const SimulationConfig& config,
                   const StepObserver& observer = {}, bool want_diagnostics = false);

}  // namespace mixsim
