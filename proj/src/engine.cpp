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

#include "mixsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace mixsim {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
// only its own output slot, so the result is independent of scheduling.
// The exception of the lowest failing chunk is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    const std::size_t end = std::min(n, (w + 1) * chunk);
                    for (std::size_t i = w * chunk; i < end; ++i) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::uint64_t derived_seed(std::uint64_t seed, int attempt) {
    return seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull;
}

}  // namespace

int SimulationConfig::agent_count() const {
    if (agents > 0) return agents;
    return static_cast<int>(std::lround(density * road.length / 1000.0 * road.n_lanes));
}

long SimulationConfig::step_count() const { return std::lround(duration / params.dt); }

SamplerConfig SimulationConfig::sampler_config(int attempt) const {
    SamplerConfig s = sampler;
    s.road = road;
    s.target_count = agent_count();
    s.seed = derived_seed(seed, attempt);
    return s;
}

void SimulationConfig::validate() const {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0)) throw ConfigError(key, "must be positive");
    };
    positive(road.length, "road_length");
    if (road.n_lanes < 1) throw ConfigError("lanes", "must be at least 1");
    positive(params.k, "k");
    positive(params.D, "D");
    positive(params.T, "T");
    positive(params.dt, "dt");
    positive(params.tau, "tau");
    positive(params.t_a, "t_a");
    positive(params.d_look, "d_look");
    if (!(params.dt < params.T)) throw ConfigError("dt<T", "integration step must be below the time gap");
    if (!(params.t_a < params.T)) throw ConfigError("t_a<T", "anticipation horizon must be below the time gap");
    if (!(params.v0_moto >= 0.0)) throw ConfigError("v0_moto", "must be non-negative");
    if (!(params.v0_car >= 0.0)) throw ConfigError("v0_car", "must be non-negative");
    if (!(params.cutoff >= 0.0)) throw ConfigError("cutoff", "must be non-negative");
    if (!(duration >= 0.0)) throw ConfigError("duration", "must be non-negative");
    if (record_every < 1) throw ConfigError("record_every", "must be at least 1");
    if (threads < 1) throw ConfigError("threads", "must be at least 1");
    if (sampler_retries < 0) throw ConfigError("sampler_retries", "must be non-negative");
    if (agents < 0) throw ConfigError("agents", "must be non-negative");
    if (agents == 0 && !(density > 0.0)) throw ConfigError("density", "must be positive");
    sampler_config().validate();
}

void audit(std::span<const AgentState> state, const RoadGeometry& road, long step) {
    for (std::size_t a = 0; a < state.size(); ++a) {
        const AgentState& i = state[a];
        for (Curb c : {Curb::Lower, Curb::Upper}) {
            const bool lower = c == Curb::Lower;
            const double room = lower ? i.position.y : road.width() - i.position.y;
            const double extent = directional_radius(i.shape, i.heading, {0.0, lower ? -1.0 : 1.0});
            if (room - extent < -kAuditTolerance) {
                throw CollisionError(i.id, -1, std::string(to_string(c)), extent - room, step);
            }
        }
        for (std::size_t b = a + 1; b < state.size(); ++b) {
            const AgentState& j = state[b];
            const Vec2 d = wrap_displacement(i.position, j.position, road);
            const double s = d.norm();
            double radii = 0.0;
            if (s > 0.0) {
                const Vec2 e = d * (1.0 / s);
                radii = directional_radius(i.shape, i.heading, e) + directional_radius(j.shape, j.heading, -e);
            } else {
                radii = i.shape.semi_axis_lateral + j.shape.semi_axis_lateral;
            }
            if (s < radii - kAuditTolerance) throw CollisionError(i.id, j.id, "", radii - s, step);
        }
    }
}

std::vector<AgentState> initial_state(const SimulationConfig& config) {
    config.validate();
    for (int attempt = 0;; ++attempt) {
        try {
            auto agents = sample_initial_positions(config.sampler_config(attempt));
            for (auto& a : agents) {
                a.desired_speed = a.is_car() ? config.params.v0_car : config.params.v0_moto;
            }
            return agents;
        } catch (const SamplerError&) {
            if (attempt >= config.sampler_retries) throw;
        }
    }
}

std::vector<AgentState> step(std::span<const AgentState> state, const SimulationConfig& config,
                             StepDiagnostics* diagnostics) {
    const RoadGeometry& road = config.road;
    const ModelParams& params = config.params;
    const std::size_t n = state.size();
    if (diagnostics) {
        diagnostics->agents.assign(n, {});
        for (std::size_t i = 0; i < n; ++i) diagnostics->agents[i].id = state[i].id;
    }

    // Phase 1: headings from the snapshot at t.
    std::vector<AgentState> turned(state.begin(), state.end());
    parallel_for(n, config.threads, [&](std::size_t i) {
        if (state[i].is_car()) return;
        NavigationTerms terms = navigation_terms(i, state, road, params);
        turned[i].heading = relax_heading(state[i].heading, terms.desired, params);
        if (diagnostics) diagnostics->agents[i].navigation = std::move(terms);
    });

    // Phase 2: speeds with the new headings and the old positions.
    std::vector<AgentState> next = turned;
    parallel_for(n, config.threads, [&](std::size_t i) {
        SpeedTerms terms = speed_terms(i, turned, road, params);
        next[i].speed = terms.speed;
        if (diagnostics) diagnostics->agents[i].speed = std::move(terms);
    });

    // Phase 3: move.
    for (AgentState& a : next) {
        const Vec2 p = a.position + a.heading * (a.speed * params.dt);
        a.position = {road.wrap_x(p.x), p.y};
    }
    audit(next, road);
    return next;
}

double step_time(long step, double dt) {
    return std::round(static_cast<double>(step) * dt * 1e9) / 1e9;
}

RunResult run_from(std::vector<AgentState> state, const SimulationConfig& config,
                   const StepObserver& observer, bool want_diagnostics) {
    config.validate();
    RunResult result;
    audit(state, config.road, 0);
    result.record.append(0.0, state);

    const long steps = config.step_count();
    StepDiagnostics diagnostics;
    for (long k = 1; k <= steps; ++k) {
        try {
            diagnostics.step = k;
            state = step(state, config, want_diagnostics ? &diagnostics : nullptr);
        } catch (const CollisionError& e) {
            throw e.at_step(k);
        }
        if (observer) observer(k, state, want_diagnostics ? &diagnostics : nullptr);
        if (k % config.record_every == 0) result.record.append(step_time(k, config.params.dt), state);
    }
    result.final_state = std::move(state);
    return result;
}

RunResult run(const SimulationConfig& config, const StepObserver& observer, bool want_diagnostics) {
    return run_from(initial_state(config), config, observer, want_diagnostics);
}

}  // namespace mixsim
