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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mixsim/engine.hpp"

namespace mixsim {
namespace {

AgentState lone_moto(double x, double y) {
    AgentState a;
    a.mode = ModeClass::Motorcycle;
    a.shape = BodyShape::motorcycle();
    a.position = {x, y};
    a.initial_lateral = y;
    a.desired_speed = 10.0;
    return a;
}

std::string csv(const TrajectoryRecord& r) {
    std::ostringstream out;
    write_trajectory_csv(out, r);
    return out.str();
}

TEST(Engine, FreeFlowMotorcycle) {
    SimulationConfig c;
    c.duration = 20.0;
    c.record_every = 1;
    const auto result = run_from({lone_moto(3.0, 6.0)}, c);
    ASSERT_EQ(result.record.rows.size(), 401u);
    for (std::size_t k = 1; k < result.record.rows.size(); ++k) {
        const auto& r = result.record.rows[k];
        EXPECT_EQ(r.y, 6.0);
        EXPECT_EQ(r.v, 10.0);
        EXPECT_EQ(r.theta, 0.0);
        const double expected = std::fmod(3.0 + 0.5 * static_cast<double>(k), 100.0);
        const double err = std::abs(r.x - expected);
        EXPECT_LT(std::min(err, 100.0 - err), 1e-9) << "step " << k;
    }
}

TEST(Engine, ReturnsToInitialLateral) {
    SimulationConfig c;
    c.duration = 30.0;
    AgentState a = lone_moto(3.0, 8.0);
    a.initial_lateral = 6.0;
    const auto result = run_from({a}, c);
    EXPECT_NEAR(result.final_state[0].position.y, 6.0, 0.05);
    EXPECT_NEAR(result.final_state[0].heading.y, 0.0, 1e-3);
}

TEST(Engine, DurationZeroRecordsInitialSnapshot) {
    SimulationConfig c;
    c.duration = 0.0;
    c.sampler_retries = 20;
    const auto result = run(c);
    EXPECT_EQ(result.record.rows.size(), 30u);
    EXPECT_EQ(result.record.times(), (std::vector<double>{0.0}));
}

TEST(Engine, RowCountAndCarLanes) {
    SimulationConfig c;
    c.duration = 20.0;
    c.sampler_retries = 20;
    const auto result = run(c);
    EXPECT_EQ(c.step_count(), 400);
    EXPECT_EQ(result.record.rows.size(), 30u * 21u);
    EXPECT_EQ(result.record.times().back(), 20.0);
    for (const auto& [id, rows] : result.record.by_agent()) {
        if (rows.front().mode != ModeClass::Car) continue;
        for (const auto& r : rows) {
            EXPECT_EQ(r.y, rows.front().y);
            EXPECT_EQ(r.theta, 0.0);
        }
    }
}

TEST(Engine, SpeedsStayWithinBoundsProperty) {
    SimulationConfig c;
    c.duration = 20.0;
    c.sampler_retries = 20;
    c.seed = 7;
    run(c, [&](long, std::span<const AgentState> state, const StepDiagnostics*) {
        for (const auto& a : state) {
            ASSERT_GT(a.speed, 0.0);
            ASSERT_LE(a.speed, a.desired_speed);
            ASSERT_NEAR(a.heading.norm(), 1.0, 1e-12);
        }
    });
}

TEST(Engine, ThreadsDoNotChangeResults) {
    SimulationConfig c;
    c.duration = 30.0;
    c.sampler_retries = 20;
    c.seed = 3;
    const std::string serial = csv(run(c).record);
    c.threads = 4;
    EXPECT_EQ(csv(run(c).record), serial);
}

TEST(Engine, SameSeedSameRecord) {
    SimulationConfig c;
    c.duration = 10.0;
    c.sampler_retries = 20;
    c.seed = 11;
    EXPECT_EQ(csv(run(c).record), csv(run(c).record));
}

TEST(Engine, DiagnosticsMatchState) {
    SimulationConfig c;
    c.duration = 1.0;
    c.sampler_retries = 20;
    long calls = 0;
    run(
        c,
        [&](long k, std::span<const AgentState> state, const StepDiagnostics* d) {
            ASSERT_NE(d, nullptr);
            EXPECT_EQ(d->step, k);
            ASSERT_EQ(d->agents.size(), state.size());
            for (std::size_t n = 0; n < state.size(); ++n) {
                EXPECT_EQ(d->agents[n].navigation.has_value(), !state[n].is_car());
                EXPECT_EQ(d->agents[n].speed.speed, state[n].speed);
            }
            ++calls;
        },
        true);
    EXPECT_EQ(calls, 20);
}

TEST(Engine, Validation) {
    auto expect_key = [](SimulationConfig c, const std::string& key) {
        try {
            c.validate();
            FAIL() << "expected ConfigError for " << key;
        } catch (const ConfigError& e) {
            EXPECT_EQ(e.key(), key);
        }
    };
    SimulationConfig c;
    c.validate();
    auto bad = c;
    bad.params.dt = 1.0;
    expect_key(bad, "dt<T");
    bad = c;
    bad.params.t_a = 1.0;
    expect_key(bad, "t_a<T");
    bad = c;
    bad.params.k = 0.0;
    expect_key(bad, "k");
    bad = c;
    bad.duration = -1.0;
    expect_key(bad, "duration");
    bad = c;
    bad.threads = 0;
    expect_key(bad, "threads");
    bad = c;
    bad.record_every = 0;
    expect_key(bad, "record_every");
}

TEST(Engine, AgentCountFromDensity) {
    SimulationConfig c;
    EXPECT_EQ(c.agent_count(), 30);
    c.density = 50.0;
    EXPECT_EQ(c.agent_count(), 15);
    c.agents = 7;
    EXPECT_EQ(c.agent_count(), 7);
}

TEST(Audit, DetectsOverlapAndCurb) {
    const RoadGeometry road;
    std::vector<AgentState> s{lone_moto(10, 6), lone_moto(10.9, 6)};
    s[1].id = 1;
    try {
        audit(s, road, 5);
        FAIL();
    } catch (const CollisionError& e) {
        EXPECT_EQ(e.other(), 1);
        EXPECT_EQ(e.step(), 5);
        EXPECT_NEAR(e.deficit(), 0.1, 1e-12);
    }
    s[1].position = {11.0, 6.0};
    EXPECT_NO_THROW(audit(s, road));
    s[1].position = {30.0, 11.7};
    try {
        audit(s, road);
        FAIL();
    } catch (const CollisionError& e) {
        EXPECT_EQ(e.curb(), "upper");
    }
}

TEST(Audit, WrapsAcrossSeam) {
    const RoadGeometry road;
    std::vector<AgentState> s{lone_moto(99.7, 6), lone_moto(0.2, 6)};
    s[1].id = 1;
    EXPECT_THROW(audit(s, road), CollisionError);
}

TEST(Engine, StepTime) {
    EXPECT_EQ(step_time(6000, 0.05), 300.0);
    EXPECT_EQ(step_time(3, 0.05), 0.15);
}

}  // namespace
}  // namespace mixsim
