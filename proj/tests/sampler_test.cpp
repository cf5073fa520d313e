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

#include "mixsim/sampler.hpp"

namespace mixsim {
namespace {

double wrapped_distance(Vec2 a, Vec2 b, double length) {
    double dx = std::fmod(std::abs(a.x - b.x), length);
    dx = std::min(dx, length - dx);
    return std::hypot(dx, a.y - b.y);
}

// Checks the separation rule pair by pair; returns the number of violations.
int separation_violations(const std::vector<AgentState>& agents, const SamplerConfig& config) {
    int bad = 0;
    for (std::size_t p = 0; p < agents.size(); ++p) {
        for (std::size_t q = p + 1; q < agents.size(); ++q) {
            const auto& a = agents[p];
            const auto& b = agents[q];
            if (!config.cross_lane_exclusion && a.is_car() && b.is_car() && a.lane != b.lane) continue;
            const double bound = std::max(a.is_car() ? config.r_max : config.r_min,
                                          b.is_car() ? config.r_max : config.r_min);
            if (wrapped_distance(a.position, b.position, config.road.length) < bound) ++bad;
        }
    }
    return bad;
}

TEST(Sampler, SingleAgent) {
    SamplerConfig c;
    c.target_count = 1;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        c.seed = seed;
        const auto agents = sample_initial_positions(c);
        ASSERT_EQ(agents.size(), 1u);
        const auto& a = agents[0];
        EXPECT_GE(a.position.x, 0.0);
        EXPECT_LT(a.position.x, c.road.length);
        if (a.is_car()) {
            EXPECT_TRUE(a.position.y == 2.0 || a.position.y == 6.0 || a.position.y == 10.0);
        } else {
            EXPECT_GE(a.position.y, 0.5);
            EXPECT_LE(a.position.y, 11.5);
        }
    }
}

TEST(Sampler, ZeroAgents) {
    SamplerConfig c;
    c.target_count = 0;
    EXPECT_TRUE(sample_initial_positions(c).empty());
}

TEST(Sampler, DefaultScenarioProperties) {
    SamplerConfig c;
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        c.seed = seed;
        std::vector<AgentState> agents;
        try {
            agents = sample_initial_positions(c);
        } catch (const SamplerError&) {
            continue;
        }
        ++ok;
        ASSERT_EQ(agents.size(), 30u);
        EXPECT_EQ(separation_violations(agents, c), 0) << "seed " << seed;
        for (std::size_t n = 0; n < agents.size(); ++n) {
            const auto& a = agents[n];
            EXPECT_EQ(a.id, static_cast<int>(n));
            EXPECT_EQ(a.heading, (Vec2{1, 0}));
            EXPECT_EQ(a.speed, 0.0);
            EXPECT_EQ(a.initial_lateral, a.position.y);
            EXPECT_EQ(a.shape, BodyShape::for_mode(a.mode));
            if (a.is_car()) {
                ASSERT_TRUE(a.lane.has_value());
                EXPECT_EQ(a.position.y, 4.0 * *a.lane + 2.0);
            } else {
                EXPECT_FALSE(a.lane.has_value());
            }
        }
    }
    EXPECT_GE(ok, 95);
}

TEST(Sampler, StrictRuleHonoredWhenItSucceeds) {
    SamplerConfig c;
    c.cross_lane_exclusion = true;
    c.target_count = 20;
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        c.seed = seed;
        try {
            const auto agents = sample_initial_positions(c);
            EXPECT_EQ(separation_violations(agents, c), 0);
            ++ok;
        } catch (const SamplerError& e) {
            EXPECT_LT(e.achieved(), e.target());
        }
    }
    EXPECT_GT(ok, 0);
}

TEST(Sampler, Deterministic) {
    SamplerConfig c;
    c.seed = 42;
    const auto a = sample_initial_positions(c);
    const auto b = sample_initial_positions(c);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        EXPECT_EQ(a[n].position, b[n].position);
        EXPECT_EQ(a[n].mode, b[n].mode);
    }
}

TEST(Sampler, AllMotorcycles) {
    SamplerConfig c;
    c.p_min = 1.0;
    c.target_count = 40;
    const auto agents = sample_initial_positions(c);
    for (const auto& a : agents) EXPECT_EQ(a.mode, ModeClass::Motorcycle);
    EXPECT_EQ(separation_violations(agents, c), 0);
}

TEST(Sampler, Exhaustion) {
    SamplerConfig c;
    c.p_min = 0.0;
    c.target_count = 100;
    try {
        sample_initial_positions(c);
        FAIL() << "expected SamplerError";
    } catch (const SamplerError& e) {
        EXPECT_EQ(e.target(), 100);
        EXPECT_LT(e.achieved(), 100);
        EXPECT_GT(e.achieved(), 0);
    }
}

TEST(Sampler, Validation) {
    auto expect_key = [](SamplerConfig c, const std::string& key) {
        try {
            c.validate();
            FAIL() << "expected ConfigError for " << key;
        } catch (const ConfigError& e) {
            EXPECT_EQ(e.key(), key);
        }
    };
    SamplerConfig c;
    c.validate();
    auto bad = c;
    bad.r_min = 0.0;
    expect_key(bad, "r_min");
    bad = c;
    bad.r_max = 2.0;
    expect_key(bad, "r_max");
    bad = c;
    bad.p_min = 1.5;
    expect_key(bad, "p_min");
    bad = c;
    bad.k_candidates = 0;
    expect_key(bad, "k_candidates");
    bad = c;
    bad.road.lane_width = 1.5;
    expect_key(bad, "lane_width");
}

TEST(Sampler, ExclusionRadius) {
    SamplerConfig c;
    EXPECT_EQ(exclusion_radius(c, ModeClass::Car), 6.0);
    EXPECT_EQ(exclusion_radius(c, ModeClass::Motorcycle), 3.0);
}

}  // namespace
}  // namespace mixsim
