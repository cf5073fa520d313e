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

#include "mixsim/sampler.hpp"

#include <algorithm>
#include <numbers>

#include "mixsim/rng.hpp"

namespace mixsim {

namespace {

struct Sample {
    Vec2 position;
    double radius;
    int lane;  // -1 when not lane-bound
};

// Background grid with cells at least r_max wide, so that every conflicting
// sample lives in the 3x3 block around the candidate's cell. Periodic in x.
class SampleGrid {
public:
    SampleGrid(const RoadGeometry& road, double r_max, bool cross_lane)
        : road_(road),
          cross_lane_(cross_lane),
          nx_(std::max(1, static_cast<int>(road.length / r_max))),
          ny_(std::max(1, static_cast<int>(road.width() / r_max))),
          cell_w_(road.length / nx_),
          cell_h_(road.width() / ny_),
          cells_(static_cast<std::size_t>(nx_ * ny_)) {}

    void insert(std::size_t index, Vec2 p) { cells_[cell_of(p)].push_back(index); }

    bool conflicts(const std::vector<Sample>& samples, const Sample& c) const {
        const Vec2 p = c.position;
        const int cx = col(p.x);
        const int cy = row(p.y);
        const int span_x = nx_ < 3 ? nx_ : 3;
        for (int dx = 0; dx < span_x; ++dx) {
            const int ix = nx_ < 3 ? dx : ((cx + dx - 1) % nx_ + nx_) % nx_;
            for (int iy = std::max(0, cy - 1); iy <= std::min(ny_ - 1, cy + 1); ++iy) {
                for (std::size_t q : cells_[static_cast<std::size_t>(iy * nx_ + ix)]) {
                    const Sample& o = samples[q];
                    if (!cross_lane_ && c.lane >= 0 && o.lane >= 0 && c.lane != o.lane) continue;
                    const double bound = std::max(c.radius, o.radius);
                    if (wrap_displacement(p, o.position, road_).norm() < bound) return true;
                }
            }
        }
        return false;
    }

private:
    int col(double x) const { return std::clamp(static_cast<int>(x / cell_w_), 0, nx_ - 1); }
    int row(double y) const { return std::clamp(static_cast<int>(y / cell_h_), 0, ny_ - 1); }
    std::size_t cell_of(Vec2 p) const { return static_cast<std::size_t>(row(p.y) * nx_ + col(p.x)); }

    RoadGeometry road_;
    bool cross_lane_;
    int nx_;
    int ny_;
    double cell_w_;
    double cell_h_;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace

void SamplerConfig::validate() const {
    if (!(r_min > 0.0)) throw ConfigError("r_min", "must be positive");
    if (!(r_max >= r_min)) throw ConfigError("r_max", "must be at least r_min");
    if (!(p_min >= 0.0 && p_min <= 1.0)) throw ConfigError("p_min", "must lie in [0, 1]");
    if (target_count < 0) throw ConfigError("agents", "must be non-negative");
    if (k_candidates < 1) throw ConfigError("k_candidates", "must be at least 1");
    if (!(road.length > 0.0)) throw ConfigError("road_length", "must be positive");
    if (road.n_lanes < 1) throw ConfigError("lanes", "must be at least 1");
    if (!(road.lane_width > 2.0 * BodyShape::car().semi_axis_lateral)) {
        throw ConfigError("lane_width", "must exceed the car width");
    }
}

SamplerError::SamplerError(int achieved, int target)
    : Error("sampler placed " + std::to_string(achieved) + " of " + std::to_string(target) +
            " agents before the active list emptied"),
      achieved_(achieved),
      target_(target) {}

double exclusion_radius(const SamplerConfig& config, ModeClass mode) {
    return mode == ModeClass::Car ? config.r_max : config.r_min;
}

std::vector<AgentState> sample_initial_positions(const SamplerConfig& config) {
    config.validate();
    const RoadGeometry& road = config.road;
    std::vector<AgentState> agents;
    if (config.target_count == 0) return agents;

    Rng rng(config.seed);

    // Modes are drawn up front so the emitted mix follows the configured
    // probabilities regardless of which candidates get rejected.
    std::vector<ModeClass> modes(static_cast<std::size_t>(config.target_count));
    for (auto& m : modes) m = rng.bernoulli(config.p_min) ? ModeClass::Motorcycle : ModeClass::Car;

    const double moto_margin = BodyShape::motorcycle().semi_axis_lateral;
    // Places a raw point according to the mode's lateral rule; false if the
    // point falls off the road.
    auto place = [&](ModeClass mode, Vec2 raw, Vec2& out) {
        if (raw.y < 0.0 || raw.y > road.width()) return false;
        out.x = road.wrap_x(raw.x);
        if (mode == ModeClass::Car) {
            out.y = road.lane_center(road.nearest_lane(raw.y));
            return true;
        }
        out.y = raw.y;
        return raw.y >= moto_margin && raw.y <= road.width() - moto_margin;
    };

    std::vector<Sample> samples;
    SampleGrid grid(road, config.r_max, config.cross_lane_exclusion);
    std::vector<std::size_t> active;

    auto accept = [&](ModeClass mode, Vec2 p) {
        const std::size_t index = samples.size();
        const int lane = mode == ModeClass::Car ? road.nearest_lane(p.y) : -1;
        samples.push_back({p, exclusion_radius(config, mode), lane});
        grid.insert(index, p);
        active.push_back(index);

        AgentState a;
        a.id = static_cast<int>(index);
        a.mode = mode;
        a.position = p;
        a.heading = {1.0, 0.0};
        a.initial_lateral = p.y;
        a.shape = BodyShape::for_mode(mode);
        if (lane >= 0) a.lane = lane;
        agents.push_back(a);
    };

    {
        const ModeClass mode = modes[0];
        Vec2 p;
        Vec2 raw{rng.uniform(0.0, road.length), 0.0};
        raw.y = mode == ModeClass::Car ? rng.uniform(0.0, road.width())
                                       : rng.uniform(moto_margin, road.width() - moto_margin);
        place(mode, raw, p);
        accept(mode, p);
    }

    while (agents.size() < modes.size() && !active.empty()) {
        const std::size_t slot = rng.below(active.size());
        const Sample origin = samples[active[slot]];
        const ModeClass mode = modes[agents.size()];
        const double radius = exclusion_radius(config, mode);
        const double ring = std::max(origin.radius, radius);

        bool found = false;
        for (int attempt = 0; attempt < config.k_candidates && !found; ++attempt) {
            const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double dist = rng.uniform(ring, 2.0 * ring);
            const Vec2 raw = origin.position + Vec2{std::cos(angle), std::sin(angle)} * dist;
            Vec2 p;
            if (!place(mode, raw, p)) continue;
            const int lane = mode == ModeClass::Car ? road.nearest_lane(p.y) : -1;
            if (grid.conflicts(samples, {p, radius, lane})) continue;
            accept(mode, p);
            found = true;
        }
        if (!found) {
            active[slot] = active.back();
            active.pop_back();
        }
    }

    if (agents.size() < modes.size()) {
        throw SamplerError(static_cast<int>(agents.size()), config.target_count);
    }
    return agents;
}

}  // namespace mixsim
