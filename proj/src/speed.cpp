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

#include "mixsim/speed.hpp"

#include <algorithm>
#include <cmath>

namespace mixsim {

namespace {

constexpr double kParallelCos = 1e-9;

Vec2 toward_curb(Curb curb) { return {0.0, curb == Curb::Lower ? -1.0 : 1.0}; }

double curb_distance(const AgentState& i, Curb curb, const RoadGeometry& road) {
    return curb == Curb::Lower ? i.position.y : road.width() - i.position.y;
}

void keep_min(std::optional<double>& acc, double value) {
    acc = acc ? std::min(*acc, value) : value;
}

}  // namespace

bool is_imminent(const AgentState& i, const AgentState& j, const RoadGeometry& road,
                 const ModelParams& params) {
    const Vec2 d = wrap_displacement(i.position, j.position, road);
    const double s = d.norm();
    if (!(s > 0.0)) throw CollisionError(i.id, j.id, "", 0.0);
    const Vec2 e = d * (1.0 / s);
    if (i.heading.dot(e) < 0.0) return false;

    const Vec2 side = i.heading.perp();
    double width = 0.0;
    if (params.corridor == CorridorWidth::Lateral) {
        width = support_extent(i.shape, i.heading, side) + support_extent(j.shape, j.heading, side);
    } else {
        width = directional_radius(i.shape, i.heading, e) + directional_radius(j.shape, j.heading, -e);
    }
    return std::abs(side.dot(e)) <= width / s;
}

std::vector<int> imminent_agents(const AgentState& i, std::span<const AgentState> all,
                                 const RoadGeometry& road, const ModelParams& params) {
    std::vector<int> ids;
    for (const AgentState& j : all) {
        if (j.id != i.id && is_imminent(i, j, road, params)) ids.push_back(j.id);
    }
    return ids;
}

std::vector<Curb> imminent_curbs(const AgentState& i, const RoadGeometry&) {
    std::vector<Curb> curbs;
    for (Curb c : {Curb::Lower, Curb::Upper}) {
        if (i.heading.dot(toward_curb(c)) >= 0.0) curbs.push_back(c);
    }
    return curbs;
}

std::optional<double> free_distance(const AgentState& i, std::span<const AgentState> leaders,
                                    const RoadGeometry& road) {
    std::optional<double> best;
    for (const AgentState& j : leaders) {
        const Vec2 d = wrap_displacement(i.position, j.position, road);
        const double s = d.norm();
        if (!(s > 0.0)) throw CollisionError(i.id, j.id, "", 0.0);
        const Vec2 e = d * (1.0 / s);
        const double gap =
            s - (directional_radius(i.shape, i.heading, e) + directional_radius(j.shape, j.heading, -e));
        if (gap < 0.0) throw CollisionError(i.id, j.id, "", -gap);
        keep_min(best, gap);
    }
    return best;
}

std::optional<double> free_curb_distance(const AgentState& i, std::span<const Curb> curbs,
                                         const RoadGeometry& road) {
    std::optional<double> best;
    for (Curb c : curbs) {
        const Vec2 normal = toward_curb(c);
        const double clearance = curb_distance(i, c, road) - directional_radius(i.shape, i.heading, normal);
        if (clearance < 0.0) throw CollisionError(i.id, -1, std::string(to_string(c)), -clearance);
        const double cos_a = i.heading.dot(normal);
        if (cos_a <= kParallelCos) continue;
        keep_min(best, clearance / cos_a);
    }
    return best;
}

double update_speed(const AgentState& i, std::optional<double> free, std::optional<double> free_curb,
                    const ModelParams& params) {
    double v = i.desired_speed;
    if (free) v = std::min(v, std::max(params.epsilon, *free / params.T));
    if (free_curb && !i.is_car()) v = std::min(v, std::max(params.epsilon, *free_curb / params.T));
    return v;
}

SpeedTerms speed_terms(std::size_t index, std::span<const AgentState> all, const RoadGeometry& road,
                       const ModelParams& params) {
    const AgentState& i = all[index];
    SpeedTerms terms;
    std::vector<AgentState> leaders;
    for (std::size_t n = 0; n < all.size(); ++n) {
        if (n == index || !is_imminent(i, all[n], road, params)) continue;
        terms.leaders.push_back(all[n].id);
        leaders.push_back(all[n]);
    }
    terms.free_distance = free_distance(i, leaders, road);
    if (!i.is_car()) {
        terms.curbs = imminent_curbs(i, road);
        terms.free_curb_distance = free_curb_distance(i, terms.curbs, road);
    }
    terms.speed = update_speed(i, terms.free_distance, terms.free_curb_distance, params);
    return terms;
}

}  // namespace mixsim
