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

#include "mixsim/navigation.hpp"

#include <cmath>

namespace mixsim {

namespace {

struct Pair {
    Vec2 unit;  // i -> j
    double distance;
    double radii;  // r_i + r_j along the interaction direction
};

Pair pair_geometry(const AgentState& i, const AgentState& j, const RoadGeometry& road) {
    const Vec2 d = wrap_displacement(i.position, j.position, road);
    const double s = d.norm();
    if (!(s > 0.0)) {
        throw Error("agents " + std::to_string(i.id) + " and " + std::to_string(j.id) +
                    " have coincident centers");
    }
    const Vec2 e = d * (1.0 / s);
    const double r = directional_radius(i.shape, i.heading, e) + directional_radius(j.shape, j.heading, -e);
    return {e, s, r};
}

Vec2 predicted_position(const AgentState& a, double t_a, const RoadGeometry& road) {
    const Vec2 p = a.position + a.velocity() * t_a;
    return {road.wrap_x(p.x), p.y};
}

}  // namespace

std::string_view to_string(Curb curb) { return curb == Curb::Lower ? "lower" : "upper"; }

Vec2 target_direction(const AgentState& agent, const ModelParams& params) {
    return Vec2{params.d_look, agent.initial_lateral - agent.position.y}.normalized();
}

bool perceives(const AgentState& i, const AgentState& j, const RoadGeometry& road,
               const ModelParams& params) {
    const Pair p = pair_geometry(i, j, road);
    if (params.cutoff > 0.0 && p.distance > params.cutoff) return false;
    const Vec2 e0 = target_direction(i, params);
    const double along = i.heading.dot(p.unit);
    const double along0 = e0.dot(p.unit);
    const double overlap = p.radii / p.distance;
    return along > 0.0 || along0 > 0.0 || std::abs(along) <= overlap || std::abs(along0) <= overlap;
}

std::vector<int> perceive(const AgentState& i, std::span<const AgentState> all,
                          const RoadGeometry& road, const ModelParams& params) {
    std::vector<int> ids;
    for (const AgentState& j : all) {
        if (j.id == i.id) continue;
        if (perceives(i, j, road, params)) ids.push_back(j.id);
    }
    return ids;
}

double anticipated_spacing(const AgentState& i, const AgentState& j, double t_a,
                           const RoadGeometry& road) {
    const Pair p = pair_geometry(i, j, road);
    const Vec2 ahead = wrap_displacement(predicted_position(i, t_a, road),
                                         predicted_position(j, t_a, road), road);
    return std::max(p.radii, ahead.dot(p.unit));
}

double repulsion(const AgentState& i, const AgentState& j, const RoadGeometry& road,
                 const ModelParams& params) {
    const Pair p = pair_geometry(i, j, road);
    const double s_a = anticipated_spacing(i, j, params.t_a, road);
    const double anisotropy = params.k * (1.0 + 0.5 * (1.0 - target_direction(i, params).dot(j.heading)));
    return anisotropy * std::exp((p.radii - s_a) / params.D);
}

Vec2 repulsion_normal(const AgentState& i, const AgentState& j, double t_a,
                      const RoadGeometry& road, const ModelParams& params) {
    const Vec2 e0_perp = target_direction(i, params).perp();
    const Vec2 toward = wrap_displacement(i.position, predicted_position(j, t_a, road), road);
    return e0_perp * -sign_nonneg(toward.dot(e0_perp));
}

std::array<CurbTerm, 2> curb_terms(const AgentState& i, const RoadGeometry& road,
                                   const ModelParams& params) {
    const Vec2 e0_perp = target_direction(i, params).perp();
    std::array<CurbTerm, 2> terms;
    for (Curb curb : {Curb::Lower, Curb::Upper}) {
        const bool lower = curb == Curb::Lower;
        const Vec2 toward{0.0, lower ? -1.0 : 1.0};
        const double distance = lower ? i.position.y : road.width() - i.position.y;
        const double radius = directional_radius(i.shape, i.heading, toward);
        CurbTerm& t = terms[lower ? 0 : 1];
        t.curb = curb;
        t.repulsion = params.k_curb() * std::exp((radius - distance) / params.D_curb());
        t.normal = e0_perp * -sign_nonneg(toward.dot(e0_perp));
    }
    return terms;
}

Vec2 desired_direction(const AgentState& i, Vec2 target, std::span<const NeighborTerm> neighbors,
                       std::span<const CurbTerm> curbs) {
    Vec2 sum = target;
    for (const NeighborTerm& n : neighbors) sum += n.normal * n.repulsion;
    for (const CurbTerm& c : curbs) sum += c.normal * c.repulsion;
    if (sum.norm() < 1e-12) return i.heading;
    return sum.normalized();
}

Vec2 relax_heading(Vec2 heading, Vec2 desired, const ModelParams& params) {
    const Vec2 next = heading + (desired - heading) * (params.dt / params.tau);
    if (next.norm() == 0.0) return heading;
    return next.normalized();
}

NavigationTerms navigation_terms(std::size_t index, std::span<const AgentState> all,
                                 const RoadGeometry& road, const ModelParams& params) {
    const AgentState& i = all[index];
    NavigationTerms terms;
    terms.target = target_direction(i, params);
    for (std::size_t n = 0; n < all.size(); ++n) {
        if (n == index) continue;
        const AgentState& j = all[n];
        if (!perceives(i, j, road, params)) continue;
        terms.neighbors.push_back({j.id, repulsion(i, j, road, params),
                                   repulsion_normal(i, j, params.t_a, road, params)});
    }
    terms.curbs = curb_terms(i, road, params);
    terms.desired = desired_direction(i, terms.target, terms.neighbors, terms.curbs);
    return terms;
}

}  // namespace mixsim
