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

#include "mixsim/geometry.hpp"

#include <algorithm>

namespace mixsim {

std::string_view to_string(ModeClass mode) {
    return mode == ModeClass::Car ? "car" : "moto";
}

std::optional<ModeClass> parse_mode(std::string_view text) {
    if (text == "car") return ModeClass::Car;
    if (text == "moto" || text == "motorcycle") return ModeClass::Motorcycle;
    return std::nullopt;
}

int RoadGeometry::nearest_lane(double y) const {
    const int lane = static_cast<int>(std::floor(y / lane_width));
    return std::clamp(lane, 0, n_lanes - 1);
}

double RoadGeometry::wrap_x(double x) const {
    double w = x - length * std::floor(x / length);
    // floor can round x = -tiny up to exactly `length`
    if (w >= length) w -= length;
    return w;
}

double directional_radius(const BodyShape& shape, Vec2 heading, Vec2 direction) {
    const double a = shape.semi_axis_longitudinal;
    const double b = shape.semi_axis_lateral;
    if (a == b) return a;
    const double c = heading.dot(direction);
    const double s = heading.cross(direction);
    return a * b / std::sqrt((b * c) * (b * c) + (a * s) * (a * s));
}

double support_extent(const BodyShape& shape, Vec2 heading, Vec2 normal) {
    const double a = shape.semi_axis_longitudinal;
    const double b = shape.semi_axis_lateral;
    if (a == b) return a;
    const double c = heading.dot(normal);
    const double s = heading.cross(normal);
    return std::sqrt((a * c) * (a * c) + (b * s) * (b * s));
}

Vec2 wrap_displacement(Vec2 from, Vec2 to, const RoadGeometry& road) {
    const double L = road.length;
    double dx = to.x - from.x;
    dx -= L * std::floor((dx + 0.5 * L) / L);
    return {dx, to.y - from.y};
}

double spacing(const AgentState& i, const AgentState& j, const RoadGeometry& road) {
    const double s = wrap_displacement(i.position, j.position, road).norm();
    if (!(s > 0.0)) {
        throw Error("agents " + std::to_string(i.id) + " and " + std::to_string(j.id) +
                    " have coincident centers");
    }
    return s;
}

}  // namespace mixsim
