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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mixsim/errors.hpp"

namespace mixsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    /// z-component of the 3D cross product.
    constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    /// Counter-clockwise rotation by 90 degrees.
    constexpr Vec2 perp() const { return {-y, x}; }
    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

enum class ModeClass : std::uint8_t { Car, Motorcycle };

std::string_view to_string(ModeClass mode);
/// Accepts "car" and "moto" (also "motorcycle").
std::optional<ModeClass> parse_mode(std::string_view text);

/// Semi-axes of the elliptical body; a disk when both are equal.
struct BodyShape {
    double semi_axis_longitudinal = 0.5;
    double semi_axis_lateral = 0.5;

    static constexpr BodyShape motorcycle() { return {0.5, 0.5}; }
    static constexpr BodyShape car() { return {2.0, 1.0}; }
    static constexpr BodyShape for_mode(ModeClass mode) {
        return mode == ModeClass::Car ? car() : motorcycle();
    }

    constexpr bool operator==(const BodyShape&) const = default;
};

struct AgentState {
    int id = 0;
    ModeClass mode = ModeClass::Motorcycle;
    Vec2 position;
    Vec2 heading{1.0, 0.0};
    double speed = 0.0;
    double desired_speed = 0.0;
    double initial_lateral = 0.0;
    std::optional<int> lane;
    BodyShape shape;

    Vec2 velocity() const { return heading * speed; }
    bool is_car() const { return mode == ModeClass::Car; }
};

/// Straight road, periodic along x, bounded by curbs at y = 0 and y = width().
struct RoadGeometry {
    double length = 100.0;
    int n_lanes = 3;
    double lane_width = 4.0;

    constexpr double width() const { return n_lanes * lane_width; }
    constexpr double lane_center(int lane) const { return (lane + 0.5) * lane_width; }
    /// Index of the lane whose center is closest to `y`, clamped to the road.
    int nearest_lane(double y) const;
    /// Wraps a longitudinal coordinate into [0, length).
    double wrap_x(double x) const;
};

/// Central radius of the body ellipse along `direction`; both vectors unit.
double directional_radius(const BodyShape& shape, Vec2 heading, Vec2 direction);

/// Half-extent of the body measured along the unit vector `normal`
/// (support function of the ellipse).
double support_extent(const BodyShape& shape, Vec2 heading, Vec2 normal);

/// Minimum-image displacement from `from` to `to`; the longitudinal
/// component lies in [-L/2, L/2).
Vec2 wrap_displacement(Vec2 from, Vec2 to, const RoadGeometry& road);

/// Center-to-center distance between two agents under periodic wrapping.
/// Throws Error when both centers coincide.
double spacing(const AgentState& i, const AgentState& j, const RoadGeometry& road);

/// Sign with sign(0) = +1.
constexpr double sign_nonneg(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace mixsim
