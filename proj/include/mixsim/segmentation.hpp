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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixsim/trajectory.hpp"

// Maneuver detection from headings. The phase is the vehicle heading relative
// to the road azimuth; steering events are the zeros of its derivative with
// respect to arc length. Between two events a path is either convex or
// concave, and chaining the central lateral extrema of these intervals exposes
// maneuvers as monotonic runs with a large lateral shift.

namespace mixsim {

struct PhaseSample {
    double s = 0.0;        ///< arc length [m]
    double t = 0.0;
    double phi = 0.0;      ///< heading minus road azimuth, in (-pi, pi]
    double lateral = 0.0;  ///< offset to the left of the road axis [m]
};

/// One moving stretch of a single agent's trajectory.
struct PhasedTrajectory {
    int id = 0;
    ModeClass mode = ModeClass::Car;
    std::vector<PhaseSample> samples;
};

enum class PhaseStatus { Ok, AllStationary, TooShort };

struct PhaseResult {
    PhaseStatus status = PhaseStatus::Ok;
    /// Moving stretches; a stationary gap starts a new piece.
    std::vector<PhasedTrajectory> pieces;
};

struct PhaseOptions {
    /// Road azimuth used when a row carries no `theta_road`.
    double road_azimuth = 0.0;
    /// Period of x, used to unwrap positions of a ring road.
    std::optional<double> road_length;
    /// A step shorter than this counts as standing still [m].
    double stationary_step = 0.01;
};

/// `rows` must belong to one agent and be in time order.
PhaseResult compute_phase(std::span<const TrajectoryRow> rows, const PhaseOptions& options = {});

struct SteeringEvent {
    std::size_t index = 0;  ///< sample nearest to the event
    double s = 0.0;
    double t = 0.0;
};

struct SegmentationOptions {
    /// Lateral shift above which a monotonic run is a maneuver [m].
    double maneuver_threshold = 1.0;
    /// Events closer than this along the path are merged [m].
    double merge_distance = 1.0;
    /// Gradients with smaller magnitude count as zero [rad/m].
    double gradient_floor = 1e-12;
};

/// Sign changes of the central-difference phase gradient, located by linear
/// interpolation and merged when closer than `merge_distance`.
std::vector<SteeringEvent> detect_steering_events(const PhasedTrajectory& pt,
                                                  const SegmentationOptions& options = {});

enum class Convexity { Convex, Concave };
enum class Direction { Left, Right };

std::string_view to_string(Convexity c);

/// An interval between consecutive steering events (or the piece ends).
struct IntervalLabel {
    std::size_t first = 0;  ///< sample range, inclusive
    std::size_t last = 0;
    double s_start = 0.0;
    double s_end = 0.0;
    Convexity convexity = Convexity::Convex;
    /// Chosen lateral extremum, if the interval contains one.
    std::optional<std::size_t> extremum;
    /// Fewer than three samples; convexity is only a guess.
    bool few_samples = false;
    /// Part of a detected maneuver.
    std::optional<Direction> maneuver;
};

struct Maneuver {
    double s_start = 0.0;
    double s_end = 0.0;
    double shift = 0.0;
    Direction direction = Direction::Left;
};

/// One row of the segments output: the path cut into maneuvers and
/// lane-keeping pieces.
struct Segment {
    double s_start = 0.0;
    double s_end = 0.0;
    Convexity convexity = Convexity::Convex;
    std::optional<Direction> maneuver;
    double shift = 0.0;
};

struct Segmentation {
    std::vector<IntervalLabel> intervals;
    std::vector<Maneuver> maneuvers;
    std::vector<Segment> segments;
};

Segmentation classify_segments(const PhasedTrajectory& pt, std::span<const SteeringEvent> events,
                               const SegmentationOptions& options = {});

/// Full pipeline over every agent of a record.
struct AgentSegmentation {
    int id = 0;
    ModeClass mode = ModeClass::Car;
    PhaseStatus status = PhaseStatus::Ok;
    std::vector<SteeringEvent> events;
    std::vector<Maneuver> maneuvers;
    std::vector<Segment> segments;
};

std::vector<AgentSegmentation> segment_record(const TrajectoryRecord& record, const PhaseOptions& phase = {},
                                              const SegmentationOptions& options = {});

inline constexpr const char* kEventsHeader = "id,s,t";
inline constexpr const char* kSegmentsHeader = "id,s_start,s_end,convexity,label,shift";

void write_events_csv(std::ostream& out, std::span<const AgentSegmentation> result);
void write_segments_csv(std::ostream& out, std::span<const AgentSegmentation> result);

}  // namespace mixsim
