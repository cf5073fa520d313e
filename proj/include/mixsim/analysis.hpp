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
#include <vector>

#include "mixsim/trajectory.hpp"

namespace mixsim {

struct Snapshot {
    double t = 0.0;
    std::vector<TrajectoryRow> agents;
};

/// One snapshot per offset + k * period up to the last recorded time, each
/// taken at the nearest recorded time. Throws Error when the period is below
/// the recording interval.
std::vector<Snapshot> extract_snapshots(const TrajectoryRecord& record, double period, double offset = 0.0);

struct SpacingSample {
    int id = 0;
    ModeClass mode = ModeClass::Car;
    double spacing = 0.0;
    double v = 0.0;
};

/// Center distance to the closest leader whose lateral extent overlaps the
/// subject's (static half-widths per mode). Leaders are agents with positive
/// longitudinal offset, wrapped when `road_length` is given. Agents without
/// such a leader are left out.
std::vector<SpacingSample> pairwise_spacing(const Snapshot& snapshot,
                                            std::optional<double> road_length = std::nullopt);

/// v(s) = min(v_free, (s - s0) / T), fitted as a continuous two-piece line.
struct PiecewiseLinearFit {
    double breakpoint = 0.0;  ///< s_c, where the two pieces meet
    double time_gap = 0.0;    ///< T, inverse slope of the congested piece
    double v_free = 0.0;
    double s0 = 0.0;          ///< spacing at zero speed
    double rms = 0.0;
    /// The data did not support two regimes; only `v_free` or the slope is meaningful.
    bool degenerate = false;
};

/// Least squares over the breakpoint: a 0.1 m grid, then golden-section
/// refinement. Throws Error for fewer than 10 points.
PiecewiseLinearFit fit_speed_spacing(std::span<const std::pair<double, double>> points);

struct ObserverSpeeds {
    std::vector<double> car;   ///< neighborhood mean minus own speed, per car sample
    std::vector<double> moto;
    /// Share of car samples strictly slower than their neighborhood.
    double car_slower_fraction = 0.0;
};

/// For every sample, the mean speed of the other agents within a centered
/// window of width `window_x` (wrapped when `road_length` is given) and
/// duration `window_t`. Samples with an empty neighborhood are skipped.
ObserverSpeeds moving_observer_speeds(const TrajectoryRecord& record, double window_x, double window_t,
                                      std::optional<double> road_length = std::nullopt);

struct Histogram {
    double lo = 0.0;
    double bin = 0.25;
    std::vector<long> counts;
    std::vector<double> density;  ///< counts / (total * bin)
    long total = 0;
};

/// Lateral positions of one mode for t >= t_from over [lo, hi]; samples
/// outside the range go to the edge bins, so the counts sum to `total`.
Histogram lateral_histogram(const TrajectoryRecord& record, ModeClass mode, double t_from, double bin,
                            double lo, double hi);

/// Motorcycle samples (t >= t_from) within `band` of a lane boundary between
/// two lanes, and within `band` of a lane center.
struct LaneFormation {
    long boundary = 0;
    long center = 0;
    long total = 0;
    double ratio() const;
};

LaneFormation lane_formation(const TrajectoryRecord& record, const RoadGeometry& road, double t_from,
                             double band = 1.0);

/// Empirical CDF rows (value, cumulative probability) of sorted data.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values);

void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_fit_csv(std::ostream& out, const PiecewiseLinearFit& fit, std::size_t points);
void write_observer_csv(std::ostream& out, const ObserverSpeeds& speeds);
void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots);

}  // namespace mixsim
