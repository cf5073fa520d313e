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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixsim/geometry.hpp"

namespace mixsim {

struct TrajectoryRow {
    double t = 0.0;
    int id = 0;
    ModeClass mode = ModeClass::Car;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  ///< heading angle [rad]
    double v = 0.0;
    std::optional<double> theta_road;  ///< only present in external files
};

/// Time-indexed agent states, in recording order (time-major).
struct TrajectoryRecord {
    std::vector<TrajectoryRow> rows;

    void append(double t, std::span<const AgentState> agents);
    bool empty() const { return rows.empty(); }
    /// Distinct sample times in increasing order.
    std::vector<double> times() const;
    /// Rows grouped per agent id, each group in time order.
    std::map<int, std::vector<TrajectoryRow>> by_agent() const;
};

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

inline constexpr const char* kTrajectoryHeader = "t,id,mode,x,y,theta,v";

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record);

/// Reads the engine format; columns are located by header name, so extra
/// columns are ignored and an optional `theta_road` column is picked up.
/// `v` may be absent (read as 0). Throws ParseError with the line number.
TrajectoryRecord read_trajectory_csv(std::istream& in);
TrajectoryRecord read_trajectory_csv(const std::string& path);

}  // namespace mixsim
