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

#include <limits>

namespace mixsim {

/// How the lateral half-widths entering the leader-corridor test are measured.
enum class CorridorWidth {
    /// Body extent perpendicular to the follower's heading.
    Lateral,
    /// Central radius along the line joining the two centers.
    Interaction,
};

/// Model and integration parameters. Defaults are the calibrated values for
/// mixed car/motorcycle traffic.
struct ModelParams {
    double k = 0.1;        ///< repulsion intensity
    double D = 3.0;        ///< repulsion range [m]
    double T = 0.9;        ///< time gap [s]
    double dt = 0.05;      ///< integration step [s]
    double tau = 0.3;      ///< heading relaxation time [s]
    double t_a = 0.88;     ///< anticipation horizon [s]
    double v0_moto = 10.0;
    double v0_car = 8.85;
    double epsilon = std::numeric_limits<double>::epsilon();
    /// Look-ahead distance of the lateral target direction [m].
    double d_look = 10.0;
    /// Interaction cutoff [m]; 0 disables it (exact pairwise evaluation).
    double cutoff = 0.0;
    CorridorWidth corridor = CorridorWidth::Interaction;

    double k_curb() const { return 2.0 * k; }
    double D_curb() const { return D; }
};

}  // namespace mixsim
