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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "mixsim/analysis.hpp"

namespace mixsim {
namespace {

TrajectoryRow row(double t, int id, ModeClass mode, double x, double y, double v = 0.0) {
    return {t, id, mode, x, y, 0.0, v, std::nullopt};
}

TrajectoryRecord timeline(double duration, double interval) {
    TrajectoryRecord r;
    for (double t = 0.0; t <= duration + 1e-9; t += interval) r.rows.push_back(row(t, 0, ModeClass::Car, t, 2));
    return r;
}

std::vector<double> times_of(const std::vector<Snapshot>& s) {
    std::vector<double> out;
    for (const auto& x : s) out.push_back(x.t);
    return out;
}

TEST(Snapshots, SignalCycle) {
    const auto r = timeline(300, 1);
    EXPECT_EQ(times_of(extract_snapshots(r, 90)), (std::vector<double>{0, 90, 180, 270}));
    EXPECT_EQ(times_of(extract_snapshots(r, 300)), (std::vector<double>{0, 300}));
    EXPECT_TRUE(extract_snapshots(r, 90, 400).empty());
    EXPECT_EQ(times_of(extract_snapshots(r, 100, 50)), (std::vector<double>{50, 150, 250}));
}

TEST(Snapshots, NearestRecordedTime) {
    const auto r = timeline(10, 1);
    EXPECT_EQ(times_of(extract_snapshots(r, 2.5)), (std::vector<double>{0, 2, 5, 7, 10}));
}

TEST(Snapshots, PeriodBelowIntervalRejected) {
    const auto r = timeline(10, 1);
    EXPECT_THROW(extract_snapshots(r, 0.5), Error);
    EXPECT_THROW(extract_snapshots(r, 0.0), Error);
    EXPECT_NO_THROW(extract_snapshots(r, 1.0));
}

TEST(Spacing, Examples) {
    Snapshot two{0, {row(0, 1, ModeClass::Car, 10, 2, 5), row(0, 2, ModeClass::Car, 20, 2, 6)}};
    auto s = pairwise_spacing(two);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].id, 1);
    EXPECT_EQ(s[0].spacing, 10.0);
    EXPECT_EQ(s[0].v, 5.0);

    Snapshot between{0, {row(0, 1, ModeClass::Motorcycle, 10, 4), row(0, 2, ModeClass::Car, 20, 2),
                         row(0, 3, ModeClass::Car, 25, 6)}};
    for (const auto& x : pairwise_spacing(between)) EXPECT_NE(x.id, 1);

    Snapshot three{0, {row(0, 1, ModeClass::Car, 0, 2), row(0, 2, ModeClass::Car, 8, 2),
                       row(0, 3, ModeClass::Car, 20, 2)}};
    s = pairwise_spacing(three);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].spacing, 8.0);
    EXPECT_EQ(s[1].spacing, 12.0);

    Snapshot seam{0, {row(0, 1, ModeClass::Car, 90, 2), row(0, 2, ModeClass::Car, 5, 2)}};
    EXPECT_TRUE(pairwise_spacing(seam).size() == 1u && pairwise_spacing(seam)[0].id == 2);
    s = pairwise_spacing(seam, 100.0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].id, 1);
    EXPECT_EQ(s[0].spacing, 15.0);
}

TEST(Spacing, TranslationInvarianceProperty) {
    std::mt19937_64 gen(47);
    std::uniform_real_distribution<double> x(0, 100), shift(-250, 250);
    std::uniform_int_distribution<int> lane(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        Snapshot snap;
        for (int id = 0; id < 12; ++id) {
            snap.agents.push_back(row(0, id, id % 3 ? ModeClass::Car : ModeClass::Motorcycle, x(gen),
                                      2.0 + 4.0 * lane(gen), 1.0));
        }
        const auto base = pairwise_spacing(snap, 100.0);
        const double dx = shift(gen);
        for (auto& a : snap.agents) a.x = std::fmod(std::fmod(a.x + dx, 100.0) + 100.0, 100.0);
        const auto moved = pairwise_spacing(snap, 100.0);
        ASSERT_EQ(moved.size(), base.size());
        for (std::size_t k = 0; k < base.size(); ++k) {
            EXPECT_EQ(moved[k].id, base[k].id);
            EXPECT_NEAR(moved[k].spacing, base[k].spacing, 1e-9);
        }
    }
}

// Points from v = min(v_free, (s - s0) / T) at spacings spread over [lo, hi].
std::vector<std::pair<double, double>> planted(double v_free, double s0, double T, double lo, double hi, int n,
                                               double noise, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> s(lo, hi), e(-noise, noise);
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < n; ++k) {
        const double x = s(gen);
        out.emplace_back(x, std::min(v_free, (x - s0) / T) + (noise > 0 ? e(gen) : 0.0));
    }
    return out;
}

TEST(SpeedSpacingFit, NoiselessRecovery) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto pts = planted(10, 2, 0.9, 3, 25, 200, 0.0, seed);
        const auto fit = fit_speed_spacing(pts);
        EXPECT_FALSE(fit.degenerate);
        EXPECT_NEAR(fit.time_gap, 0.9, 1e-6);
        EXPECT_NEAR(fit.s0, 2.0, 1e-6);
        EXPECT_NEAR(fit.v_free, 10.0, 1e-6);
        EXPECT_NEAR(fit.breakpoint, 11.0, 1e-6);
        EXPECT_LT(fit.rms, 1e-6);
    }
}

TEST(SpeedSpacingFit, NoisyRecovery) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto fit = fit_speed_spacing(planted(10, 2, 0.9, 3, 25, 300, 0.1, seed));
        EXPECT_NEAR(fit.time_gap, 0.9, 0.045) << "seed " << seed;
    }
}

TEST(SpeedSpacingFit, SingleRegimeIsDegenerate) {
    std::vector<std::pair<double, double>> flat;
    for (int k = 0; k < 20; ++k) flat.emplace_back(20.0 + k, 10.0);
    EXPECT_TRUE(fit_speed_spacing(flat).degenerate);
    EXPECT_NEAR(fit_speed_spacing(flat).v_free, 10.0, 1e-12);
}

TEST(SpeedSpacingFit, TooFewPoints) {
    const auto pts = planted(10, 2, 0.9, 3, 25, 9, 0.0, 1);
    EXPECT_THROW(fit_speed_spacing(pts), Error);
}

TEST(MovingObserver, IdenticalSpeeds) {
    TrajectoryRecord r;
    for (int k = 0; k <= 20; ++k) {
        for (int id = 0; id < 5; ++id) {
            r.rows.push_back(row(k * 0.5, id, id < 3 ? ModeClass::Car : ModeClass::Motorcycle, id * 10.0, 2, 7));
        }
    }
    const auto o = moving_observer_speeds(r, 60, 2);
    EXPECT_EQ(o.car.size(), 63u);
    EXPECT_EQ(o.moto.size(), 42u);
    for (double d : o.car) EXPECT_EQ(d, 0.0);
    EXPECT_EQ(o.car_slower_fraction, 0.0);
}

TEST(MovingObserver, SlowCarAmongMotorcycles) {
    TrajectoryRecord r;
    for (int k = 0; k <= 20; ++k) {
        r.rows.push_back(row(k * 0.5, 0, ModeClass::Car, 50, 2, 3));
        for (int id = 1; id < 4; ++id) r.rows.push_back(row(k * 0.5, id, ModeClass::Motorcycle, 40 + 5.0 * id, 4, 9));
    }
    const auto o = moving_observer_speeds(r, 60, 2);
    ASSERT_EQ(o.car.size(), 21u);
    for (double d : o.car) EXPECT_DOUBLE_EQ(d, 6.0);
    EXPECT_EQ(o.car_slower_fraction, 1.0);
}

TEST(MovingObserver, WindowIsCentered) {
    TrajectoryRecord r;
    r.rows.push_back(row(0, 0, ModeClass::Car, 50, 2, 3));
    r.rows.push_back(row(0, 1, ModeClass::Car, 79, 2, 5));
    r.rows.push_back(row(0, 2, ModeClass::Car, 19.5, 2, 100));
    const auto o = moving_observer_speeds(r, 60, 2);
    EXPECT_DOUBLE_EQ(o.car.front(), 2.0);
}

TEST(Histogram, MassConservationProperty) {
    std::mt19937_64 gen(53);
    std::uniform_real_distribution<double> y(-3, 15), t(0, 100);
    TrajectoryRecord r;
    long expected = 0;
    for (int k = 0; k < 5000; ++k) {
        const double tt = t(gen);
        const auto mode = k % 2 ? ModeClass::Car : ModeClass::Motorcycle;
        r.rows.push_back(row(tt, k, mode, 0, y(gen)));
        expected += mode == ModeClass::Motorcycle && tt >= 40;
    }
    const auto h = lateral_histogram(r, ModeClass::Motorcycle, 40, 0.25, 0, 12);
    EXPECT_EQ(h.counts.size(), 48u);
    EXPECT_EQ(h.total, expected);
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), 0L), expected);
    EXPECT_NEAR(std::accumulate(h.density.begin(), h.density.end(), 0.0) * h.bin, 1.0, 1e-12);
}

TEST(Histogram, CarSpikesAndEmptySelection) {
    TrajectoryRecord r;
    for (int k = 0; k < 9; ++k) r.rows.push_back(row(k, k, ModeClass::Car, 0, 2.0 + 4.0 * (k % 3)));
    const auto h = lateral_histogram(r, ModeClass::Car, 0, 0.25, 0, 12);
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const bool spike = b == 8 || b == 24 || b == 40;
        EXPECT_EQ(h.counts[b], spike ? 3 : 0) << b;
    }
    const auto none = lateral_histogram(r, ModeClass::Motorcycle, 0, 0.25, 0, 12);
    EXPECT_EQ(none.total, 0);
    EXPECT_TRUE(std::all_of(none.density.begin(), none.density.end(), [](double d) { return d == 0.0; }));
}

TEST(LaneFormation, CountsBands) {
    TrajectoryRecord r;
    const double ys[] = {4.0, 8.5, 3.0, 2.0, 6.9, 11.0, 0.8};
    for (int k = 0; k < 7; ++k) r.rows.push_back(row(250, k, ModeClass::Motorcycle, 0, ys[k]));
    r.rows.push_back(row(100, 9, ModeClass::Motorcycle, 0, 4.0));
    r.rows.push_back(row(250, 10, ModeClass::Car, 0, 4.0));
    const auto f = lane_formation(r, RoadGeometry{}, 240);
    EXPECT_EQ(f.total, 7);
    EXPECT_EQ(f.boundary, 3);  // 4.0, 8.5, 3.0
    EXPECT_EQ(f.center, 4);    // 3.0, 2.0, 6.9, 11.0 (0.8 is outside both)
    EXPECT_DOUBLE_EQ(f.ratio(), 0.75);
}

TEST(EmpiricalCdf, Sorted) {
    const auto c = empirical_cdf({3, 1, 2, 2});
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c[0], (std::pair<double, double>{1, 0.25}));
    EXPECT_EQ(c[3], (std::pair<double, double>{3, 1.0}));
}

TEST(AnalysisCsv, Headers) {
    std::ostringstream h, f, o;
    write_histogram_csv(h, lateral_histogram(timeline(5, 1), ModeClass::Car, 0, 4, 0, 12));
    write_fit_csv(f, fit_speed_spacing(planted(10, 2, 0.9, 3, 25, 50, 0.0, 3)), 50);
    write_observer_csv(o, ObserverSpeeds{{0.5}, {-0.5}, 0.0});
    EXPECT_EQ(h.str(), "y_lo,y_hi,count,density\n0,4,6,0.25\n4,8,0,0\n8,12,0,0\n");
    EXPECT_EQ(f.str().substr(0, f.str().find('\n')), "breakpoint,time_gap,v_free,s0,rms,points,degenerate");
    EXPECT_EQ(o.str(), "mode,delta_v,cdf\ncar,0.5,1\nmoto,-0.5,1\n");
}

}  // namespace
}  // namespace mixsim
