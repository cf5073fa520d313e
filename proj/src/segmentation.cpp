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

#include "mixsim/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace mixsim {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a == -kPi ? kPi : a;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Lateral offset at arc length s by linear interpolation.
double lateral_at(const PhasedTrajectory& pt, double s) {
    const auto& v = pt.samples;
    if (s <= v.front().s) return v.front().lateral;
    if (s >= v.back().s) return v.back().lateral;
    auto it = std::upper_bound(v.begin(), v.end(), s, [](double x, const PhaseSample& p) { return x < p.s; });
    const PhaseSample& b = *it;
    const PhaseSample& a = *(it - 1);
    return a.lateral + (b.lateral - a.lateral) * (s - a.s) / (b.s - a.s);
}

std::size_t nearest_index(const PhasedTrajectory& pt, double s) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pt.samples.size(); ++k) {
        if (std::abs(pt.samples[k].s - s) < std::abs(pt.samples[best].s - s)) best = k;
    }
    return best;
}

struct Extremum {
    std::size_t index;
    bool minimum;
};

// Local extrema of the lateral offset. Plateaus are compressed to one
// extremum at their middle; the two ends of the path count as extrema.
std::vector<Extremum> lateral_extrema(const PhasedTrajectory& pt) {
    struct Run {
        double value;
        std::size_t first, last;
    };
    std::vector<Run> runs;
    for (std::size_t k = 0; k < pt.samples.size(); ++k) {
        const double y = pt.samples[k].lateral;
        if (!runs.empty() && runs.back().value == y) {
            runs.back().last = k;
        } else {
            runs.push_back({y, k, k});
        }
    }
    std::vector<Extremum> out;
    if (runs.size() < 2) return out;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const double y = runs[r].value;
        if (r == 0) {
            out.push_back({0, runs[1].value > y});
        } else if (r + 1 == runs.size()) {
            out.push_back({pt.samples.size() - 1, runs[r - 1].value > y});
        } else {
            const double lo = runs[r - 1].value;
            const double hi = runs[r + 1].value;
            if (lo < y && hi < y) out.push_back({(runs[r].first + runs[r].last) / 2, false});
            if (lo > y && hi > y) out.push_back({(runs[r].first + runs[r].last) / 2, true});
        }
    }
    return out;
}

// Sign of the mean deviation from the chord; used when an interval has no
// extremum to go by. Below the chord is convex.
Convexity chord_convexity(const PhasedTrajectory& pt, std::size_t first, std::size_t last) {
    const PhaseSample& a = pt.samples[first];
    const PhaseSample& b = pt.samples[last];
    double dev = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
        const double u = b.s > a.s ? (pt.samples[k].s - a.s) / (b.s - a.s) : 0.0;
        dev += pt.samples[k].lateral - (a.lateral + u * (b.lateral - a.lateral));
    }
    return dev > 0.0 ? Convexity::Concave : Convexity::Convex;
}

std::string_view label_of(const std::optional<Direction>& d) {
    if (!d) return "lane-keeping";
    return *d == Direction::Left ? "maneuver-left" : "maneuver-right";
}

}  // namespace

std::string_view to_string(Convexity c) { return c == Convexity::Convex ? "convex" : "concave"; }

PhaseResult compute_phase(std::span<const TrajectoryRow> rows, const PhaseOptions& options) {
    PhaseResult result;
    if (rows.size() < 2) {
        result.status = PhaseStatus::TooShort;
        return result;
    }

    auto sample = [&](const TrajectoryRow& r, double ux, double s) {
        const double road = r.theta_road.value_or(options.road_azimuth);
        return PhaseSample{s, r.t, wrap_angle(r.theta - road), -std::sin(road) * ux + std::cos(road) * r.y};
    };

    double ux = rows[0].x;  // x unwrapped across the period
    double s = 0.0;
    bool moving = false;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        double dx = rows[k].x - rows[k - 1].x;
        if (options.road_length) dx -= *options.road_length * std::floor(dx / *options.road_length + 0.5);
        const double dy = rows[k].y - rows[k - 1].y;
        const double step = std::hypot(dx, dy);
        const double prev_ux = ux;
        ux += dx;
        if (step < options.stationary_step) {
            moving = false;
            continue;
        }
        if (!moving) {
            PhasedTrajectory piece;
            piece.id = rows[k].id;
            piece.mode = rows[k].mode;
            piece.samples.push_back(sample(rows[k - 1], prev_ux, s));
            result.pieces.push_back(std::move(piece));
            moving = true;
        }
        s += step;
        result.pieces.back().samples.push_back(sample(rows[k], ux, s));
    }
    if (result.pieces.empty()) result.status = PhaseStatus::AllStationary;
    return result;
}

std::vector<SteeringEvent> detect_steering_events(const PhasedTrajectory& pt, const SegmentationOptions& options) {
    const auto& v = pt.samples;
    std::vector<SteeringEvent> raw;
    if (v.size() < 3) return raw;

    std::optional<std::size_t> last;  // index of the last nonzero gradient
    double g_last = 0.0;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        const double ds = v[k + 1].s - v[k - 1].s;
        double g = wrap_angle(v[k + 1].phi - v[k - 1].phi) / ds;
        if (std::abs(g) <= options.gradient_floor) g = 0.0;
        if (g == 0.0) continue;
        if (last && sign_of(g) != sign_of(g_last)) {
            const double u = g_last / (g_last - g);
            const PhaseSample& a = v[*last];
            const PhaseSample& b = v[k];
            const double s = a.s + u * (b.s - a.s);
            raw.push_back({u < 0.5 ? *last : k, s, a.t + u * (b.t - a.t)});
        }
        last = k;
        g_last = g;
    }

    std::vector<SteeringEvent> merged;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].s - raw[j - 1].s < options.merge_distance) ++j;
        if (j == i + 1) {
            merged.push_back(raw[i]);
        } else {
            double s = 0.0, t = 0.0;
            for (std::size_t m = i; m < j; ++m) {
                s += raw[m].s;
                t += raw[m].t;
            }
            const double n = static_cast<double>(j - i);
            merged.push_back({nearest_index(pt, s / n), s / n, t / n});
        }
        i = j;
    }
    return merged;
}

Segmentation classify_segments(const PhasedTrajectory& pt, std::span<const SteeringEvent> events,
                               const SegmentationOptions& options) {
    Segmentation out;
    const auto& v = pt.samples;
    if (v.empty()) return out;

    std::vector<double> bounds{v.front().s};
    for (const auto& e : events) {
        if (e.s > bounds.back() && e.s < v.back().s) bounds.push_back(e.s);
    }
    bounds.push_back(v.back().s);

    const auto extrema = lateral_extrema(pt);
    std::vector<std::size_t> chain;
    for (std::size_t m = 0; m + 1 < bounds.size(); ++m) {
        IntervalLabel label;
        label.s_start = bounds[m];
        label.s_end = bounds[m + 1];
        std::size_t k = 0;
        while (k + 1 < v.size() && v[k].s < label.s_start) ++k;
        label.first = k;
        while (k + 1 < v.size() && v[k + 1].s <= label.s_end) ++k;
        label.last = k;
        label.few_samples = label.last < label.first + 2;

        if (!label.few_samples) {
            const double mid = 0.5 * (label.s_start + label.s_end);
            const Extremum* best = nullptr;
            for (const auto& e : extrema) {
                const double s = v[e.index].s;
                if (s < label.s_start || s > label.s_end) continue;
                if (!best || std::abs(s - mid) < std::abs(v[best->index].s - mid)) best = &e;
            }
            if (best) {
                label.extremum = best->index;
                label.convexity = best->minimum ? Convexity::Convex : Convexity::Concave;
                if (chain.empty() || chain.back() != best->index) chain.push_back(best->index);
            } else {
                label.convexity = chord_convexity(pt, label.first, label.last);
            }
        } else {
            label.convexity = chord_convexity(pt, label.first, label.last);
        }
        out.intervals.push_back(label);
    }

    // Monotonic runs along the chain of chosen extrema.
    for (std::size_t p = 0; p + 1 < chain.size();) {
        const int dir = sign_of(v[chain[p + 1]].lateral - v[chain[p]].lateral);
        std::size_t q = p + 1;
        while (dir != 0 && q + 1 < chain.size() && sign_of(v[chain[q + 1]].lateral - v[chain[q]].lateral) == dir) ++q;
        const double shift = v[chain[q]].lateral - v[chain[p]].lateral;
        if (std::abs(shift) > options.maneuver_threshold) {
            out.maneuvers.push_back({v[chain[p]].s, v[chain[q]].s, shift, shift > 0.0 ? Direction::Left : Direction::Right});
        }
        p = q;
    }

    for (auto& label : out.intervals) {
        if (label.few_samples) continue;
        for (const auto& m : out.maneuvers) {
            if (std::min(label.s_end, m.s_end) - std::max(label.s_start, m.s_start) > 0.0) label.maneuver = m.direction;
        }
    }

    auto interval_at = [&](double s) -> const IntervalLabel& {
        std::size_t m = 0;
        while (m + 1 < out.intervals.size() && out.intervals[m + 1].s_start <= s) ++m;
        return out.intervals[m];
    };
    auto keep_lane = [&](double from, double to) {
        std::vector<double> cuts{from};
        for (std::size_t m = 1; m + 1 < bounds.size(); ++m) {
            if (bounds[m] > from && bounds[m] < to) cuts.push_back(bounds[m]);
        }
        cuts.push_back(to);
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double a = cuts[c], b = cuts[c + 1];
            if (!(b > a)) continue;
            out.segments.push_back({a, b, interval_at(0.5 * (a + b)).convexity, std::nullopt,
                                    lateral_at(pt, b) - lateral_at(pt, a)});
        }
    };
    double cursor = v.front().s;
    for (const auto& m : out.maneuvers) {
        keep_lane(cursor, m.s_start);
        out.segments.push_back({m.s_start, m.s_end, interval_at(m.s_start).convexity, m.direction, m.shift});
        cursor = m.s_end;
    }
    keep_lane(cursor, v.back().s);
    return out;
}

std::vector<AgentSegmentation> segment_record(const TrajectoryRecord& record, const PhaseOptions& phase,
                                              const SegmentationOptions& options) {
    std::vector<AgentSegmentation> result;
    for (const auto& [id, rows] : record.by_agent()) {
        AgentSegmentation agent;
        agent.id = id;
        agent.mode = rows.front().mode;
        const PhaseResult phased = compute_phase(rows, phase);
        agent.status = phased.status;
        for (const auto& piece : phased.pieces) {
            auto events = detect_steering_events(piece, options);
            auto seg = classify_segments(piece, events, options);
            agent.events.insert(agent.events.end(), events.begin(), events.end());
            agent.maneuvers.insert(agent.maneuvers.end(), seg.maneuvers.begin(), seg.maneuvers.end());
            agent.segments.insert(agent.segments.end(), seg.segments.begin(), seg.segments.end());
        }
        result.push_back(std::move(agent));
    }
    return result;
}

void write_events_csv(std::ostream& out, std::span<const AgentSegmentation> result) {
    out << kEventsHeader << '\n';
    for (const auto& a : result) {
        for (const auto& e : a.events) out << a.id << ',' << format_double(e.s) << ',' << format_double(e.t) << '\n';
    }
}

void write_segments_csv(std::ostream& out, std::span<const AgentSegmentation> result) {
    out << kSegmentsHeader << '\n';
    for (const auto& a : result) {
        for (const auto& s : a.segments) {
            out << a.id << ',' << format_double(s.s_start) << ',' << format_double(s.s_end) << ','
                << to_string(s.convexity) << ',' << label_of(s.maneuver) << ',' << format_double(s.shift) << '\n';
        }
    }
}

}  // namespace mixsim
