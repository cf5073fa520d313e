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

#include "mixsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace mixsim {

namespace {

constexpr double kTimeTol = 1e-9;

double wrapped_dx(double dx, std::optional<double> length) {
    if (length) dx -= *length * std::floor(dx / *length + 0.5);
    return dx;
}

double half_width(ModeClass mode) { return BodyShape::for_mode(mode).semi_axis_lateral; }

struct LineFit {
    double a = 0.0;  // intercept (plateau)
    double b = 0.0;  // slope
    double sse = 0.0;
    long below = 0;  // points strictly left of the breakpoint
};

// Least squares of v = a + b * min(s - sc, 0).
LineFit fit_at(std::span<const std::pair<double, double>> pts, double sc) {
    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sv = 0.0;
    LineFit f;
    for (const auto& [s, v] : pts) {
        const double x = std::min(s - sc, 0.0);
        sx += x;
        sv += v;
        if (s < sc) ++f.below;
    }
    const double mx = sx / n, mv = sv / n;
    double sxx = 0.0, sxv = 0.0;
    for (const auto& [s, v] : pts) {
        const double x = std::min(s - sc, 0.0) - mx;
        sxx += x * x;
        sxv += x * (v - mv);
    }
    f.b = sxx > 0.0 ? sxv / sxx : 0.0;
    f.a = mv - f.b * mx;
    for (const auto& [s, v] : pts) {
        const double r = v - (f.a + f.b * std::min(s - sc, 0.0));
        f.sse += r * r;
    }
    return f;
}

}  // namespace

std::vector<Snapshot> extract_snapshots(const TrajectoryRecord& record, double period, double offset) {
    if (!(period > 0.0)) throw Error("snapshot period must be positive");
    std::map<double, std::vector<TrajectoryRow>> by_time;
    for (const auto& r : record.rows) by_time[r.t].push_back(r);
    std::vector<Snapshot> out;
    if (by_time.empty()) return out;

    std::vector<double> times;
    for (const auto& [t, rows] : by_time) times.push_back(t);
    double interval = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < times.size(); ++k) interval = std::min(interval, times[k] - times[k - 1]);
    if (period < interval - kTimeTol) {
        throw Error("snapshot period " + format_double(period) + " s is below the recording interval " +
                    format_double(interval) + " s");
    }

    for (long k = 0;; ++k) {
        const double target = offset + static_cast<double>(k) * period;
        if (target > times.back() + kTimeTol) break;
        if (target < times.front() - kTimeTol - 0.5 * interval) continue;
        auto it = std::lower_bound(times.begin(), times.end(), target);
        if (it == times.end() || (it != times.begin() && target - *(it - 1) <= *it - target)) --it;
        if (!out.empty() && out.back().t == *it) continue;
        out.push_back({*it, by_time[*it]});
    }
    return out;
}

std::vector<SpacingSample> pairwise_spacing(const Snapshot& snapshot, std::optional<double> road_length) {
    std::vector<SpacingSample> out;
    const auto& a = snapshot.agents;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j == i) continue;
            const double dx = wrapped_dx(a[j].x - a[i].x, road_length);
            const double dy = a[j].y - a[i].y;
            if (!(dx > 0.0)) continue;
            if (!(std::abs(dy) < half_width(a[i].mode) + half_width(a[j].mode))) continue;
            best = std::min(best, std::hypot(dx, dy));
        }
        if (std::isfinite(best)) out.push_back({a[i].id, a[i].mode, best, a[i].v});
    }
    return out;
}

PiecewiseLinearFit fit_speed_spacing(std::span<const std::pair<double, double>> points) {
    if (points.size() < 10) {
        throw Error("speed-spacing fit needs at least 10 points, got " + std::to_string(points.size()));
    }
    double lo = points.front().first, hi = lo;
    for (const auto& p : points) {
        lo = std::min(lo, p.first);
        hi = std::max(hi, p.first);
    }

    constexpr double kGrid = 0.1;
    double best_sc = lo;
    double best_sse = fit_at(points, lo).sse;
    const long steps = static_cast<long>(std::ceil((hi - lo) / kGrid));
    for (long k = 1; k <= steps; ++k) {
        const double sc = std::min(hi, lo + static_cast<double>(k) * kGrid);
        const double sse = fit_at(points, sc).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_sc = sc;
        }
    }

    // Golden-section refinement around the best grid node.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(lo, best_sc - kGrid), b = std::min(hi, best_sc + kGrid);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = fit_at(points, c).sse, fd = fit_at(points, d).sse;
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(best_sc)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = fit_at(points, c).sse;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = fit_at(points, d).sse;
        }
    }
    const double refined = 0.5 * (a + b);
    if (fit_at(points, refined).sse <= best_sse) best_sc = refined;

    const LineFit f = fit_at(points, best_sc);
    PiecewiseLinearFit out;
    out.breakpoint = best_sc;
    out.v_free = f.a;
    out.rms = std::sqrt(f.sse / static_cast<double>(points.size()));
    const auto n = static_cast<long>(points.size());
    out.degenerate = !(f.b > 0.0) || f.below < 2 || n - f.below < 2;
    if (f.b > 0.0) {
        out.time_gap = 1.0 / f.b;
        out.s0 = best_sc - f.a / f.b;
    }
    return out;
}

ObserverSpeeds moving_observer_speeds(const TrajectoryRecord& record, double window_x, double window_t,
                                      std::optional<double> road_length) {
    if (!(window_x > 0.0) || !(window_t > 0.0)) throw Error("observer windows must be positive");
    std::map<double, std::vector<const TrajectoryRow*>> by_time;
    for (const auto& r : record.rows) by_time[r.t].push_back(&r);

    ObserverSpeeds out;
    long slower = 0;
    for (auto it = by_time.begin(); it != by_time.end(); ++it) {
        auto from = by_time.lower_bound(it->first - 0.5 * window_t - kTimeTol);
        auto to = by_time.upper_bound(it->first + 0.5 * window_t + kTimeTol);
        for (const TrajectoryRow* r : it->second) {
            double sum = 0.0;
            long n = 0;
            for (auto w = from; w != to; ++w) {
                for (const TrajectoryRow* o : w->second) {
                    if (o->id == r->id) continue;
                    if (std::abs(wrapped_dx(o->x - r->x, road_length)) > 0.5 * window_x) continue;
                    sum += o->v;
                    ++n;
                }
            }
            if (n == 0) continue;
            const double diff = sum / static_cast<double>(n) - r->v;
            if (r->mode == ModeClass::Car) {
                out.car.push_back(diff);
                if (diff > 0.0) ++slower;
            } else {
                out.moto.push_back(diff);
            }
        }
    }
    if (!out.car.empty()) out.car_slower_fraction = static_cast<double>(slower) / static_cast<double>(out.car.size());
    return out;
}

Histogram lateral_histogram(const TrajectoryRecord& record, ModeClass mode, double t_from, double bin, double lo,
                            double hi) {
    if (!(bin > 0.0)) throw Error("histogram bin must be positive");
    if (!(hi > lo)) throw Error("histogram range is empty");
    Histogram h;
    h.lo = lo;
    h.bin = bin;
    const auto nbins = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / bin - 1e-9)));
    h.counts.assign(nbins, 0);
    for (const auto& r : record.rows) {
        if (r.mode != mode || r.t < t_from - kTimeTol) continue;
        const double u = std::floor((r.y - lo) / bin);
        const auto k = static_cast<std::size_t>(std::clamp(u, 0.0, static_cast<double>(nbins - 1)));
        ++h.counts[k];
        ++h.total;
    }
    h.density.assign(nbins, 0.0);
    if (h.total > 0) {
        for (std::size_t k = 0; k < nbins; ++k) {
            h.density[k] = static_cast<double>(h.counts[k]) / (static_cast<double>(h.total) * bin);
        }
    }
    return h;
}

double LaneFormation::ratio() const {
    if (center == 0) return boundary > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    return static_cast<double>(boundary) / static_cast<double>(center);
}

LaneFormation lane_formation(const TrajectoryRecord& record, const RoadGeometry& road, double t_from, double band) {
    LaneFormation out;
    for (const auto& r : record.rows) {
        if (r.mode != ModeClass::Motorcycle || r.t < t_from - kTimeTol) continue;
        ++out.total;
        bool near_boundary = false, near_center = false;
        for (int k = 1; k < road.n_lanes; ++k) {
            near_boundary |= std::abs(r.y - road.lane_width * k) <= band;
        }
        for (int k = 0; k < road.n_lanes; ++k) near_center |= std::abs(r.y - road.lane_center(k)) <= band;
        out.boundary += near_boundary;
        out.center += near_center;
    }
    return out;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, double>> out;
    const double n = static_cast<double>(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) out.emplace_back(values[k], static_cast<double>(k + 1) / n);
    return out;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << "y_lo,y_hi,count,density\n";
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        const double a = h.lo + static_cast<double>(k) * h.bin;
        out << format_double(a) << ',' << format_double(a + h.bin) << ',' << h.counts[k] << ','
            << format_double(h.density[k]) << '\n';
    }
}

void write_fit_csv(std::ostream& out, const PiecewiseLinearFit& fit, std::size_t points) {
    out << "breakpoint,time_gap,v_free,s0,rms,points,degenerate\n"
        << format_double(fit.breakpoint) << ',' << format_double(fit.time_gap) << ',' << format_double(fit.v_free)
        << ',' << format_double(fit.s0) << ',' << format_double(fit.rms) << ',' << points << ','
        << (fit.degenerate ? "true" : "false") << '\n';
}

void write_observer_csv(std::ostream& out, const ObserverSpeeds& speeds) {
    out << "mode,delta_v,cdf\n";
    for (const auto& [mode, values] : {std::pair{"car", &speeds.car}, std::pair{"moto", &speeds.moto}}) {
        for (const auto& [x, p] : empirical_cdf(*values)) out << mode << ',' << format_double(x) << ',' << format_double(p) << '\n';
    }
}

void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots) {
    TrajectoryRecord flat;
    for (const auto& s : snapshots) flat.rows.insert(flat.rows.end(), s.agents.begin(), s.agents.end());
    write_trajectory_csv(out, flat);
}

}  // namespace mixsim
