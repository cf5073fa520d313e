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

// mixsim: simulate / segment / analyze.
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 runtime
// failure (collision, sampler, I/O, malformed input).

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mixsim/analysis.hpp"
#include "mixsim/config.hpp"
#include "mixsim/engine.hpp"
#include "mixsim/segmentation.hpp"

namespace fs = std::filesystem;
using namespace mixsim;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

const std::vector<std::string> kMetrics{"histogram", "fd", "observer", "snapshots"};

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

struct SimulateArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string trajectory;
    std::string manifest;
};

int simulate(const SimulateArgs& args) {
    SimulationConfig config;
    try {
        if (!args.config.empty()) load_config_file(args.config, config);
        for (const auto& kv : args.overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError(kv, "override must be key=value");
            apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        config.validate();
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kInvalid;
    } catch (const ParseError& e) {
        std::cerr << args.config << ": " << e.what() << '\n';
        return kInvalid;
    }

    const fs::path dir = args.out_dir;
    const fs::path traj = args.trajectory.empty() ? dir / "trajectory.csv" : fs::path(args.trajectory);
    const fs::path manifest = args.manifest.empty() ? dir / "manifest.cfg" : fs::path(args.manifest);
    {
        auto out = open_out(manifest);
        write_manifest(out, config);
    }
    try {
        const RunResult result = run(config);
        auto out = open_out(traj);
        write_trajectory_csv(out, result.record);
        if (!out) throw Error("failed writing " + traj.string());
    } catch (const CollisionError& e) {
        std::cerr << "audit failure: " << e.what() << '\n';
        return kRuntime;
    }
    std::cout << "wrote " << traj.string() << " and " << manifest.string() << '\n';
    return kOk;
}

struct SegmentArgs {
    std::string input;
    double road_azimuth = 0.0;
    std::optional<double> road_length;
    double threshold = 1.0;
    std::string out_dir = ".";
};

std::string_view status_name(PhaseStatus s) {
    switch (s) {
        case PhaseStatus::Ok: return "ok";
        case PhaseStatus::AllStationary: return "stationary";
        case PhaseStatus::TooShort: return "too-short";
    }
    return "?";
}

int segment(const SegmentArgs& args) {
    const TrajectoryRecord record = read_trajectory_csv(args.input);
    PhaseOptions phase;
    phase.road_azimuth = args.road_azimuth;
    phase.road_length = args.road_length;
    SegmentationOptions options;
    options.maneuver_threshold = args.threshold;
    const auto result = segment_record(record, phase, options);

    const fs::path dir = args.out_dir;
    {
        auto out = open_out(dir / "events.csv");
        write_events_csv(out, result);
    }
    {
        auto out = open_out(dir / "segments.csv");
        write_segments_csv(out, result);
    }
    if (result.empty()) std::cerr << "warning: " << args.input << " contains no trajectories\n";
    for (const auto& a : result) {
        std::cout << "id=" << a.id << " mode=" << to_string(a.mode) << " status=" << status_name(a.status)
                  << " events=" << a.events.size() << " maneuvers=" << a.maneuvers.size() << '\n';
    }
    return kOk;
}

struct AnalyzeArgs {
    std::string input;
    std::vector<std::string> metrics;
    std::string histogram_mode;
    double from = 0.0;
    double bin = 0.25;
    std::vector<double> y_range{0.0, 12.0};
    bool fd = false;
    std::string fd_mode = "car";
    double period = 90.0;
    double offset = 0.0;
    std::vector<double> observer;
    bool snapshots = false;
    std::optional<double> road_length;
    std::string out_dir = ".";
};

int analyze(AnalyzeArgs args) {
    std::set<std::string> wanted(args.metrics.begin(), args.metrics.end());
    for (const auto& m : wanted) {
        if (std::find(kMetrics.begin(), kMetrics.end(), m) == kMetrics.end()) {
            std::cerr << "unknown metric '" << m << "'; valid metrics:";
            for (const auto& k : kMetrics) std::cerr << ' ' << k;
            std::cerr << '\n';
            return kInvalid;
        }
    }
    std::optional<ModeClass> hist_mode;
    if (!args.histogram_mode.empty()) {
        hist_mode = parse_mode(args.histogram_mode);
        if (!hist_mode) {
            std::cerr << "unknown mode '" << args.histogram_mode << "' (car|moto)\n";
            return kInvalid;
        }
        wanted.insert("histogram");
    }
    if (wanted.count("histogram") && !hist_mode) hist_mode = ModeClass::Motorcycle;
    if (args.fd) wanted.insert("fd");
    if (!args.observer.empty()) wanted.insert("observer");
    if (args.snapshots) wanted.insert("snapshots");
    if (wanted.count("observer") && args.observer.empty()) args.observer = {60.0, 2.0};
    std::optional<ModeClass> fd_mode;
    if (args.fd_mode != "all") {
        fd_mode = parse_mode(args.fd_mode);
        if (!fd_mode) {
            std::cerr << "unknown fd mode '" << args.fd_mode << "' (car|moto|all)\n";
            return kInvalid;
        }
    }
    if (wanted.empty()) {
        std::cerr << "nothing to do; request at least one of:";
        for (const auto& k : kMetrics) std::cerr << ' ' << k;
        std::cerr << '\n';
        return kInvalid;
    }

    const TrajectoryRecord record = read_trajectory_csv(args.input);
    const fs::path dir = args.out_dir;

    if (wanted.count("histogram")) {
        const Histogram h = lateral_histogram(record, *hist_mode, args.from, args.bin, args.y_range[0], args.y_range[1]);
        auto out = open_out(dir / "histogram.csv");
        write_histogram_csv(out, h);
        std::cout << "histogram: " << h.total << " samples\n";
    }
    if (wanted.count("snapshots") || wanted.count("fd")) {
        const auto snaps = extract_snapshots(record, args.period, args.offset);
        if (wanted.count("snapshots")) {
            auto out = open_out(dir / "snapshots.csv");
            write_snapshots_csv(out, snaps);
            std::cout << "snapshots: " << snaps.size() << '\n';
        }
        if (wanted.count("fd")) {
            std::vector<std::pair<double, double>> points;
            for (const auto& s : snaps) {
                for (const auto& p : pairwise_spacing(s, args.road_length)) {
                    if (!fd_mode || p.mode == *fd_mode) points.emplace_back(p.spacing, p.v);
                }
            }
            const PiecewiseLinearFit fit = fit_speed_spacing(points);
            auto out = open_out(dir / "fd_fit.csv");
            write_fit_csv(out, fit, points.size());
            std::cout << "fd: T=" << format_double(fit.time_gap) << " s_c=" << format_double(fit.breakpoint)
                      << " v_free=" << format_double(fit.v_free) << (fit.degenerate ? " (degenerate)" : "") << '\n';
        }
    }
    if (wanted.count("observer")) {
        const ObserverSpeeds speeds = moving_observer_speeds(record, args.observer[0], args.observer[1], args.road_length);
        auto out = open_out(dir / "observer_cdf.csv");
        write_observer_csv(out, speeds);
        std::cout << "observer: car samples slower than neighborhood " << format_double(speeds.car_slower_fraction)
                  << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed car/motorcycle traffic simulator and trajectory analysis"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Run a simulation; writes trajectory.csv and manifest.cfg");
    cmd_sim->add_option("-c,--config", sim.config, "key=value configuration file")->check(CLI::ExistingFile);
    cmd_sim->add_option("-s,--set", sim.overrides, "Override one setting, key=value (repeatable)");
    cmd_sim->add_option("-o,--output-dir", sim.out_dir, "Output directory");
    cmd_sim->add_option("--trajectory", sim.trajectory, "Trajectory CSV path (overrides the output directory)");
    cmd_sim->add_option("--manifest", sim.manifest, "Manifest path (overrides the output directory)");

    SegmentArgs seg;
    auto* cmd_seg = app.add_subcommand("segment", "Detect steering events and maneuvers; writes events.csv and segments.csv");
    cmd_seg->add_option("input", seg.input, "Trajectory CSV")->required()->check(CLI::ExistingFile);
    cmd_seg->add_option("--road-azimuth", seg.road_azimuth, "Road azimuth [rad] for rows without theta_road");
    cmd_seg->add_option("--road-length", seg.road_length, "Period of x for ring-road input [m]");
    cmd_seg->add_option("--threshold", seg.threshold, "Maneuver lateral shift threshold [m]");
    cmd_seg->add_option("-o,--output-dir", seg.out_dir, "Output directory");

    AnalyzeArgs ana;
    auto* cmd_ana = app.add_subcommand("analyze", "Histograms, speed-spacing fit, moving-observer speeds, snapshots");
    cmd_ana->add_option("input", ana.input, "Trajectory CSV")->required()->check(CLI::ExistingFile);
    cmd_ana->add_option("-m,--metric", ana.metrics, "Metric to compute (repeatable)");
    cmd_ana->add_option("--histogram", ana.histogram_mode, "Lateral histogram of one mode (car|moto)");
    cmd_ana->add_option("--from", ana.from, "Histogram start time [s]");
    cmd_ana->add_option("--bin", ana.bin, "Histogram bin width [m]");
    cmd_ana->add_option("--y-range", ana.y_range, "Histogram range [m]")->expected(2);
    cmd_ana->add_flag("--fd", ana.fd, "Piecewise-linear speed-spacing fit over snapshots");
    cmd_ana->add_option("--fd-mode", ana.fd_mode, "Subjects of the fit (car|moto|all)");
    cmd_ana->add_option("--period", ana.period, "Snapshot period [s]");
    cmd_ana->add_option("--offset", ana.offset, "First snapshot time [s]");
    cmd_ana->add_option("--observer", ana.observer, "Moving-observer window: width [m] and duration [s]")->expected(2);
    cmd_ana->add_flag("--snapshots", ana.snapshots, "Write the extracted snapshots");
    cmd_ana->add_option("--road-length", ana.road_length, "Period of x for ring-road input [m]");
    cmd_ana->add_option("-o,--output-dir", ana.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*cmd_sim) return simulate(sim);
        if (*cmd_seg) return segment(seg);
        if (*cmd_ana) return analyze(ana);
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kInvalid;
    } catch (const ParseError& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kRuntime;
}
