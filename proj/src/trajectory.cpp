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

#include "mixsim/trajectory.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace mixsim {

void TrajectoryRecord::append(double t, std::span<const AgentState> agents) {
    for (const AgentState& a : agents) {
        rows.push_back({t, a.id, a.mode, a.position.x, a.position.y,
                        std::atan2(a.heading.y, a.heading.x), a.speed, std::nullopt});
    }
}

std::vector<double> TrajectoryRecord::times() const {
    std::set<double> unique;
    for (const auto& r : rows) unique.insert(r.t);
    return {unique.begin(), unique.end()};
}

std::map<int, std::vector<TrajectoryRow>> TrajectoryRecord::by_agent() const {
    std::map<int, std::vector<TrajectoryRow>> groups;
    for (const auto& r : rows) groups[r.id].push_back(r);
    for (auto& [id, g] : groups) {
        std::stable_sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    }
    return groups;
}

std::string format_double(double value) {
    if (value == 0.0) return "0";  // also folds -0
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), end};
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
    out << kTrajectoryHeader << '\n';
    for (const auto& r : record.rows) {
        out << format_double(r.t) << ',' << r.id << ',' << to_string(r.mode) << ','
            << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.theta) << ','
            << format_double(r.v) << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_trajectory_csv(out, record);
    if (!out) throw Error("failed writing " + path);
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, std::size_t line, std::string_view column) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(line, "invalid number '" + std::string(text) + "' in column " + std::string(column));
    }
    return value;
}

}  // namespace

TrajectoryRecord read_trajectory_csv(std::istream& in) {
    TrajectoryRecord record;
    std::string line;
    std::size_t line_no = 0;

    // Skip leading blank lines; an empty stream is an empty record.
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) return record;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const auto header = split_csv(line);
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (trim(header[c]) == name) return c;
        }
        return std::nullopt;
    };
    auto required = [&](std::string_view name) {
        auto c = column(name);
        if (!c) throw ParseError(line_no, "missing column '" + std::string(name) + "'");
        return *c;
    };
    const std::size_t ct = required("t"), cid = required("id"), cmode = required("mode"),
                      cx = required("x"), cy = required("y"), ctheta = required("theta");
    const auto cv = column("v");
    const auto croad = column("theta_road");

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != header.size()) {
            throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                          std::to_string(f.size()));
        }
        TrajectoryRow r;
        r.t = parse_number(f[ct], line_no, "t");
        const double id = parse_number(f[cid], line_no, "id");
        if (id != std::floor(id)) throw ParseError(line_no, "id must be an integer");
        r.id = static_cast<int>(id);
        const auto mode = parse_mode(trim(f[cmode]));
        if (!mode) throw ParseError(line_no, "unknown mode '" + std::string(trim(f[cmode])) + "'");
        r.mode = *mode;
        r.x = parse_number(f[cx], line_no, "x");
        r.y = parse_number(f[cy], line_no, "y");
        r.theta = parse_number(f[ctheta], line_no, "theta");
        if (cv) r.v = parse_number(f[*cv], line_no, "v");
        if (croad) r.theta_road = parse_number(f[*croad], line_no, "theta_road");
        record.rows.push_back(r);
    }
    return record;
}

TrajectoryRecord read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_trajectory_csv(in);
}

}  // namespace mixsim
