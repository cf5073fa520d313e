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

#include "mixsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <type_traits>
#include <istream>
#include <ostream>
#include <utility>

namespace mixsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key), "invalid value '" + std::string(text) + "'");
    }
    return value;
}

struct Field {
    std::string key;
    std::function<void(SimulationConfig&, std::string_view)> set;
    std::function<std::string(const SimulationConfig&)> get;
};

template <typename T, typename Access>
Field number(std::string key, Access access) {
    Field f;
    f.key = key;
    f.set = [key, access](SimulationConfig& c, std::string_view v) { access(c) = parse_value<T>(key, v); };
    f.get = [access](const SimulationConfig& c) {
        const T value = access(c);
        if constexpr (std::is_floating_point_v<T>) {
            return format_double(value);
        } else {
            return std::to_string(value);
        }
    };
    return f;
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> t;
        t.push_back(number<double>("road_length", [](auto& c) -> auto& { return c.road.length; }));
        t.push_back(number<int>("lanes", [](auto& c) -> auto& { return c.road.n_lanes; }));
        t.push_back(number<double>("lane_width", [](auto& c) -> auto& { return c.road.lane_width; }));
        t.push_back(number<double>("k", [](auto& c) -> auto& { return c.params.k; }));
        t.push_back(number<double>("D", [](auto& c) -> auto& { return c.params.D; }));
        t.push_back(number<double>("T", [](auto& c) -> auto& { return c.params.T; }));
        t.push_back(number<double>("dt", [](auto& c) -> auto& { return c.params.dt; }));
        t.push_back(number<double>("tau", [](auto& c) -> auto& { return c.params.tau; }));
        t.push_back(number<double>("t_a", [](auto& c) -> auto& { return c.params.t_a; }));
        t.push_back(number<double>("v0_moto", [](auto& c) -> auto& { return c.params.v0_moto; }));
        t.push_back(number<double>("v0_car", [](auto& c) -> auto& { return c.params.v0_car; }));
        t.push_back(number<double>("d_look", [](auto& c) -> auto& { return c.params.d_look; }));
        t.push_back(number<double>("cutoff", [](auto& c) -> auto& { return c.params.cutoff; }));
        t.push_back(Field{
            "corridor",
            [](SimulationConfig& c, std::string_view v) {
                if (v == "lateral") {
                    c.params.corridor = CorridorWidth::Lateral;
                } else if (v == "interaction") {
                    c.params.corridor = CorridorWidth::Interaction;
                } else {
                    throw ConfigError("corridor", "expected 'lateral' or 'interaction', got '" + std::string(v) + "'");
                }
            },
            [](const SimulationConfig& c) {
                return std::string(c.params.corridor == CorridorWidth::Lateral ? "lateral" : "interaction");
            }});
        t.push_back(number<double>("density", [](auto& c) -> auto& { return c.density; }));
        t.push_back(number<int>("agents", [](auto& c) -> auto& { return c.agents; }));
        t.push_back(number<double>("r_min", [](auto& c) -> auto& { return c.sampler.r_min; }));
        t.push_back(number<double>("r_max", [](auto& c) -> auto& { return c.sampler.r_max; }));
        t.push_back(number<double>("p_min", [](auto& c) -> auto& { return c.sampler.p_min; }));
        t.push_back(number<int>("k_candidates", [](auto& c) -> auto& { return c.sampler.k_candidates; }));
        t.push_back(Field{
            "cross_lane_exclusion",
            [](SimulationConfig& c, std::string_view v) {
                if (v == "true" || v == "1") {
                    c.sampler.cross_lane_exclusion = true;
                } else if (v == "false" || v == "0") {
                    c.sampler.cross_lane_exclusion = false;
                } else {
                    throw ConfigError("cross_lane_exclusion", "expected true or false, got '" + std::string(v) + "'");
                }
            },
            [](const SimulationConfig& c) { return std::string(c.sampler.cross_lane_exclusion ? "true" : "false"); }});
        t.push_back(number<std::uint64_t>("seed", [](auto& c) -> auto& { return c.seed; }));
        t.push_back(number<int>("sampler_retries", [](auto& c) -> auto& { return c.sampler_retries; }));
        t.push_back(number<double>("duration", [](auto& c) -> auto& { return c.duration; }));
        t.push_back(number<int>("record_every", [](auto& c) -> auto& { return c.record_every; }));
        t.push_back(number<int>("threads", [](auto& c) -> auto& { return c.threads; }));
        return t;
    }();
    return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void apply_setting(SimulationConfig& config, std::string_view key, std::string_view value) {
    for (const auto& f : fields()) {
        if (f.key == key) {
            f.set(config, trim(value));
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown configuration key");
}

void load_config(std::istream& in, SimulationConfig& config) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected key=value, got '" + std::string(text) + "'");
        }
        apply_setting(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
}

void load_config_file(const std::string& path, SimulationConfig& config) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path);
    load_config(in, config);
}

void write_manifest(std::ostream& out, const SimulationConfig& config) {
    for (const auto& f : fields()) out << f.key << '=' << f.get(config) << '\n';
}

}  // namespace mixsim
