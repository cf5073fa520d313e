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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace mixsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration; `key()` names the offending setting or invariant.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Malformed input file; `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Two bodies overlap or a body penetrates a curb. `other()` is -1 for curb
/// violations; `step()` is -1 when raised outside the time loop.
class CollisionError : public Error {
public:
    CollisionError(int agent, int other, std::string curb, double deficit, long step = -1)
        : Error(describe(agent, other, curb, deficit, step)),
          agent_(agent),
          other_(other),
          curb_(std::move(curb)),
          deficit_(deficit),
          step_(step) {}

    int agent() const { return agent_; }
    int other() const { return other_; }
    const std::string& curb() const { return curb_; }
    double deficit() const { return deficit_; }
    long step() const { return step_; }

    CollisionError at_step(long step) const { return {agent_, other_, curb_, deficit_, step}; }

private:
    static std::string describe(int agent, int other, const std::string& curb, double deficit,
                                long step) {
        std::string msg = "collision: agent " + std::to_string(agent);
        msg += other >= 0 ? " overlaps agent " + std::to_string(other) : " penetrates " + curb + " curb";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", deficit);
        msg += " by " + std::string(buf) + " m";
        if (step >= 0) msg += " at step " + std::to_string(step);
        return msg;
    }

    int agent_;
    int other_;
    std::string curb_;
    double deficit_;
    long step_;
};

}  // namespace mixsim
