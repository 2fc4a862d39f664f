// SPDX-License-Identifier: Apache-2.0
//
// irsroute: beam routing for hybrid active/passive IRS links
// Copyright (C) 2026 The irsroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "irsroute/scenario.hpp"

namespace irsroute::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNoRoute = 2;

/// 12 significant digits, scientific, locale-independent.
std::string format_double(double v);

int cmd_validate(const std::string& scenario_path, std::ostream& out, std::ostream& err);

enum class RouteMode { Passive, Hybrid, Auto };

struct RouteOptions {
    std::string scenario_path;
    RouteMode mode = RouteMode::Auto;
    std::string csv_path;       // report row, optional
    std::string hops_csv_path;  // per-hop table, optional
};

int cmd_route(const RouteOptions& options, std::ostream& out, std::ostream& err);

enum class SweepVariable { AmpPower, ActiveElements, PassiveElements };

struct SweepSpec {
    SweepVariable variable = SweepVariable::AmpPower;
    /// dBm for AmpPower, element counts otherwise.
    std::vector<double> values;
    std::string scenario_path;
    std::string output_path;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// "a,b,c" or an inclusive range "start:step:stop".
std::vector<double> parse_values(std::string_view text);

/// Throws std::invalid_argument when the values break the sweep rules.
void check_sweep_values(SweepVariable variable, const std::vector<double>& values);

/// One CSV document (header + a row per value, in input order).
std::string sweep_csv(const Scenario& scenario, SweepVariable variable,
                      const std::vector<double>& values, unsigned threads = 0);

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err);

int cmd_oracle(const std::string& scenario_path, std::ostream& out, std::ostream& err);

int cmd_channel(const std::string& scenario_path, NodeId from, NodeId to, std::ostream& out,
                std::ostream& err);

/// Parses argv and dispatches to the subcommands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace irsroute::cli
