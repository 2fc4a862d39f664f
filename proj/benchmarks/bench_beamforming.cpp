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

#include <benchmark/benchmark.h>

#include <random>

#include "irsroute/analysis.hpp"
#include "irsroute/beamforming.hpp"
#include "irsroute/channel.hpp"
#include "random_scenarios.hpp"

namespace {

using namespace irsroute;

struct Instance {
    Scenario scenario;
    RoutePath route;
};

// Hybrid route over K = 4 IRSs with M = N = side^2 elements.
Instance bench_instance(std::size_t side)
{
    std::mt19937_64 rng(side);
    testkit::RandomScenarioOptions o;
    o.min_irs = 6;
    o.max_irs = 6;
    o.min_elements = side * side;
    o.max_elements = side * side;
    o.passive_elements = side * side;
    Scenario s = testkit::random_scenario(rng, o);
    s = s.with_active_dims({side, side});
    for (;;) {
        if (auto r = testkit::random_route(rng, s, true, 4); r && r->irs.size() == 4) return {s, *r};
    }
}

void BM_ChannelMatrix(benchmark::State& state)
{
    const Instance in = bench_instance(static_cast<std::size_t>(state.range(0)));
    const NodeId a = in.route.irs[0], b = in.route.irs[1];
    for (auto _ : state) benchmark::DoNotOptimize(channel_matrix(in.scenario, a, b));
}
BENCHMARK(BM_ChannelMatrix)->Arg(4)->Arg(8)->Arg(16);

void BM_OptimalBeamforming(benchmark::State& state)
{
    const Instance in = bench_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(optimal_beamforming(in.scenario, in.route));
}
BENCHMARK(BM_OptimalBeamforming)->Arg(4)->Arg(8)->Arg(16);

void BM_SnrActiveBruteforce(benchmark::State& state)
{
    const Instance in = bench_instance(static_cast<std::size_t>(state.range(0)));
    const BeamformingSolution sol = optimal_beamforming(in.scenario, in.route);
    for (auto _ : state) benchmark::DoNotOptimize(snr_active_bruteforce(in.scenario, in.route, sol));
}
BENCHMARK(BM_SnrActiveBruteforce)->Arg(4)->Arg(8)->Arg(16);

void BM_SnrActiveClosed(benchmark::State& state)
{
    const Instance in = bench_instance(static_cast<std::size_t>(state.range(0)));
    const LinkParams l = LinkParams::from(in.scenario);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            snr_active_closed(l, f_ba_closed(in.scenario, in.route), f_au_closed(in.scenario, in.route)));
}
BENCHMARK(BM_SnrActiveClosed)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
