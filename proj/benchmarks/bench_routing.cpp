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

#include "graph_oracles.hpp"
#include "irsroute/routing.hpp"
#include "random_scenarios.hpp"

namespace {

using namespace irsroute;

Scenario bench_scenario(std::size_t irs, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    testkit::RandomScenarioOptions o;
    o.min_irs = irs;
    o.max_irs = irs;
    o.passive_elements = 1400;
    o.extent = 60.0;
    o.los_probability = 0.5;
    return testkit::random_scenario(rng, o);
}

void BM_RouteHybrid(benchmark::State& state)
{
    const Scenario s = bench_scenario(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(route_hybrid(s));
        } catch (const NoRoute&) {
        }
    }
}
BENCHMARK(BM_RouteHybrid)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

void BM_RoutePassive(benchmark::State& state)
{
    const Scenario s = bench_scenario(static_cast<std::size_t>(state.range(0)), 8);
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(route_passive_only(s));
        } catch (const NoRoute&) {
        }
    }
}
BENCHMARK(BM_RoutePassive)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

void BM_ExhaustiveOracle(benchmark::State& state)
{
    const Scenario s = bench_scenario(static_cast<std::size_t>(state.range(0)), 9);
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(exhaustive_route_oracle(s, RouteMode::Hybrid));
        } catch (const NoRoute&) {
        }
    }
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(6)->Arg(8)->Arg(10);

void BM_KShortestPaths(benchmark::State& state)
{
    std::mt19937_64 rng(10);
    const RoutingGraph g = testkit::random_dag(rng, 200, 0.2, -1.0, 2.0);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(k_shortest_paths(g, g.anchor, g.sink, k));
}
BENCHMARK(BM_KShortestPaths)->Arg(1)->Arg(8)->Arg(32);

}  // namespace
