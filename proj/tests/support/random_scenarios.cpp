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

#include "random_scenarios.hpp"

#include <algorithm>
#include <numbers>

namespace irsroute::testkit {

namespace {

ArrayDims random_dims(std::mt19937_64& rng, std::size_t count)
{
    std::vector<ArrayDims> options;
    for (std::size_t h = 1; h <= count; ++h)
        if (count % h == 0) options.push_back({h, count / h});
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng)];
}

}  // namespace

RfParams reference_rf()
{
    RfParams rf;
    rf.wavelength = 0.06;
    rf.element_spacing = 0.03;
    rf.reference_gain = db_to_linear(-46.0);
    rf.noise_user = dbm_to_watts(-80.0);
    rf.noise_amp = dbm_to_watts(-70.0);
    rf.tx_power = dbm_to_watts(30.0);
    rf.amp_power = dbm_to_watts(10.0);
    return rf;
}

Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& o)
{
    std::uniform_int_distribution<std::size_t> irs_count(o.min_irs, o.max_irs);
    std::uniform_int_distribution<std::size_t> antennas(1, o.max_bs_antennas);
    std::uniform_int_distribution<std::size_t> elements(o.min_elements, o.max_elements);
    std::uniform_real_distribution<double> along(0.05 * o.extent, 0.95 * o.extent);
    std::uniform_real_distribution<double> across(-0.4 * o.extent, 0.4 * o.extent);
    std::uniform_real_distribution<double> height(1.0, 6.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::size_t j = irs_count(rng);
    std::uniform_int_distribution<std::size_t> which(1, j);
    const NodeId active = which(rng);
    const ArrayDims passive =
        o.passive_elements ? near_square_dims(*o.passive_elements) : random_dims(rng, elements(rng));

    std::vector<NodeSpec> nodes;
    nodes.push_back({0, NodeKind::Bs, {0.0, 0.0, height(rng)}, {antennas(rng), 1}});
    for (NodeId id = 1; id <= j; ++id) {
        NodeSpec n{id, NodeKind::PassiveIrs, {along(rng), across(rng), height(rng)}, passive};
        if (id == active) {
            n.kind = NodeKind::ActiveIrs;
            n.array = random_dims(rng, elements(rng));
        }
        nodes.push_back(n);
    }
    nodes.push_back({j + 1, NodeKind::User, {o.extent, across(rng) * 0.25, 1.5}, {1, 1}});

    std::vector<std::pair<NodeId, NodeId>> los;
    for (NodeId a = 0; a <= j + 1; ++a)
        for (NodeId b = a + 1; b <= j + 1; ++b) {
            if (a == 0 && b == j + 1) continue;
            if (unit(rng) < o.los_probability) los.emplace_back(a, b);
        }

    RfParams rf = reference_rf();
    if (o.randomize_powers) {
        std::uniform_real_distribution<double> dbm(0.0, 40.0);
        rf.tx_power = dbm_to_watts(dbm(rng));
        rf.amp_power = dbm_to_watts(dbm(rng) - 10.0);
    }
    return Scenario::create(std::move(nodes), los, rf);
}

std::optional<RoutePath> random_route(std::mt19937_64& rng, const Scenario& scenario, bool hybrid,
                                      std::size_t max_irs)
{
    std::vector<NodeId> passive = scenario.passive_irs();
    const std::size_t available = passive.size() + (hybrid ? 1 : 0);
    const std::size_t cap = std::min(max_irs, available);
    if (cap == 0) return std::nullopt;
    std::uniform_int_distribution<std::size_t> length(1, cap);
    for (int attempt = 0; attempt < 200; ++attempt) {
        const std::size_t k = length(rng);
        std::shuffle(passive.begin(), passive.end(), rng);
        std::vector<NodeId> irs;
        if (hybrid) {
            irs.assign(passive.begin(), passive.begin() + static_cast<std::ptrdiff_t>(k - 1));
            std::uniform_int_distribution<std::size_t> slot(0, k - 1);
            irs.insert(irs.begin() + static_cast<std::ptrdiff_t>(slot(rng)), scenario.active_irs());
        } else {
            irs.assign(passive.begin(), passive.begin() + static_cast<std::ptrdiff_t>(k));
        }
        try {
            return make_route(scenario, irs);
        } catch (const InvalidRoute&) {
        }
    }
    return std::nullopt;
}

BeamformingSolution random_phases(std::mt19937_64& rng, const BeamformingSolution& base)
{
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    BeamformingSolution out = base;
    for (auto& v : out.phases)
        for (Eigen::Index m = 0; m < v.size(); ++m) v[m] = phase(rng);
    return out;
}

}  // namespace irsroute::testkit
