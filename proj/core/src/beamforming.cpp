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

#include "irsroute/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace irsroute {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double x)
{
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

// Node that precedes / follows hop k, with the BS and user as boundaries.
NodeId before(const Scenario& s, const RoutePath& p, std::size_t k)
{
    return k == 0 ? s.bs() : p.irs[k - 1];
}

NodeId after(const Scenario& s, const RoutePath& p, std::size_t k)
{
    return k + 1 == p.irs.size() ? s.user() : p.irs[k + 1];
}

void check_dimensions(const Scenario& s, const RoutePath& p, const BeamformingSolution& sol)
{
    if (sol.phases.size() != p.irs.size())
        throw std::invalid_argument("solution has " + std::to_string(sol.phases.size()) +
                                    " phase vectors for a route of " +
                                    std::to_string(p.irs.size()) + " IRSs");
    for (std::size_t k = 0; k < p.irs.size(); ++k)
        if (static_cast<std::size_t>(sol.phases[k].size()) != s.node(p.irs[k]).elements())
            throw std::invalid_argument("phase vector size mismatch at IRS " +
                                        std::to_string(p.irs[k]));
    if (static_cast<std::size_t>(sol.bs_precoder.size()) != s.bs_antennas())
        throw std::invalid_argument("precoder size does not match the BS array");
}

Eigen::VectorXcd reflection(const Eigen::VectorXd& phases)
{
    return phases.unaryExpr([](double phi) { return std::polar(1.0, phi); });
}

// Applies hops [first, last) of the route to a matrix that ends at irs[first].
ComplexMatrix propagate(const Scenario& s, const RoutePath& p, const BeamformingSolution& sol,
                        ComplexMatrix field, std::size_t first, std::size_t last)
{
    for (std::size_t k = first; k < last; ++k) {
        field = reflection(sol.phases[k]).asDiagonal() * field;
        field = channel_matrix(s, p.irs[k], p.irs[k + 1]) * field;
    }
    return field;
}

}  // namespace

std::vector<NodeId> RoutePath::prefix() const
{
    if (!active_slot) return {};
    return {irs.begin(), irs.begin() + static_cast<std::ptrdiff_t>(*active_slot)};
}

std::vector<NodeId> RoutePath::suffix() const
{
    if (!active_slot) return {};
    return {irs.begin() + static_cast<std::ptrdiff_t>(*active_slot) + 1, irs.end()};
}

RoutePath make_route(const Scenario& scenario, std::vector<NodeId> irs)
{
    RoutePath p;
    p.irs = std::move(irs);
    for (std::size_t k = 0; k < p.irs.size(); ++k)
        if (p.irs[k] == scenario.active_irs()) p.active_slot = k;
    validate_route(scenario, p);
    return p;
}

void validate_route(const Scenario& scenario, const RoutePath& path)
{
    if (path.irs.empty()) throw InvalidRoute("route must contain at least one IRS");
    std::set<NodeId> seen;
    for (NodeId id : path.irs) {
        if (id == scenario.bs() || id >= scenario.user())
            throw InvalidRoute("route entry " + std::to_string(id) + " is not an IRS");
        if (!seen.insert(id).second)
            throw InvalidRoute("IRS " + std::to_string(id) + " appears twice in the route");
    }
    NodeId prev = scenario.bs();
    for (NodeId id : path.irs) {
        if (!scenario.los(prev, id))
            throw InvalidRoute("no LoS on hop " + std::to_string(prev) + " -> " +
                               std::to_string(id));
        prev = id;
    }
    if (!scenario.los(prev, scenario.user()))
        throw InvalidRoute("no LoS on hop " + std::to_string(prev) + " -> user");

    auto it = std::find(path.irs.begin(), path.irs.end(), scenario.active_irs());
    if (it == path.irs.end()) {
        if (path.active_slot) throw InvalidRoute("active slot set on a passive-only route");
    } else if (!path.active_slot ||
               *path.active_slot != static_cast<std::size_t>(it - path.irs.begin())) {
        throw InvalidRoute("active slot does not point at the active IRS");
    }
}

std::string route_string(const Scenario& scenario, const RoutePath& path)
{
    std::string out = std::to_string(scenario.bs());
    for (NodeId id : path.irs) out += "-" + std::to_string(id);
    return out + "-" + std::to_string(scenario.user());
}

BeamformingSolution optimal_beamforming(const Scenario& scenario, const RoutePath& path)
{
    validate_route(scenario, path);
    BeamformingSolution sol;
    for (std::size_t k = 0; k < path.irs.size(); ++k) {
        const NodeId here = path.irs[k];
        const ComplexVector out = transmit_steering(scenario, here, after(scenario, path, k));
        const ComplexVector in = receive_steering(scenario, before(scenario, path, k), here);
        Eigen::VectorXd phi(out.size());
        for (Eigen::Index m = 0; m < out.size(); ++m)
            phi[m] = wrap_phase(std::arg(out[m]) - std::arg(in[m]));
        sol.phases.push_back(std::move(phi));
    }
    const ComplexVector mrt = transmit_steering(scenario, scenario.bs(), path.irs.front());
    sol.bs_precoder = mrt / mrt.norm();

    if (path.hybrid()) {
        const RfParams& rf = scenario.rf();
        const double incident = (bs_to_active_channel(scenario, path, sol) * sol.bs_precoder).squaredNorm();
        const double elements = static_cast<double>(scenario.active_elements());
        sol.amplification = std::sqrt(rf.amp_power / (rf.tx_power * incident + rf.noise_amp * elements));
    }
    return sol;
}

ComplexMatrix bs_to_active_channel(const Scenario& scenario, const RoutePath& path,
                                   const BeamformingSolution& sol)
{
    if (!path.hybrid()) throw InvalidRoute("route does not contain the active IRS");
    check_dimensions(scenario, path, sol);
    ComplexMatrix g = channel_matrix(scenario, scenario.bs(), path.irs.front());
    return propagate(scenario, path, sol, std::move(g), 0, *path.active_slot);
}

ComplexRow active_to_user_channel(const Scenario& scenario, const RoutePath& path,
                                  const BeamformingSolution& sol)
{
    if (!path.hybrid()) throw InvalidRoute("route does not contain the active IRS");
    check_dimensions(scenario, path, sol);
    const std::size_t slot = *path.active_slot;
    const std::size_t last = path.irs.size() - 1;
    if (slot == last) return channel_matrix(scenario, path.irs[slot], scenario.user());

    // Cascade that starts at the active IRS elements and ends at a_K.
    ComplexMatrix g = channel_matrix(scenario, path.irs[slot], path.irs[slot + 1]);
    g = propagate(scenario, path, sol, std::move(g), slot + 1, last);
    g = reflection(sol.phases[last]).asDiagonal() * g;
    return channel_matrix(scenario, path.irs[last], scenario.user()) * g;
}

ComplexRow passive_route_channel(const Scenario& scenario, const RoutePath& path,
                                 const BeamformingSolution& sol)
{
    if (path.hybrid()) throw InvalidRoute("route contains the active IRS");
    check_dimensions(scenario, path, sol);
    const std::size_t last = path.irs.size() - 1;
    ComplexMatrix g = channel_matrix(scenario, scenario.bs(), path.irs.front());
    g = propagate(scenario, path, sol, std::move(g), 0, last);
    g = reflection(sol.phases[last]).asDiagonal() * g;
    return channel_matrix(scenario, path.irs[last], scenario.user()) * g;
}

double snr_passive_bruteforce(const Scenario& scenario, const RoutePath& path,
                              const BeamformingSolution& sol)
{
    const ComplexRow g = passive_route_channel(scenario, path, sol);
    const Complex y = (g * sol.bs_precoder)(0);
    return scenario.rf().tx_power * std::norm(y) / scenario.rf().noise_user;
}

double snr_active_bruteforce(const Scenario& scenario, const RoutePath& path,
                             const BeamformingSolution& sol)
{
    if (!sol.amplification) throw std::invalid_argument("hybrid route needs an amplification factor");
    const RfParams& rf = scenario.rf();
    const double eta = *sol.amplification;
    const ComplexMatrix g_ba = bs_to_active_channel(scenario, path, sol);
    const ComplexRow g_au = active_to_user_channel(scenario, path, sol);
    const Eigen::VectorXcd phi = reflection(sol.phases[*path.active_slot]);

    const ComplexRow reflected = eta * (g_au * phi.asDiagonal());
    const Complex signal = (reflected * (g_ba * sol.bs_precoder))(0);
    return rf.tx_power * std::norm(signal) / (reflected.squaredNorm() * rf.noise_amp + rf.noise_user);
}

double amplification_power_used(const Scenario& scenario, const RoutePath& path,
                                const BeamformingSolution& sol)
{
    if (!path.hybrid()) throw InvalidRoute("route does not contain the active IRS");
    if (!sol.amplification) throw std::invalid_argument("hybrid route needs an amplification factor");
    const RfParams& rf = scenario.rf();
    const double eta = *sol.amplification;
    const Eigen::VectorXcd phi = reflection(sol.phases[*path.active_slot]);
    const ComplexVector incident = phi.asDiagonal() * (bs_to_active_channel(scenario, path, sol) * sol.bs_precoder);
    const double noise_gain = phi.squaredNorm();  // ||Phi I_N||_F^2
    return eta * eta * (rf.tx_power * incident.squaredNorm() + rf.noise_amp * noise_gain);
}

double rate_from_snr(double snr) { return std::log2(1.0 + snr); }

}  // namespace irsroute
