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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsroute/channel.hpp"

namespace irsroute {

class InvalidRoute : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered IRS sequence a_1..a_K between the BS and the user. For hybrid
/// routes `active_slot` is the 0-based position of the active IRS.
struct RoutePath {
    std::vector<NodeId> irs;
    std::optional<std::size_t> active_slot;

    bool hybrid() const { return active_slot.has_value(); }
    /// IRSs before the active one (BS side); empty for passive-only routes.
    std::vector<NodeId> prefix() const;
    /// IRSs after the active one (user side); empty for passive-only routes.
    std::vector<NodeId> suffix() const;

    friend bool operator==(const RoutePath&, const RoutePath&) = default;
};

/// Builds a route over `irs`, locating the active IRS if present. Throws
/// InvalidRoute when the sequence breaks a routing constraint.
RoutePath make_route(const Scenario& scenario, std::vector<NodeId> irs);

/// Checks distinctness, LoS on every hop (BS and user included) and that
/// `active_slot` marks exactly the active IRS.
void validate_route(const Scenario& scenario, const RoutePath& path);

/// "0-3-5-11": BS, the IRS sequence, then the user.
std::string route_string(const Scenario& scenario, const RoutePath& path);

struct BeamformingSolution {
    /// One phase vector per a_k, entries in [0, 2 pi).
    std::vector<Eigen::VectorXd> phases;
    /// Unit-norm T x 1 precoder.
    ComplexVector bs_precoder;
    /// Common amplification factor eta; hybrid routes only.
    std::optional<double> amplification;
};

/// Closed-form optimum for a fixed route: each IRS cancels the phase of its
/// arrival response and applies the phase of its departure response, the BS
/// uses MRT towards a_1 and eta makes the amplification budget tight.
BeamformingSolution optimal_beamforming(const Scenario& scenario, const RoutePath& path);

/// G_BA: cascade from the BS antennas to the active IRS elements (N x T).
ComplexMatrix bs_to_active_channel(const Scenario& scenario, const RoutePath& path,
                                   const BeamformingSolution& sol);

/// g_AU^H: cascade from the active IRS elements to the user (1 x N).
ComplexRow active_to_user_channel(const Scenario& scenario, const RoutePath& path,
                                  const BeamformingSolution& sol);

/// g~_BU^H: end-to-end passive cascade from the BS antennas to the user (1 x T).
ComplexRow passive_route_channel(const Scenario& scenario, const RoutePath& path,
                                 const BeamformingSolution& sol);

/// P_B |g~^H w|^2 / sigma^2 by explicit matrix products.
double snr_passive_bruteforce(const Scenario& scenario, const RoutePath& path,
                              const BeamformingSolution& sol);

/// P_B |g^H eta Phi G w|^2 / (||g^H eta Phi||^2 sigma_F^2 + sigma^2) by explicit products.
double snr_active_bruteforce(const Scenario& scenario, const RoutePath& path,
                             const BeamformingSolution& sol);

/// eta^2 (P_B ||Phi G w||^2 + sigma_F^2 ||Phi||_F^2), the power drawn by the active IRS.
double amplification_power_used(const Scenario& scenario, const RoutePath& path,
                                const BeamformingSolution& sol);

double rate_from_snr(double snr);

}  // namespace irsroute
