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

#include <cstddef>
#include <optional>

#include "irsroute/beamforming.hpp"

namespace irsroute {

/// Power budget of one hybrid link. `elements` is N, kept real so that the
/// closed forms can be probed between integers.
struct LinkParams {
    double elements = 1.0;
    double tx_power = 0.0;
    double amp_power = 0.0;
    double noise_user = 0.0;
    double noise_amp = 0.0;

    static LinkParams from(const Scenario& scenario);
};

/// Per-element end-to-end power gains of the two hybrid sub-routes and of
/// the passive-only route.
struct RouteGains {
    double f_ba = 0.0;
    double f_au = 0.0;
    double f_bu = 0.0;
};

/// T M^{2(mu-1)} beta^mu / (d_{0,a1}^2 prod d^2) over the hops up to the active IRS.
double f_ba_closed(const Scenario& scenario, const RoutePath& path);

/// M^{2(K-mu)} beta^{K-mu+1} / prod d^2 over the hops after the active IRS.
/// With the active IRS last this is beta / d_{l,user}^2.
double f_au_closed(const Scenario& scenario, const RoutePath& path);

/// T M^{2K} beta^{K+1} / prod d^2 over every hop of a passive-only route.
double f_bu_closed(const Scenario& scenario, const RoutePath& path);

/// eta^2 = P_F / (N (P_B f_BA + sigma_F^2)).
double eta_squared_closed(const LinkParams& link, double f_ba);

/// Maximum hybrid SNR for the given sub-route gains.
double snr_active_closed(const LinkParams& link, double f_ba, double f_au);

/// P_B f_BU / sigma^2.
double snr_passive_closed(const LinkParams& link, double f_bu);

/// True iff the hybrid route reaches at least the passive rate; evaluated
/// as the element-count inequality, ties select the active IRS. Throws
/// std::invalid_argument on non-positive inputs.
bool should_select_active(const LinkParams& link, const RouteGains& gains);

/// Smallest P_F at which the active IRS is selected, for the given N.
/// std::nullopt when N f_BA sigma^2 <= f_BU sigma_F^2 (no finite budget suffices).
/// `link.amp_power` is ignored.
std::optional<double> min_amplification_power(const LinkParams& link, const RouteGains& gains);

/// Real-valued element threshold for the given P_F; `link.elements` is ignored.
double active_elements_threshold(const LinkParams& link, const RouteGains& gains);

/// Smallest integer N meeting active_elements_threshold.
std::size_t min_active_elements(const LinkParams& link, const RouteGains& gains);

struct HybridRates {
    RoutePath route;
    double f_ba = 0.0;
    double f_au = 0.0;
    double eta_squared = 0.0;
    double snr = 0.0;
    double rate = 0.0;
};

struct PassiveRates {
    RoutePath route;
    double f_bu = 0.0;
    double snr = 0.0;
    double rate = 0.0;
};

struct RateReport {
    std::optional<HybridRates> hybrid;
    std::optional<PassiveRates> passive;
    /// R_act >= R_pas when both routes exist, otherwise whether a hybrid route exists.
    bool select_active = false;

    const RoutePath* chosen() const;
};

HybridRates hybrid_rates(const Scenario& scenario, const RoutePath& route);
PassiveRates passive_rates(const Scenario& scenario, const RoutePath& route);
RateReport make_report(std::optional<HybridRates> hybrid, std::optional<PassiveRates> passive);

}  // namespace irsroute
