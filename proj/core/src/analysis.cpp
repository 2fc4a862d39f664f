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

#include "irsroute/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace irsroute {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void require_positive(const LinkParams& link, const RouteGains& g, bool with_elements,
                      bool with_amp)
{
    if (with_elements) require_positive(link.elements, "element count");
    if (with_amp) require_positive(link.amp_power, "amplification power");
    require_positive(link.tx_power, "transmit power");
    require_positive(link.noise_user, "user noise power");
    require_positive(link.noise_amp, "amplification noise power");
    require_positive(g.f_ba, "f_BA");
    require_positive(g.f_au, "f_AU");
    require_positive(g.f_bu, "f_BU");
}

// beta / d^2 per hop, times M^2 for every passive reflection that precedes it.
double hop_gain(const Scenario& s, NodeId from, NodeId to, bool after_passive)
{
    const double beta = s.rf().reference_gain;
    const double d = s.distance(from, to);
    double g = beta / (d * d);
    if (after_passive) {
        const auto m = static_cast<double>(s.passive_elements());
        g *= m * m;
    }
    return g;
}

}  // namespace

LinkParams LinkParams::from(const Scenario& scenario)
{
    const RfParams& rf = scenario.rf();
    return {static_cast<double>(scenario.active_elements()), rf.tx_power, rf.amp_power,
            rf.noise_user, rf.noise_amp};
}

double f_ba_closed(const Scenario& scenario, const RoutePath& path)
{
    if (!path.hybrid()) throw InvalidRoute("f_BA needs a route through the active IRS");
    const std::size_t slot = *path.active_slot;
    double f = static_cast<double>(scenario.bs_antennas()) *
               hop_gain(scenario, scenario.bs(), path.irs[0], false);
    for (std::size_t k = 0; k < slot; ++k)
        f *= hop_gain(scenario, path.irs[k], path.irs[k + 1], true);
    return f;
}

double f_au_closed(const Scenario& scenario, const RoutePath& path)
{
    if (!path.hybrid()) throw InvalidRoute("f_AU needs a route through the active IRS");
    const std::size_t slot = *path.active_slot;
    const std::size_t last = path.irs.size() - 1;
    if (slot == last) return hop_gain(scenario, path.irs[slot], scenario.user(), false);
    double f = hop_gain(scenario, path.irs[slot], path.irs[slot + 1], false);
    for (std::size_t k = slot + 1; k < last; ++k)
        f *= hop_gain(scenario, path.irs[k], path.irs[k + 1], true);
    return f * hop_gain(scenario, path.irs[last], scenario.user(), true);
}

double f_bu_closed(const Scenario& scenario, const RoutePath& path)
{
    if (path.hybrid()) throw InvalidRoute("f_BU needs a passive-only route");
    if (path.irs.empty()) throw InvalidRoute("route must contain at least one IRS");
    double f = static_cast<double>(scenario.bs_antennas()) *
               hop_gain(scenario, scenario.bs(), path.irs[0], false);
    for (std::size_t k = 0; k + 1 < path.irs.size(); ++k)
        f *= hop_gain(scenario, path.irs[k], path.irs[k + 1], true);
    return f * hop_gain(scenario, path.irs.back(), scenario.user(), true);
}

double eta_squared_closed(const LinkParams& link, double f_ba)
{
    return link.amp_power / (link.elements * (link.tx_power * f_ba + link.noise_amp));
}

double snr_active_closed(const LinkParams& link, double f_ba, double f_au)
{
    const double num = link.tx_power * link.elements * f_au * f_ba;
    const double den = f_au * link.noise_amp +
                       link.noise_user * (link.tx_power * f_ba + link.noise_amp) / link.amp_power;
    return num / den;
}

double snr_passive_closed(const LinkParams& link, double f_bu)
{
    return link.tx_power * f_bu / link.noise_user;
}

bool should_select_active(const LinkParams& link, const RouteGains& g)
{
    require_positive(link, g, true, true);
    const double lhs = link.elements / link.noise_amp;
    const double rhs = g.f_bu / (g.f_ba * link.noise_user) +
                       link.tx_power * g.f_bu / (link.amp_power * g.f_au * link.noise_amp) +
                       g.f_bu / (link.amp_power * g.f_ba * g.f_au);
    return lhs >= rhs;
}

std::optional<double> min_amplification_power(const LinkParams& link, const RouteGains& g)
{
    require_positive(link, g, true, false);
    const double margin = link.elements * g.f_ba * link.noise_user - g.f_bu * link.noise_amp;
    if (!(margin > 0.0)) return std::nullopt;
    return g.f_bu * link.noise_user * (link.tx_power * g.f_ba + link.noise_amp) / (g.f_au * margin);
}

double active_elements_threshold(const LinkParams& link, const RouteGains& g)
{
    require_positive(link, g, false, true);
    return g.f_bu * link.noise_amp / (g.f_ba * link.noise_user) +
           link.tx_power * g.f_bu / (link.amp_power * g.f_au) +
           g.f_bu * link.noise_amp / (link.amp_power * g.f_ba * g.f_au);
}

std::size_t min_active_elements(const LinkParams& link, const RouteGains& g)
{
    const double threshold = active_elements_threshold(link, g);
    auto n = static_cast<std::size_t>(std::ceil(threshold));
    if (n < 1) n = 1;
    // ceil() can land one short when the threshold carries rounding error.
    LinkParams probe = link;
    probe.elements = static_cast<double>(n);
    while (!should_select_active(probe, g)) probe.elements = static_cast<double>(++n);
    return n;
}

HybridRates hybrid_rates(const Scenario& scenario, const RoutePath& route)
{
    const LinkParams link = LinkParams::from(scenario);
    HybridRates r;
    r.route = route;
    r.f_ba = f_ba_closed(scenario, route);
    r.f_au = f_au_closed(scenario, route);
    r.eta_squared = eta_squared_closed(link, r.f_ba);
    r.snr = snr_active_closed(link, r.f_ba, r.f_au);
    r.rate = rate_from_snr(r.snr);
    return r;
}

PassiveRates passive_rates(const Scenario& scenario, const RoutePath& route)
{
    PassiveRates r;
    r.route = route;
    r.f_bu = f_bu_closed(scenario, route);
    r.snr = snr_passive_closed(LinkParams::from(scenario), r.f_bu);
    r.rate = rate_from_snr(r.snr);
    return r;
}

RateReport make_report(std::optional<HybridRates> hybrid, std::optional<PassiveRates> passive)
{
    RateReport report;
    report.select_active = hybrid && (!passive || hybrid->rate >= passive->rate);
    report.hybrid = std::move(hybrid);
    report.passive = std::move(passive);
    return report;
}

const RoutePath* RateReport::chosen() const
{
    if (select_active) return &hybrid->route;
    if (passive) return &passive->route;
    return nullptr;
}

}  // namespace irsroute
