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

#include "irsroute/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irsroute {

namespace {

constexpr double kPi = std::numbers::pi;

void require_link(const Scenario& s, NodeId from, NodeId to)
{
    if (from == to) throw std::invalid_argument("channel needs two distinct nodes");
    const NodeKind tx = s.node(from).kind;
    const NodeKind rx = s.node(to).kind;
    if (tx == NodeKind::User) throw std::invalid_argument("the user does not transmit");
    if (rx == NodeKind::Bs) throw std::invalid_argument("the BS does not receive");
    if (!s.los(from, to))
        throw std::invalid_argument("no LoS between node " + std::to_string(from) + " and node " +
                                    std::to_string(to));
}

ComplexVector node_response(const Scenario& s, NodeId at, const Vec3& direction)
{
    const NodeSpec& node = s.node(at);
    const RfParams& rf = s.rf();
    const double len = norm(direction);
    switch (node.kind) {
    case NodeKind::User: return ComplexVector::Ones(1);
    case NodeKind::Bs:
        return ula_steering(std::acos(std::clamp(direction.x / len, -1.0, 1.0)), node.elements(),
                            rf.element_spacing, rf.wavelength);
    default: {
        const double elevation = std::acos(std::clamp(direction.z / len, -1.0, 1.0));
        double azimuth = std::atan2(direction.y, direction.x);
        if (azimuth <= -kPi) azimuth = kPi;
        return ura_steering(azimuth, elevation, node.array, rf.element_spacing, rf.wavelength);
    }
    }
}

}  // namespace

ComplexVector steering_u(double slope, std::size_t count)
{
    if (count == 0) throw std::invalid_argument("steering vector needs at least one element");
    ComplexVector u(static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k)
        u[static_cast<Eigen::Index>(k)] = std::polar(1.0, -kPi * slope * static_cast<double>(k));
    return u;
}

ComplexVector ura_steering(double azimuth, double elevation, ArrayDims dims, double spacing,
                           double wavelength)
{
    if (dims.count() == 0) throw std::invalid_argument("URA needs at least one element");
    const double scale = 2.0 * spacing / wavelength;
    const ComplexVector h = steering_u(scale * std::sin(elevation) * std::cos(azimuth), dims.horizontal);
    const ComplexVector v = steering_u(scale * std::cos(elevation), dims.vertical);
    ComplexVector out(static_cast<Eigen::Index>(dims.count()));
    for (Eigen::Index a = 0; a < h.size(); ++a)
        out.segment(a * v.size(), v.size()) = h[a] * v;
    return out;
}

ComplexVector ula_steering(double angle, std::size_t count, double spacing, double wavelength)
{
    return steering_u(2.0 * spacing / wavelength * std::cos(angle), count);
}

Complex link_gain(double distance, double reference_gain, double wavelength)
{
    if (!(distance > 0.0)) throw std::invalid_argument("link distance must be positive");
    // Reduce d/lambda to its fractional part before scaling by 2 pi.
    const double cycles = distance / wavelength;
    const double phase = -2.0 * kPi * (cycles - std::floor(cycles));
    return std::polar(std::sqrt(reference_gain) / distance, phase);
}

ComplexVector transmit_steering(const Scenario& scenario, NodeId from, NodeId to)
{
    const Vec3 delta = scenario.node(to).position - scenario.node(from).position;
    return node_response(scenario, from, delta);
}

ComplexVector receive_steering(const Scenario& scenario, NodeId from, NodeId to)
{
    const Vec3 delta = scenario.node(from).position - scenario.node(to).position;
    return node_response(scenario, to, delta);
}

ComplexMatrix channel_matrix(const Scenario& scenario, NodeId from, NodeId to)
{
    require_link(scenario, from, to);
    const Complex h = link_gain(scenario.distance(from, to), scenario.rf().reference_gain,
                                scenario.rf().wavelength);
    const ComplexVector rx = receive_steering(scenario, from, to);
    const ComplexVector tx = transmit_steering(scenario, from, to);
    return h * rx * tx.adjoint();
}

}  // namespace irsroute
