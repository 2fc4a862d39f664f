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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsroute/beamforming.hpp"

namespace irsroute {

class NoRoute : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ln(d / (M sqrt(beta))); negative for hops shorter than M sqrt(beta).
double edge_weight(double distance, double elements, double reference_gain);

struct GraphEdge {
    NodeId from = 0;
    NodeId to = 0;
    double weight = 0.0;
};

/// Directed routing graph. Edges other than those into `sink` move strictly
/// away from `anchor`, which keeps the graph acyclic.
struct RoutingGraph {
    std::vector<NodeId> vertices;
    std::vector<GraphEdge> edges;
    NodeId anchor = 0;
    NodeId sink = 0;
};

struct WeightedPath {
    std::vector<NodeId> nodes;
    double cost = 0.0;

    friend bool operator==(const WeightedPath&, const WeightedPath&) = default;
};

/// Vertices {source, sink} + allowed; edge (i, j) iff LoS and either j is the
/// sink or j lies farther from the source than i. Weights use the shared
/// passive element count M.
RoutingGraph build_subgraph(const Scenario& scenario, NodeId source, NodeId sink,
                            std::span<const NodeId> allowed);

/// Kahn order (smallest id first among ready vertices); std::nullopt on a cycle.
std::optional<std::vector<NodeId>> topological_order(const RoutingGraph& graph);

/// Minimum-weight s -> t path of an acyclic graph, exact with negative
/// weights. Ties go to fewer hops, then the lexicographically smaller node
/// sequence. Throws std::invalid_argument if the graph has a cycle or s/t
/// are not vertices.
std::optional<WeightedPath> shortest_simple_path(const RoutingGraph& graph, NodeId s, NodeId t);

/// The k best s -> t paths in the same order as shortest_simple_path.
std::vector<WeightedPath> k_shortest_paths(const RoutingGraph& graph, NodeId s, NodeId t,
                                           std::size_t k);

/// Passive IRSs between two route endpoints together with the log cost of the
/// whole sub-route (endpoint hops included).
struct SubRoute {
    std::vector<NodeId> irs;
    double cost = 0.0;
};

/// Best BS -> active IRS sub-route (maximizes f_BA).
SubRoute route_bs_to_active(const Scenario& scenario);

/// Best active IRS -> user sub-route (maximizes f_AU).
SubRoute route_active_to_user(const Scenario& scenario);

struct PassiveRoute {
    RoutePath path;
    double cost = 0.0;
};

/// Best BS -> user route through passive IRSs only. The direct BS -> user
/// edge, if present, is ignored.
PassiveRoute route_passive_only(const Scenario& scenario);

struct HybridRoute {
    RoutePath path;
    double cost_ba = 0.0;
    double cost_au = 0.0;
    /// True when the independently optimal sub-routes overlapped and a joint
    /// search was needed.
    bool overlap_resolved = false;
};

/// Optimal route through the active IRS: the two sub-routes are solved
/// separately and concatenated; overlapping sub-routes fall back to a
/// certified search over the k best sub-routes of each side, then to
/// exhaustive enumeration.
HybridRoute route_hybrid(const Scenario& scenario);

enum class RouteMode { PassiveOnly, Hybrid };

enum class Feasibility {
    /// Hops obey the same distance-monotone edge rule as the routing graphs.
    MonotoneEdges,
    /// Any simple LoS path.
    AnySimplePath,
};

inline constexpr std::size_t kOracleMaxIrs = 12;

/// Enumerates every feasible route and returns the SNR-maximizing one
/// (ties: fewer hops, then lexicographic). Throws std::invalid_argument for
/// more than kOracleMaxIrs IRSs and NoRoute if nothing is feasible.
RoutePath exhaustive_route_oracle(const Scenario& scenario, RouteMode mode,
                                  Feasibility feasibility = Feasibility::MonotoneEdges);

/// Conditions the router tolerates but reports, e.g. a direct BS -> user LoS.
std::vector<std::string> routing_warnings(const Scenario& scenario);

}  // namespace irsroute
