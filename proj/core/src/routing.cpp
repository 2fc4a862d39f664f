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

#include "irsroute/routing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

#include "irsroute/analysis.hpp"

namespace irsroute {

namespace {

bool path_less(const WeightedPath& a, const WeightedPath& b)
{
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
    return a.nodes < b.nodes;
}

bool has_vertex(const RoutingGraph& g, NodeId v)
{
    return std::find(g.vertices.begin(), g.vertices.end(), v) != g.vertices.end();
}

double weight_elements(const Scenario& s)
{
    return static_cast<double>(std::max<std::size_t>(s.passive_elements(), 1));
}

std::vector<NodeId> interior(const std::vector<NodeId>& nodes)
{
    if (nodes.size() < 2) return {};
    return {nodes.begin() + 1, nodes.end() - 1};
}

RoutePath hybrid_path(const Scenario& s, const std::vector<NodeId>& prefix,
                      const std::vector<NodeId>& suffix)
{
    RoutePath p;
    p.irs = prefix;
    p.active_slot = prefix.size();
    p.irs.push_back(s.active_irs());
    p.irs.insert(p.irs.end(), suffix.begin(), suffix.end());
    return p;
}

bool disjoint(const std::vector<NodeId>& a, const std::vector<NodeId>& b)
{
    return std::none_of(a.begin(), a.end(), [&](NodeId x) {
        return std::find(b.begin(), b.end(), x) != b.end();
    });
}

struct Scored {
    RoutePath path;
    double snr = -1.0;
};

// Higher SNR first, then fewer hops, then lexicographic order.
bool scored_better(const Scored& a, const Scored& b)
{
    if (a.snr != b.snr) return a.snr > b.snr;
    if (a.path.irs.size() != b.path.irs.size()) return a.path.irs.size() < b.path.irs.size();
    return a.path.irs < b.path.irs;
}

// Depth-first enumeration of passive IRS chains leaving `anchor`.
class ChainEnumerator {
public:
    ChainEnumerator(const Scenario& s, Feasibility feasibility)
        : s_(s), feasibility_(feasibility), passive_(s.passive_irs()), used_(s.node_count(), 0)
    {
    }

    void mark(const std::vector<NodeId>& ids, bool value)
    {
        for (NodeId id : ids) used_[id] = value ? 1 : 0;
    }

    void run(NodeId anchor, const std::function<void(const std::vector<NodeId>&, NodeId)>& visit)
    {
        std::vector<NodeId> chain;
        walk(anchor, anchor, chain, visit);
    }

private:
    void walk(NodeId anchor, NodeId current, std::vector<NodeId>& chain,
              const std::function<void(const std::vector<NodeId>&, NodeId)>& visit)
    {
        visit(chain, current);
        const double here = current == anchor ? 0.0 : s_.distance(current, anchor);
        for (NodeId next : passive_) {
            if (used_[next] || !s_.los(current, next)) continue;
            if (feasibility_ == Feasibility::MonotoneEdges && !(s_.distance(next, anchor) > here))
                continue;
            used_[next] = 1;
            chain.push_back(next);
            walk(anchor, next, chain, visit);
            chain.pop_back();
            used_[next] = 0;
        }
    }

    const Scenario& s_;
    Feasibility feasibility_;
    std::vector<NodeId> passive_;
    std::vector<char> used_;
};

}  // namespace

double edge_weight(double distance, double elements, double reference_gain)
{
    if (!(distance > 0.0) || !(elements > 0.0) || !(reference_gain > 0.0))
        throw std::invalid_argument("edge weight needs positive distance, elements and gain");
    return std::log(distance / (elements * std::sqrt(reference_gain)));
}

RoutingGraph build_subgraph(const Scenario& scenario, NodeId source, NodeId sink,
                            std::span<const NodeId> allowed)
{
    if (source == sink) throw std::invalid_argument("source and sink must differ");
    RoutingGraph g;
    g.anchor = source;
    g.sink = sink;
    g.vertices.push_back(source);
    for (NodeId v : allowed) {
        scenario.node(v);
        if (v != source && v != sink && !has_vertex(g, v)) g.vertices.push_back(v);
    }
    g.vertices.push_back(sink);

    const double elements = weight_elements(scenario);
    const double beta = scenario.rf().reference_gain;
    auto from_anchor = [&](NodeId v) { return v == source ? 0.0 : scenario.distance(v, source); };
    for (NodeId i : g.vertices) {
        if (i == sink) continue;
        for (NodeId j : g.vertices) {
            if (j == i || j == source || !scenario.los(i, j)) continue;
            if (j != sink && !(from_anchor(j) > from_anchor(i))) continue;
            g.edges.push_back({i, j, edge_weight(scenario.distance(i, j), elements, beta)});
        }
    }
    return g;
}

std::optional<std::vector<NodeId>> topological_order(const RoutingGraph& graph)
{
    std::map<NodeId, std::size_t> indegree;
    std::map<NodeId, std::vector<NodeId>> out;
    for (NodeId v : graph.vertices) indegree[v] = 0;
    for (const auto& e : graph.edges) {
        ++indegree[e.to];
        out[e.from].push_back(e.to);
    }
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (auto [v, deg] : indegree)
        if (deg == 0) ready.push(v);
    std::vector<NodeId> order;
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId w : out[v])
            if (--indegree[w] == 0) ready.push(w);
    }
    if (order.size() != indegree.size()) return std::nullopt;
    return order;
}

std::vector<WeightedPath> k_shortest_paths(const RoutingGraph& graph, NodeId s, NodeId t,
                                           std::size_t k)
{
    if (!has_vertex(graph, s) || !has_vertex(graph, t))
        throw std::invalid_argument("path endpoints must be graph vertices");
    if (k == 0) return {};
    if (s == t) return {WeightedPath{{s}, 0.0}};
    const auto order = topological_order(graph);
    if (!order) throw std::invalid_argument("routing graph has a cycle");

    std::map<NodeId, std::vector<const GraphEdge*>> incoming;
    for (const auto& e : graph.edges) incoming[e.to].push_back(&e);

    std::map<NodeId, std::vector<WeightedPath>> best;
    best[s] = {WeightedPath{{s}, 0.0}};
    for (NodeId v : *order) {
        if (v == s) continue;
        std::vector<WeightedPath> candidates;
        for (const GraphEdge* e : incoming[v]) {
            auto it = best.find(e->from);
            if (it == best.end()) continue;
            for (const auto& p : it->second) {
                WeightedPath next = p;
                next.nodes.push_back(v);
                next.cost = p.cost + e->weight;
                candidates.push_back(std::move(next));
            }
        }
        if (candidates.empty()) continue;
        std::sort(candidates.begin(), candidates.end(), path_less);
        if (candidates.size() > k) candidates.resize(k);
        best[v] = std::move(candidates);
    }
    auto it = best.find(t);
    if (it == best.end()) return {};
    return it->second;
}

std::optional<WeightedPath> shortest_simple_path(const RoutingGraph& graph, NodeId s, NodeId t)
{
    auto paths = k_shortest_paths(graph, s, t, 1);
    if (paths.empty()) return std::nullopt;
    return paths.front();
}

SubRoute route_bs_to_active(const Scenario& scenario)
{
    const auto passive = scenario.passive_irs();
    const auto graph = build_subgraph(scenario, scenario.bs(), scenario.active_irs(), passive);
    auto best = shortest_simple_path(graph, scenario.bs(), scenario.active_irs());
    if (!best) throw NoRoute("the BS cannot reach the active IRS");
    return {interior(best->nodes), best->cost};
}

SubRoute route_active_to_user(const Scenario& scenario)
{
    const auto passive = scenario.passive_irs();
    const auto graph = build_subgraph(scenario, scenario.active_irs(), scenario.user(), passive);
    auto best = shortest_simple_path(graph, scenario.active_irs(), scenario.user());
    if (!best) throw NoRoute("the active IRS cannot reach the user");
    return {interior(best->nodes), best->cost};
}

PassiveRoute route_passive_only(const Scenario& scenario)
{
    const auto passive = scenario.passive_irs();
    auto graph = build_subgraph(scenario, scenario.bs(), scenario.user(), passive);
    std::erase_if(graph.edges, [&](const GraphEdge& e) {
        return e.from == scenario.bs() && e.to == scenario.user();
    });
    auto best = shortest_simple_path(graph, scenario.bs(), scenario.user());
    if (!best) throw NoRoute("no passive-only route from the BS to the user");
    PassiveRoute r;
    r.path.irs = interior(best->nodes);
    r.cost = best->cost;
    validate_route(scenario, r.path);
    return r;
}

HybridRoute route_hybrid(const Scenario& scenario)
{
    const SubRoute ba = route_bs_to_active(scenario);
    const SubRoute au = route_active_to_user(scenario);
    HybridRoute result;
    if (disjoint(ba.irs, au.irs)) {
        result.path = hybrid_path(scenario, ba.irs, au.irs);
        result.cost_ba = ba.cost;
        result.cost_au = au.cost;
        validate_route(scenario, result.path);
        return result;
    }

    // Overlap: search pairs of k-best sub-routes until the best disjoint pair
    // provably beats every pair outside the lists.
    result.overlap_resolved = true;
    const auto passive = scenario.passive_irs();
    const NodeId active = scenario.active_irs();
    const auto g_ba = build_subgraph(scenario, scenario.bs(), active, passive);
    const auto g_au = build_subgraph(scenario, active, scenario.user(), passive);
    const LinkParams link = LinkParams::from(scenario);

    auto f_ba = [&](const WeightedPath& p) {
        return f_ba_closed(scenario, hybrid_path(scenario, interior(p.nodes), {}));
    };
    auto f_au = [&](const WeightedPath& p) {
        return f_au_closed(scenario, hybrid_path(scenario, {}, interior(p.nodes)));
    };

    constexpr std::size_t kMaxK = 32;
    std::optional<Scored> best;
    std::optional<std::pair<double, double>> best_costs;
    for (std::size_t k = 2; k <= kMaxK; k *= 2) {
        const auto pre = k_shortest_paths(g_ba, scenario.bs(), active, k);
        const auto suf = k_shortest_paths(g_au, active, scenario.user(), k);
        std::vector<double> fa(pre.size()), fu(suf.size());
        std::transform(pre.begin(), pre.end(), fa.begin(), f_ba);
        std::transform(suf.begin(), suf.end(), fu.begin(), f_au);

        best.reset();
        for (std::size_t i = 0; i < pre.size(); ++i)
            for (std::size_t j = 0; j < suf.size(); ++j) {
                const auto p = interior(pre[i].nodes);
                const auto q = interior(suf[j].nodes);
                if (!disjoint(p, q)) continue;
                Scored c{hybrid_path(scenario, p, q), snr_active_closed(link, fa[i], fu[j])};
                if (!best || scored_better(c, *best)) {
                    best = c;
                    best_costs = {pre[i].cost, suf[j].cost};
                }
            }

        double bound = 0.0;
        if (pre.size() == k) bound = std::max(bound, snr_active_closed(link, fa.back(), fu.front()));
        if (suf.size() == k) bound = std::max(bound, snr_active_closed(link, fa.front(), fu.back()));
        const bool exhausted = pre.size() < k && suf.size() < k;
        if (best && (best->snr >= bound || exhausted)) {
            result.path = best->path;
            std::tie(result.cost_ba, result.cost_au) = *best_costs;
            validate_route(scenario, result.path);
            return result;
        }
        if (exhausted) throw NoRoute("no hybrid route with disjoint sub-routes");
    }

    if (scenario.irs_count() <= kOracleMaxIrs) {
        result.path = exhaustive_route_oracle(scenario, RouteMode::Hybrid);
    } else if (best) {
        result.path = best->path;
    } else {
        throw NoRoute("no disjoint hybrid route found among the 32 best sub-routes");
    }
    const auto pre = result.path.prefix();
    const auto suf = result.path.suffix();
    const double elements = weight_elements(scenario);
    const double beta = scenario.rf().reference_gain;
    auto chain_cost = [&](NodeId from, const std::vector<NodeId>& mid, NodeId to) {
        double c = 0.0;
        NodeId prev = from;
        for (NodeId v : mid) {
            c += edge_weight(scenario.distance(prev, v), elements, beta);
            prev = v;
        }
        return c + edge_weight(scenario.distance(prev, to), elements, beta);
    };
    result.cost_ba = chain_cost(scenario.bs(), pre, active);
    result.cost_au = chain_cost(active, suf, scenario.user());
    return result;
}

RoutePath exhaustive_route_oracle(const Scenario& scenario, RouteMode mode, Feasibility feasibility)
{
    if (scenario.irs_count() > kOracleMaxIrs)
        throw std::invalid_argument("exhaustive search refuses more than " +
                                    std::to_string(kOracleMaxIrs) + " IRSs");
    const LinkParams link = LinkParams::from(scenario);
    const NodeId active = scenario.active_irs();
    const NodeId user = scenario.user();
    std::optional<Scored> best;
    auto offer = [&](Scored c) {
        if (!best || scored_better(c, *best)) best = std::move(c);
    };

    ChainEnumerator chains(scenario, feasibility);
    if (mode == RouteMode::PassiveOnly) {
        chains.run(scenario.bs(), [&](const std::vector<NodeId>& chain, NodeId last) {
            if (chain.empty() || !scenario.los(last, user)) return;
            RoutePath p{chain, std::nullopt};
            offer({p, snr_passive_closed(link, f_bu_closed(scenario, p))});
        });
    } else {
        std::vector<std::vector<NodeId>> prefixes;
        chains.run(scenario.bs(), [&](const std::vector<NodeId>& chain, NodeId last) {
            if (scenario.los(last, active)) prefixes.push_back(chain);
        });
        for (const auto& prefix : prefixes) {
            ChainEnumerator tail(scenario, feasibility);
            tail.mark(prefix, true);
            tail.run(active, [&](const std::vector<NodeId>& chain, NodeId last) {
                if (!scenario.los(last, user)) return;
                RoutePath p = hybrid_path(scenario, prefix, chain);
                offer({p, snr_active_closed(link, f_ba_closed(scenario, p), f_au_closed(scenario, p))});
            });
        }
    }
    if (!best) throw NoRoute("no feasible route");
    return best->path;
}

std::vector<std::string> routing_warnings(const Scenario& scenario)
{
    std::vector<std::string> out;
    if (scenario.has_direct_link())
        out.emplace_back("direct BS -> user LoS present; the router ignores it and routes via IRSs");
    return out;
}

}  // namespace irsroute
