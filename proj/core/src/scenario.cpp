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

#include "irsroute/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace irsroute {

namespace {

using json = nlohmann::json;

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += "; ";
        out += item;
    }
    return out;
}

std::string node_label(NodeId id) { return "node " + std::to_string(id); }

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

NodeKind parse_kind(const std::string& s)
{
    if (s == "bs") return NodeKind::Bs;
    if (s == "passive_irs") return NodeKind::PassiveIrs;
    if (s == "active_irs") return NodeKind::ActiveIrs;
    if (s == "user") return NodeKind::User;
    throw ParseError("unknown node kind '" + s + "'");
}

std::size_t positive_count(const json& obj, const char* key)
{
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ParseError(std::string("array field '") + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

std::size_t exact_sqrt(std::size_t n)
{
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : 0;
}

// {"M1","M2"} or a perfect-square {"M"} (likewise N); {"T"} for the BS.
ArrayDims parse_array(const json& node, NodeKind kind)
{
    if (kind == NodeKind::User) {
        if (node.contains("array") && !node.at("array").empty())
            throw ParseError("user node must not declare an array");
        return {1, 1};
    }
    if (!node.contains("array")) throw ParseError("node is missing 'array'");
    const json& arr = node.at("array");
    if (!arr.is_object()) throw ParseError("'array' must be an object");

    if (kind == NodeKind::Bs) return {positive_count(arr, "T"), 1};

    const std::string base = kind == NodeKind::PassiveIrs ? "M" : "N";
    const std::string k1 = base + "1", k2 = base + "2";
    if (arr.contains(k1) || arr.contains(k2))
        return {positive_count(arr, k1.c_str()), positive_count(arr, k2.c_str())};
    if (arr.contains(base)) {
        std::size_t total = positive_count(arr, base.c_str());
        std::size_t side = exact_sqrt(total);
        if (side == 0)
            throw ParseError(base + " = " + std::to_string(total) +
                             " is not a perfect square; give " + k1 + " and " + k2);
        return {side, side};
    }
    throw ParseError("array of " + std::string(to_string(kind)) + " needs " + k1 + "/" + k2 +
                     " or " + base);
}

double number(const json& obj, const char* key)
{
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::vector<std::string> check_rf(const RfParams& rf)
{
    std::vector<std::string> out;
    if (!positive_finite(rf.wavelength)) out.push_back("wavelength must be positive");
    if (!positive_finite(rf.element_spacing)) out.push_back("element spacing must be positive");
    if (!positive_finite(rf.reference_gain)) out.push_back("reference gain must be positive");
    if (!positive_finite(rf.noise_user)) out.push_back("user noise power must be positive");
    if (!positive_finite(rf.noise_amp)) out.push_back("amplification noise power must be positive");
    if (!positive_finite(rf.tx_power)) out.push_back("transmit power must be positive");
    if (!positive_finite(rf.amp_power)) out.push_back("amplification power must be positive");
    return out;
}

struct Draft {
    std::vector<NodeSpec> nodes;
    std::vector<std::vector<int>> los;
    RfParams rf;
    std::vector<std::string> problems;
};

Draft parse_draft(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level must be an object");

    Draft d;
    try {
        const json& rf = doc.at("rf");
        d.rf.wavelength = number(rf, "lambda_m");
        d.rf.element_spacing =
            rf.contains("d_I_m") ? number(rf, "d_I_m") : d.rf.wavelength / 2.0;
        d.rf.reference_gain = db_to_linear(number(rf, "beta_db"));
        d.rf.noise_user = dbm_to_watts(number(rf, "sigma2_dbm"));
        d.rf.noise_amp = dbm_to_watts(number(rf, "sigmaF2_dbm"));
        d.rf.tx_power = dbm_to_watts(number(rf, "PB_dbm"));
        d.rf.amp_power = dbm_to_watts(number(rf, "PF_dbm"));

        const json& nodes = doc.at("nodes");
        if (!nodes.is_array()) throw ParseError("'nodes' must be an array");
        for (const json& n : nodes) {
            NodeSpec spec;
            const auto& id = n.at("id");
            if (!id.is_number_integer() || id.get<long long>() < 0)
                throw ParseError("node id must be a non-negative integer");
            spec.id = id.get<NodeId>();
            spec.kind = parse_kind(n.at("kind").get<std::string>());
            const json& pos = n.at("pos");
            if (!pos.is_array() || pos.size() != 3)
                throw ParseError(node_label(spec.id) + ": 'pos' must be [x, y, z]");
            spec.position = {pos[0].get<double>(), pos[1].get<double>(), pos[2].get<double>()};
            spec.array = parse_array(n, spec.kind);
            d.nodes.push_back(spec);
        }

        const std::size_t count = d.nodes.size();
        d.los.assign(count, std::vector<int>(count, 0));
        const json& los = doc.at("los");
        if (!los.is_array()) throw ParseError("'los' must be an array");
        const bool matrix_form =
            los.size() == count && count > 2 &&
            std::all_of(los.begin(), los.end(),
                        [&](const json& row) { return row.is_array() && row.size() == count; });
        if (matrix_form) {
            for (std::size_t i = 0; i < count; ++i)
                for (std::size_t j = 0; j < count; ++j) {
                    int v = los[i][j].get<int>();
                    if (v != 0 && v != 1)
                        throw ParseError("LoS matrix entries must be 0 or 1");
                    d.los[i][j] = v;
                }
        } else {
            for (const json& pair : los) {
                if (!pair.is_array() || pair.size() != 2)
                    throw ParseError("'los' entries must be [i, j] pairs");
                auto i = pair[0].get<long long>();
                auto j = pair[1].get<long long>();
                if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= count ||
                    static_cast<std::size_t>(j) >= count) {
                    d.problems.push_back("LoS pair [" + std::to_string(i) + ", " +
                                         std::to_string(j) + "] references an unknown node id");
                    continue;
                }
                d.los[i][j] = 1;
                d.los[j][i] = 1;
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("schema error: ") + e.what());
    }
    return d;
}

}  // namespace

std::string_view to_string(NodeKind kind)
{
    switch (kind) {
    case NodeKind::Bs: return "bs";
    case NodeKind::PassiveIrs: return "passive_irs";
    case NodeKind::ActiveIrs: return "active_irs";
    case NodeKind::User: return "user";
    }
    return "?";
}

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

ArrayDims near_square_dims(std::size_t count)
{
    if (count == 0) throw std::invalid_argument("element count must be positive");
    auto h = static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
    while (h > 1 && count % h != 0) --h;
    return {h, count / h};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid scenario: " + join(violations)),
      violations_(std::move(violations))
{
}

std::vector<std::string> Scenario::check(const std::vector<NodeSpec>& nodes,
                                         const std::vector<std::vector<int>>& los_matrix,
                                         const RfParams& rf)
{
    std::vector<std::string> out = check_rf(rf);
    const std::size_t count = nodes.size();

    if (count < 3) out.push_back("need at least a BS, an active IRS and a user");

    std::vector<int> seen(count, 0);
    for (const auto& n : nodes) {
        if (n.id >= count)
            out.push_back(node_label(n.id) + ": id out of range 0.." + std::to_string(count - 1));
        else if (seen[n.id]++ > 0)
            out.push_back("duplicate node id " + std::to_string(n.id));
        if (n.array.count() == 0) out.push_back(node_label(n.id) + ": empty array");
        if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y) ||
            !std::isfinite(n.position.z))
            out.push_back(node_label(n.id) + ": non-finite position");
    }

    auto count_kind = [&](NodeKind k) {
        return std::count_if(nodes.begin(), nodes.end(), [k](const auto& n) { return n.kind == k; });
    };
    if (count_kind(NodeKind::Bs) != 1) out.push_back("duplicate or missing BS: need exactly one");
    if (count_kind(NodeKind::User) != 1) out.push_back("duplicate or missing user: need exactly one");
    if (count_kind(NodeKind::ActiveIrs) != 1)
        out.push_back("need exactly one active IRS, found " +
                      std::to_string(count_kind(NodeKind::ActiveIrs)));

    for (const auto& n : nodes) {
        if (n.kind == NodeKind::Bs && n.id != 0) out.push_back("BS must have id 0");
        if (n.kind == NodeKind::User && n.id + 1 != count)
            out.push_back("user must have id " + std::to_string(count - 1));
        if (n.kind == NodeKind::Bs && n.array.vertical != 1)
            out.push_back("BS array must be linear");
    }

    const NodeSpec* first_passive = nullptr;
    for (const auto& n : nodes) {
        if (n.kind != NodeKind::PassiveIrs) continue;
        if (first_passive == nullptr) {
            first_passive = &n;
        } else if (!(n.array == first_passive->array)) {
            out.push_back(node_label(n.id) + ": passive IRS dimensions differ from " +
                          node_label(first_passive->id));
        }
    }

    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b)
            if (nodes[a].position == nodes[b].position)
                out.push_back("coincident positions: " + node_label(nodes[a].id) + " and " +
                              node_label(nodes[b].id));

    const bool square =
        los_matrix.size() == count &&
        std::all_of(los_matrix.begin(), los_matrix.end(),
                    [count](const auto& row) { return row.size() == count; });
    if (!square) {
        out.push_back("LoS matrix shape does not match node count");
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (los_matrix[i][i] != 0) out.push_back("LoS self-link at " + node_label(i));
        for (std::size_t j = i + 1; j < count; ++j)
            if (los_matrix[i][j] != los_matrix[j][i])
                out.push_back("asymmetric LoS entry between " + node_label(i) + " and " +
                              node_label(j));
    }
    return out;
}

Scenario Scenario::create(std::vector<NodeSpec> nodes,
                          const std::vector<std::pair<NodeId, NodeId>>& los, const RfParams& rf)
{
    const std::size_t count = nodes.size();
    std::vector<std::vector<int>> matrix(count, std::vector<int>(count, 0));
    std::vector<std::string> problems;
    for (auto [i, j] : los) {
        if (i >= count || j >= count) {
            problems.push_back("LoS pair references an unknown node id");
            continue;
        }
        matrix[i][j] = matrix[j][i] = 1;
    }
    auto more = check(nodes, matrix, rf);
    problems.insert(problems.end(), more.begin(), more.end());
    if (!problems.empty()) throw ValidationError(std::move(problems));

    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    Scenario s;
    s.nodes_ = std::move(nodes);
    s.rf_ = rf;
    s.los_.assign(count, std::vector<char>(count, 0));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) s.los_[i][j] = static_cast<char>(matrix[i][j]);
    for (const auto& n : s.nodes_)
        if (n.kind == NodeKind::ActiveIrs) s.active_ = n.id;
    return s;
}

void Scenario::require_id(NodeId id) const
{
    if (id >= nodes_.size()) throw std::out_of_range("unknown node id " + std::to_string(id));
}

const NodeSpec& Scenario::node(NodeId id) const
{
    require_id(id);
    return nodes_[id];
}

std::vector<NodeId> Scenario::passive_irs() const
{
    std::vector<NodeId> out;
    for (const auto& n : nodes_)
        if (n.kind == NodeKind::PassiveIrs) out.push_back(n.id);
    return out;
}

bool Scenario::los(NodeId i, NodeId j) const
{
    require_id(i);
    require_id(j);
    return los_[i][j] != 0;
}

std::vector<std::pair<NodeId, NodeId>> Scenario::los_pairs() const
{
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
        for (NodeId j = i + 1; j < nodes_.size(); ++j)
            if (los_[i][j]) out.emplace_back(i, j);
    return out;
}

double Scenario::distance(NodeId i, NodeId j) const
{
    require_id(i);
    require_id(j);
    if (i == j) throw std::invalid_argument("distance needs two distinct nodes");
    return norm(nodes_[j].position - nodes_[i].position);
}

LinkAngles Scenario::link_angles(NodeId i, NodeId j) const
{
    require_id(i);
    require_id(j);
    if (i == j) throw std::invalid_argument("link angles need two distinct nodes");
    const Vec3 delta = nodes_[j].position - nodes_[i].position;
    const double len = norm(delta);
    LinkAngles a;
    a.elevation = std::acos(std::clamp(delta.z / len, -1.0, 1.0));
    a.azimuth = std::atan2(delta.y, delta.x);
    if (a.azimuth <= -std::numbers::pi) a.azimuth = std::numbers::pi;
    return a;
}

std::size_t Scenario::passive_elements() const { return passive_dims().count(); }

ArrayDims Scenario::passive_dims() const
{
    for (const auto& n : nodes_)
        if (n.kind == NodeKind::PassiveIrs) return n.array;
    return {0, 1};
}

Scenario Scenario::with_rf(const RfParams& rf) const
{
    auto problems = check_rf(rf);
    if (!problems.empty()) throw ValidationError(std::move(problems));
    Scenario s = *this;
    s.rf_ = rf;
    return s;
}

Scenario Scenario::with_amp_power(double watts) const
{
    RfParams rf = rf_;
    rf.amp_power = watts;
    return with_rf(rf);
}

Scenario Scenario::with_active_dims(ArrayDims dims) const
{
    if (dims.count() == 0) throw std::invalid_argument("active IRS needs at least one element");
    Scenario s = *this;
    s.nodes_[active_].array = dims;
    return s;
}

Scenario Scenario::with_passive_dims(ArrayDims dims) const
{
    if (dims.count() == 0) throw std::invalid_argument("passive IRS needs at least one element");
    Scenario s = *this;
    for (auto& n : s.nodes_)
        if (n.kind == NodeKind::PassiveIrs) n.array = dims;
    return s;
}

Scenario load_scenario(std::string_view text)
{
    Draft d = parse_draft(text);
    auto more = Scenario::check(d.nodes, d.los, d.rf);
    d.problems.insert(d.problems.end(), more.begin(), more.end());
    if (!d.problems.empty()) throw ValidationError(std::move(d.problems));

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId i = 0; i < d.los.size(); ++i)
        for (NodeId j = i + 1; j < d.los.size(); ++j)
            if (d.los[i][j]) pairs.emplace_back(i, j);
    return Scenario::create(std::move(d.nodes), pairs, d.rf);
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::vector<std::string> diagnose_scenario(std::string_view text)
{
    try {
        Draft d = parse_draft(text);
        auto more = Scenario::check(d.nodes, d.los, d.rf);
        d.problems.insert(d.problems.end(), more.begin(), more.end());
        return d.problems;
    } catch (const ParseError& e) {
        return {std::string("parse error: ") + e.what()};
    }
}

std::string serialize_scenario(const Scenario& scenario)
{
    const RfParams& rf = scenario.rf();
    json doc;
    doc["rf"] = {
        {"lambda_m", rf.wavelength},
        {"d_I_m", rf.element_spacing},
        {"beta_db", linear_to_db(rf.reference_gain)},
        {"sigma2_dbm", watts_to_dbm(rf.noise_user)},
        {"sigmaF2_dbm", watts_to_dbm(rf.noise_amp)},
        {"PB_dbm", watts_to_dbm(rf.tx_power)},
        {"PF_dbm", watts_to_dbm(rf.amp_power)},
    };
    json nodes = json::array();
    for (const auto& n : scenario.nodes()) {
        json arr = json::object();
        switch (n.kind) {
        case NodeKind::Bs: arr["T"] = n.array.horizontal; break;
        case NodeKind::PassiveIrs:
            arr["M1"] = n.array.horizontal;
            arr["M2"] = n.array.vertical;
            break;
        case NodeKind::ActiveIrs:
            arr["N1"] = n.array.horizontal;
            arr["N2"] = n.array.vertical;
            break;
        case NodeKind::User: break;
        }
        nodes.push_back({{"id", n.id},
                         {"kind", std::string(to_string(n.kind))},
                         {"pos", {n.position.x, n.position.y, n.position.z}},
                         {"array", arr}});
    }
    doc["nodes"] = nodes;
    json los = json::array();
    for (auto [i, j] : scenario.los_pairs()) los.push_back({i, j});
    doc["los"] = los;
    return doc.dump(2) + "\n";
}

}  // namespace irsroute
