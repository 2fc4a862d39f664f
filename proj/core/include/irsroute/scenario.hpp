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
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irsroute {

using NodeId = std::size_t;

enum class NodeKind { Bs, PassiveIrs, ActiveIrs, User };

std::string_view to_string(NodeKind kind);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

double norm(const Vec3& v);
Vec3 operator-(const Vec3& a, const Vec3& b);

/// Element grid of an array. `horizontal` is the factor that varies slowest
/// in the steering vector; a BS linear array of T antennas is {T, 1}.
struct ArrayDims {
    std::size_t horizontal = 1;
    std::size_t vertical = 1;

    std::size_t count() const { return horizontal * vertical; }
    friend bool operator==(const ArrayDims&, const ArrayDims&) = default;
};

/// Most-square factorization h x v = count with h <= v.
ArrayDims near_square_dims(std::size_t count);

struct NodeSpec {
    NodeId id = 0;
    NodeKind kind = NodeKind::PassiveIrs;
    Vec3 position;
    ArrayDims array;

    std::size_t elements() const { return array.count(); }
    friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Radio constants, all in watts or linear ratios.
struct RfParams {
    double wavelength = 0.06;        // lambda [m]
    double element_spacing = 0.03;   // d_I [m]
    double reference_gain = 0.0;     // beta, power gain at 1 m
    double noise_user = 0.0;         // sigma^2 [W]
    double noise_amp = 0.0;          // sigma_F^2 [W]
    double tx_power = 0.0;           // P_B [W]
    double amp_power = 0.0;          // P_F [W]

    friend bool operator==(const RfParams&, const RfParams&) = default;
};

struct LinkAngles {
    double azimuth = 0.0;    // atan2(dy, dx), in (-pi, pi]
    double elevation = 0.0;  // angle from +z, in [0, pi]
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Immutable world description: nodes indexed 0 (BS) .. J+1 (user), a
/// symmetric LoS indicator and the RF constants.
class Scenario {
public:
    /// Validates and builds. `nodes` may be given in any order; `los` lists
    /// unordered pairs. Throws ValidationError listing every violation.
    static Scenario create(std::vector<NodeSpec> nodes,
                           const std::vector<std::pair<NodeId, NodeId>>& los,
                           const RfParams& rf);

    /// Every invariant violation of the given description; empty when valid.
    static std::vector<std::string> check(const std::vector<NodeSpec>& nodes,
                                          const std::vector<std::vector<int>>& los_matrix,
                                          const RfParams& rf);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t irs_count() const { return nodes_.size() - 2; }
    NodeId bs() const { return 0; }
    NodeId user() const { return nodes_.size() - 1; }
    NodeId active_irs() const { return active_; }
    std::vector<NodeId> passive_irs() const;

    const NodeSpec& node(NodeId id) const;
    const std::vector<NodeSpec>& nodes() const { return nodes_; }
    const RfParams& rf() const { return rf_; }

    bool los(NodeId i, NodeId j) const;
    /// Unordered LoS pairs (i < j), sorted.
    std::vector<std::pair<NodeId, NodeId>> los_pairs() const;
    bool has_direct_link() const { return los(bs(), user()); }

    double distance(NodeId i, NodeId j) const;
    /// Direction angles of position(j) - position(i).
    LinkAngles link_angles(NodeId i, NodeId j) const;

    std::size_t bs_antennas() const { return node(bs()).elements(); }
    /// M; shared by all passive IRSs (0 when there is none).
    std::size_t passive_elements() const;
    std::size_t active_elements() const { return node(active_).elements(); }
    ArrayDims passive_dims() const;

    Scenario with_rf(const RfParams& rf) const;
    Scenario with_amp_power(double watts) const;
    Scenario with_active_dims(ArrayDims dims) const;
    Scenario with_passive_dims(ArrayDims dims) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;

private:
    Scenario() = default;
    void require_id(NodeId id) const;

    std::vector<NodeSpec> nodes_;
    std::vector<std::vector<char>> los_;
    RfParams rf_;
    NodeId active_ = 0;
};

double db_to_linear(double db);
double dbm_to_watts(double dbm);
double linear_to_db(double ratio);
double watts_to_dbm(double watts);

/// Parses a scenario document (JSON syntax). Throws ParseError on malformed
/// input and ValidationError on invariant violations.
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

/// All problems found in a document, parse errors included; empty when it
/// loads cleanly.
std::vector<std::string> diagnose_scenario(std::string_view text);

/// Writes a document that load_scenario maps back to the same Scenario.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace irsroute
