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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "irsroute/channel.hpp"
#include "random_scenarios.hpp"

using namespace irsroute;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_vector(const ComplexVector& v, std::initializer_list<Complex> want)
{
    ASSERT_EQ(static_cast<std::size_t>(v.size()), want.size());
    Eigen::Index k = 0;
    for (Complex w : want) {
        EXPECT_NEAR(v[k].real(), w.real(), 1e-12) << "entry " << k;
        EXPECT_NEAR(v[k].imag(), w.imag(), 1e-12) << "entry " << k;
        ++k;
    }
}

// Independent evaluation of one steering entry straight from the element
// indices (m horizontal, n vertical).
Complex ura_entry(double az, double el, std::size_t m, std::size_t n, double spacing, double lambda)
{
    const double s1 = 2 * spacing / lambda * std::sin(el) * std::cos(az);
    const double s2 = 2 * spacing / lambda * std::cos(el);
    return std::polar(1.0, -kPi * (static_cast<double>(m) * s1 + static_cast<double>(n) * s2));
}

Vec3 unit(const Vec3& v) { return {v.x / norm(v), v.y / norm(v), v.z / norm(v)}; }

// a(from -> to) recomputed from positions; user = 1, BS = x-axis ULA.
ComplexVector response(const Scenario& s, NodeId at, const Vec3& dir)
{
    const NodeSpec& n = s.node(at);
    const double sp = s.rf().element_spacing, lam = s.rf().wavelength;
    ComplexVector out(static_cast<Eigen::Index>(n.elements()));
    if (n.kind == NodeKind::User) {
        out[0] = 1.0;
        return out;
    }
    if (n.kind == NodeKind::Bs) {
        for (std::size_t k = 0; k < n.elements(); ++k)
            out[static_cast<Eigen::Index>(k)] =
                std::polar(1.0, -kPi * static_cast<double>(k) * 2 * sp / lam * dir.x);
        return out;
    }
    const double el = std::acos(dir.z);
    const double az = std::atan2(dir.y, dir.x);
    Eigen::Index k = 0;
    for (std::size_t m = 0; m < n.array.horizontal; ++m)
        for (std::size_t v = 0; v < n.array.vertical; ++v) out[k++] = ura_entry(az, el, m, v, sp, lam);
    return out;
}

}  // namespace

TEST(SteeringU, Examples)
{
    expect_vector(steering_u(0.37, 1), {1.0});
    expect_vector(steering_u(0.0, 4), {1.0, 1.0, 1.0, 1.0});
    expect_vector(steering_u(1.0, 2), {1.0, -1.0});
    EXPECT_THROW(steering_u(0.5, 0), std::invalid_argument);
}

TEST(SteeringU, UnitModulusEntries)
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> slope(-3.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rep % 17;
        ComplexVector u = steering_u(slope(rng), n);
        for (Eigen::Index k = 0; k < u.size(); ++k) EXPECT_NEAR(std::abs(u[k]), 1.0, 1e-14);
        EXPECT_NEAR(u.squaredNorm(), static_cast<double>(n), 1e-12);
    }
}

TEST(UraSteering, Examples)
{
    ComplexVector flat = ura_steering(kPi / 2, kPi / 2, {3, 4}, 0.03, 0.06);
    ASSERT_EQ(flat.size(), 12);
    for (Eigen::Index k = 0; k < flat.size(); ++k) {
        EXPECT_NEAR(flat[k].real(), 1.0, 1e-12);
        EXPECT_NEAR(flat[k].imag(), 0.0, 1e-12);
    }
    expect_vector(ura_steering(0.4, 1.1, {1, 1}, 0.03, 0.06), {1.0});
    expect_vector(ura_steering(0.3, 0.0, {2, 2}, 0.03, 0.06), {1.0, -1.0, 1.0, -1.0});
    EXPECT_THROW(ura_steering(0.0, 0.0, {0, 2}, 0.03, 0.06), std::invalid_argument);
}

TEST(UraSteering, KroneckerOrderHorizontalSlowest)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> az(-kPi, kPi), el(0.0, kPi);
    for (int rep = 0; rep < 50; ++rep) {
        const double a = az(rng), e = el(rng);
        const ArrayDims dims{1 + static_cast<std::size_t>(rep % 4), 1 + static_cast<std::size_t>(rep % 5)};
        ComplexVector v = ura_steering(a, e, dims, 0.03, 0.06);
        ASSERT_EQ(static_cast<std::size_t>(v.size()), dims.count());
        Eigen::Index k = 0;
        for (std::size_t m = 0; m < dims.horizontal; ++m)
            for (std::size_t n = 0; n < dims.vertical; ++n, ++k) {
                Complex want = ura_entry(a, e, m, n, 0.03, 0.06);
                EXPECT_NEAR(std::abs(v[k] - want), 0.0, 1e-12);
            }
        EXPECT_NEAR(v.squaredNorm(), static_cast<double>(dims.count()), 1e-10);
    }
}

TEST(UlaSteering, Examples)
{
    expect_vector(ula_steering(kPi / 2, 3, 0.03, 0.06), {1.0, 1.0, 1.0});
    expect_vector(ula_steering(0.8, 1, 0.03, 0.06), {1.0});
    expect_vector(ula_steering(0.0, 3, 0.03, 0.06), {1.0, -1.0, 1.0});
    ComplexVector a = ula_steering(0.9, 5, 0.02, 0.06);
    ComplexVector b = steering_u(2 * 0.02 / 0.06 * std::cos(0.9), 5);
    EXPECT_NEAR((a - b).norm(), 0.0, 1e-15);
}

TEST(LinkGain, Examples)
{
    const double beta = std::pow(10.0, -4.6);
    EXPECT_NEAR(std::abs(link_gain(1.0, beta, 0.06)), std::sqrt(beta), 1e-15);
    EXPECT_NEAR(std::norm(link_gain(10.0, beta, 0.06)), std::pow(10.0, -6.6), 1e-20);
    // 5 / 0.06 = 83 + 1/3 wavelengths
    const double arg = std::arg(link_gain(5.0, beta, 0.06));
    EXPECT_NEAR(std::remainder(arg + 2 * kPi / 3, 2 * kPi), 0.0, 1e-9);
    EXPECT_THROW(link_gain(0.0, beta, 0.06), std::invalid_argument);
    EXPECT_THROW(link_gain(-1.0, beta, 0.06), std::invalid_argument);
}

TEST(LinkGain, PhaseMatchesDistanceModulo)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> d(0.1, 80.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double dist = d(rng);
        Complex h = link_gain(dist, 1e-4, 0.06);
        EXPECT_NEAR(std::abs(h), 1e-2 / dist, 1e-15);
        EXPECT_NEAR(std::remainder(std::arg(h) + 2 * kPi * dist / 0.06, 2 * kPi), 0.0, 1e-9);
    }
}

TEST(ChannelMatrix, DegenerateArraysGiveScalarGain)
{
    std::vector<NodeSpec> nodes = {
        {0, NodeKind::Bs, {0, 0, 0}, {1, 1}},
        {1, NodeKind::ActiveIrs, {3, 4, 0}, {1, 1}},
        {2, NodeKind::User, {6, 0, 0}, {1, 1}},
    };
    Scenario s = Scenario::create(nodes, {{0, 1}, {1, 2}}, testkit::reference_rf());
    ComplexMatrix h = channel_matrix(s, 0, 1);
    ASSERT_EQ(h.rows(), 1);
    ASSERT_EQ(h.cols(), 1);
    Complex want = link_gain(5.0, s.rf().reference_gain, s.rf().wavelength);
    EXPECT_NEAR(std::abs(h(0, 0) - want), 0.0, 1e-15);
}

TEST(ChannelMatrix, ErrorsOnMissingLosOrDirection)
{
    std::mt19937_64 rng(24);
    testkit::RandomScenarioOptions o;
    o.los_probability = 1.0;
    Scenario s = testkit::random_scenario(rng, o);
    EXPECT_THROW(channel_matrix(s, s.bs(), s.user()), std::invalid_argument);
    EXPECT_THROW(channel_matrix(s, s.user(), s.active_irs()), std::invalid_argument);
    EXPECT_THROW(channel_matrix(s, s.active_irs(), s.bs()), std::invalid_argument);
}

TEST(ChannelMatrix, RankOneWithExpectedNormAndEntries)
{
    std::mt19937_64 rng(25);
    for (int rep = 0; rep < 100; ++rep) {
        testkit::RandomScenarioOptions o;
        o.los_probability = 1.0;
        Scenario s = testkit::random_scenario(rng, o);
        for (NodeId i = 0; i < s.node_count(); ++i)
            for (NodeId j = 0; j < s.node_count(); ++j) {
                if (i == j || !s.los(i, j) || i == s.user() || j == s.bs()) continue;
                ComplexMatrix h = channel_matrix(s, i, j);
                const double ui = static_cast<double>(s.node(i).elements());
                const double uj = static_cast<double>(s.node(j).elements());
                const double d = s.distance(i, j);
                const double gain = s.rf().reference_gain / (d * d);
                ASSERT_EQ(h.rows(), static_cast<Eigen::Index>(uj));
                ASSERT_EQ(h.cols(), static_cast<Eigen::Index>(ui));
                EXPECT_NEAR(h.squaredNorm(), gain * ui * uj, 1e-9 * gain * ui * uj);

                Eigen::JacobiSVD<ComplexMatrix> svd(h);
                const auto& sv = svd.singularValues();
                EXPECT_NEAR(sv[0], std::sqrt(gain * ui * uj), 1e-9 * sv[0]);
                if (sv.size() > 1) {
                    EXPECT_LT(sv[1], 1e-9 * sv[0]);
                }

                // outer-product oracle from raw coordinates
                const Vec3 dir = unit(s.node(j).position - s.node(i).position);
                const Vec3 back{-dir.x, -dir.y, -dir.z};
                ComplexVector at = response(s, i, dir);
                ComplexVector ar = response(s, j, back);
                const Complex hij = std::polar(std::sqrt(gain), -2 * kPi * d / s.rf().wavelength);
                ComplexMatrix want = hij * ar * at.adjoint();
                EXPECT_LT((h - want).norm(), 1e-9 * want.norm());
            }
    }
}

TEST(ChannelMatrix, SteeringHelpersMatchRows)
{
    std::mt19937_64 rng(26);
    Scenario s = testkit::random_scenario(rng, {});
    const NodeId a = s.active_irs();
    ComplexVector t = transmit_steering(s, s.bs(), a);
    ComplexVector r = receive_steering(s, s.bs(), a);
    EXPECT_EQ(static_cast<std::size_t>(t.size()), s.bs_antennas());
    EXPECT_EQ(static_cast<std::size_t>(r.size()), s.active_elements());
    ComplexVector u = receive_steering(s, a, s.user());
    EXPECT_EQ(u.size(), 1);
}
