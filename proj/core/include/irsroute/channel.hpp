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

#include <complex>

#include <Eigen/Dense>

#include "irsroute/scenario.hpp"

namespace irsroute {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRow = Eigen::RowVectorXcd;

/// u(zeta, U) = [1, e^{-j pi zeta}, ..., e^{-j (U-1) pi zeta}]^T.
ComplexVector steering_u(double slope, std::size_t count);

/// URA response u(2 d_I/lambda sin(el) cos(az), U1) (x) u(2 d_I/lambda cos(el), U2).
/// The horizontal factor varies slowest.
ComplexVector ura_steering(double azimuth, double elevation, ArrayDims dims, double spacing,
                           double wavelength);

/// ULA response u(2 d_I/lambda cos(angle), T); `angle` is measured from the array axis.
ComplexVector ula_steering(double angle, std::size_t count, double spacing, double wavelength);

/// LoS gain sqrt(beta)/d * exp(-j 2 pi d / lambda).
Complex link_gain(double distance, double reference_gain, double wavelength);

/// Departure response of node `from` towards `to` (U_from entries). The BS
/// uses its x-axis ULA; the user is a single antenna.
ComplexVector transmit_steering(const Scenario& scenario, NodeId from, NodeId to);

/// Arrival response at node `to` for the wave coming from `from` (U_to entries).
ComplexVector receive_steering(const Scenario& scenario, NodeId from, NodeId to);

/// H_{i,j} = h_{i,j} a_r a_t^H, a U_j x U_i rank-one matrix. For j the user
/// this is the 1 x U_i row h^H_{i,J+1}. Throws std::invalid_argument when
/// the pair has no LoS or the direction is unsupported.
ComplexMatrix channel_matrix(const Scenario& scenario, NodeId from, NodeId to);

}  // namespace irsroute
