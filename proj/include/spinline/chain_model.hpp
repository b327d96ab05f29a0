// Copyright 2026 The Spinline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinline/sector_basis.hpp"

namespace spinline {

// Symmetric open chain: bulk coupling delta_bulk, end couplings
// delta_1 = delta_{N-1} and delta_2 = delta_{N-2} given as multiples
// of delta_bulk.  Energies are measured in units of the bulk coupling,
// times in its inverse.
struct ChainSpec {
    int n_sites = 42;
    double delta_bulk = 1.0;
    double delta_1 = 0.3005;
    double delta_2 = 0.5311;

    void validate() const;
    // nearest-neighbor coupling between sites i and i+1 (1-based i)
    double nn_coupling(int i) const;
};

// Site coordinates realizing the prescribed nearest-neighbor couplings:
// x_1 = 0, x_{i+1} = x_i + delta_i^(-1/3).
std::vector<double> build_positions(const ChainSpec& spec);

// All-pairs dipole couplings D_ij = |x_i - x_j|^(-3), zero diagonal.
Eigen::MatrixXd coupling_matrix(const std::vector<double>& positions);

// Flip-flop Hamiltonian restricted to the 1- and 2-excitation sectors.
// The 0-excitation block is identically zero and is not stored.
struct HamiltonianBlocks {
    Eigen::MatrixXd h1;  // N x N
    Eigen::MatrixXd h2;  // C(N,2) x C(N,2)
};

// H = sum_{j>i} D_ij (I_ix I_jx + I_iy I_jy); matrix element D_kl/2
// between configurations that differ by moving one excitation from
// site k to site l.
HamiltonianBlocks hamiltonian_blocks(const Eigen::MatrixXd& coupling, const BasisCatalog& catalog);

}  // namespace spinline
