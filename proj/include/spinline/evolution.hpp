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
#include <complex>

#include "spinline/chain_model.hpp"

namespace spinline {

using Complex = std::complex<double>;

// Eigenbasis of the 1- and 2-excitation Hamiltonian blocks.  Computed
// once; every propagator evaluation reuses it.
struct SpectralData {
    Eigen::VectorXd evals1;
    Eigen::MatrixXd evecs1;
    Eigen::VectorXd evals2;
    Eigen::MatrixXd evecs2;
};

// Complex operator block-diagonal over the 0/1/2-excitation sectors.
struct BlockOperator {
    Complex b0{1.0, 0.0};  // vacuum amplitude
    Eigen::MatrixXcd b1;
    Eigen::MatrixXcd b2;

    // max |B^dag B - I| over both nontrivial blocks
    double unitarity_defect() const;
};

// Symmetric eigendecomposition of both blocks; throws if the solver
// fails to converge or the reconstruction drifts above 1e-12.
SpectralData eigendecompose(const HamiltonianBlocks& blocks);

// V(t) = exp(-i H t) per sector; the vacuum block is exactly 1.
BlockOperator propagator(const SpectralData& spectral, double t);

// Single column of V(t): exp(-i H_k t) applied to basis vector `offset`
// of sector k (k = 1 or 2).  O(dim^2), no full matrix is formed.
Eigen::VectorXcd propagator_column(const SpectralData& spectral, double t, int k, int offset);

}  // namespace spinline
