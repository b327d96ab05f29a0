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

#include "spinline/chain_model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace spinline {

void ChainSpec::validate() const {
    if (n_sites < 6)
        throw std::invalid_argument("ChainSpec: n_sites must be >= 6 (two-qubit sender plus four-site extended receiver)");
    if (delta_bulk <= 0 || delta_1 <= 0 || delta_2 <= 0)
        throw std::invalid_argument("ChainSpec: couplings must be positive");
}

double ChainSpec::nn_coupling(int i) const {
    if (i < 1 || i >= n_sites) throw std::invalid_argument("ChainSpec::nn_coupling: bond index out of range");
    if (i == 1 || i == n_sites - 1) return delta_1 * delta_bulk;
    if (i == 2 || i == n_sites - 2) return delta_2 * delta_bulk;
    return delta_bulk;
}

std::vector<double> build_positions(const ChainSpec& spec) {
    spec.validate();
    std::vector<double> x(static_cast<std::size_t>(spec.n_sites), 0.0);
    for (int i = 1; i < spec.n_sites; ++i) {
        const double gap = 1.0 / std::cbrt(spec.nn_coupling(i));
        x[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)] + gap;
    }
    return x;
}

Eigen::MatrixXd coupling_matrix(const std::vector<double>& positions) {
    const int n = static_cast<int>(positions.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = positions[static_cast<std::size_t>(j)] - positions[static_cast<std::size_t>(i)];
            if (r <= 0) throw std::invalid_argument("coupling_matrix: positions must be strictly increasing");
            d(i, j) = d(j, i) = 1.0 / (r * r * r);
        }
    }
    return d;
}

HamiltonianBlocks hamiltonian_blocks(const Eigen::MatrixXd& coupling, const BasisCatalog& catalog) {
    const int n = catalog.n_sites();
    if (coupling.rows() != n || coupling.cols() != n)
        throw std::invalid_argument("hamiltonian_blocks: coupling matrix does not match catalog");

    HamiltonianBlocks blocks;
    const auto& sec1 = catalog.sector(1);
    const auto& sec2 = catalog.sector(2);

    // one excitation: <e_l| H |e_k> = D_kl / 2
    blocks.h1 = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        const int site_a = n - std::countr_zero(sec1[static_cast<std::size_t>(a)].bits);
        for (int b = a + 1; b < n; ++b) {
            const int site_b = n - std::countr_zero(sec1[static_cast<std::size_t>(b)].bits);
            blocks.h1(a, b) = blocks.h1(b, a) = 0.5 * coupling(site_a - 1, site_b - 1);
        }
    }

    // two excitations: states differing by one moved excitation couple
    // with half the coupling of the moved pair
    const int n2 = static_cast<int>(sec2.size());
    blocks.h2 = Eigen::MatrixXd::Zero(n2, n2);
    for (int a = 0; a < n2; ++a) {
        for (int b = a + 1; b < n2; ++b) {
            const std::uint64_t diff = sec2[static_cast<std::size_t>(a)].bits ^ sec2[static_cast<std::size_t>(b)].bits;
            if (std::popcount(diff) != 2) continue;
            // shared excitation fixed, the other hops between the two set bits of diff
            const int lo = std::countr_zero(diff);
            const int hi = 63 - std::countl_zero(diff);
            const int site_lo = n - lo;
            const int site_hi = n - hi;
            blocks.h2(a, b) = blocks.h2(b, a) = 0.5 * coupling(site_hi - 1, site_lo - 1);
        }
    }
    return blocks;
}

}  // namespace spinline
