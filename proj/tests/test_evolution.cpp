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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "spinline/evolution.hpp"
#include "spinline/rng.hpp"

using namespace spinline;

namespace {

HamiltonianBlocks two_site_blocks() {
    HamiltonianBlocks blocks;
    blocks.h1.resize(2, 2);
    blocks.h1 << 0.0, 0.5, 0.5, 0.0;
    blocks.h2 = Eigen::MatrixXd::Zero(1, 1);
    return blocks;
}

HamiltonianBlocks chain_blocks(int n) {
    ChainSpec spec;
    spec.n_sites = n;
    const BasisCatalog catalog(n);
    return hamiltonian_blocks(coupling_matrix(build_positions(spec)), catalog);
}

}  // namespace

TEST_CASE("two-site eigenvalues are +-1/2") {
    const SpectralData spectral = eigendecompose(two_site_blocks());
    CHECK(spectral.evals1[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(spectral.evals1[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("eigenvalue sum matches the zero trace") {
    const SpectralData spectral = eigendecompose(chain_blocks(10));
    CHECK(spectral.evals1.sum() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(spectral.evals2.sum() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("reconstruction holds for a mid-sized chain") {
    const HamiltonianBlocks blocks = chain_blocks(12);
    const SpectralData spectral = eigendecompose(blocks);
    const Eigen::MatrixXd rebuilt =
        spectral.evecs2 * spectral.evals2.asDiagonal() * spectral.evecs2.transpose();
    CHECK((rebuilt - blocks.h2).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd gram = spectral.evecs2.transpose() * spectral.evecs2;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagator at t=0 is the identity") {
    const BlockOperator v = propagator(eigendecompose(chain_blocks(8)), 0.0);
    CHECK(v.b0 == Complex(1, 0));
    CHECK((v.b1 - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((v.b2 - Eigen::MatrixXcd::Identity(28, 28)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two-site propagator at t=pi swaps with phase -i") {
    const BlockOperator v = propagator(eigendecompose(two_site_blocks()), std::numbers::pi);
    CHECK(std::abs(v.b1(0, 0)) < 1e-14);
    CHECK(std::abs(v.b1(1, 1)) < 1e-14);
    CHECK(std::abs(v.b1(0, 1) - Complex(0, -1)) < 1e-14);
    CHECK(std::abs(v.b1(1, 0) - Complex(0, -1)) < 1e-14);
}

TEST_CASE("propagators compose as a one-parameter group") {
    const SpectralData spectral = eigendecompose(chain_blocks(7));
    SplitMix64 gen(77);
    for (int trial = 0; trial < 5; ++trial) {
        const double t1 = gen.next_double(20.0) - 10.0;
        const double t2 = gen.next_double(20.0) - 10.0;
        const BlockOperator va = propagator(spectral, t1);
        const BlockOperator vb = propagator(spectral, t2);
        const BlockOperator vc = propagator(spectral, t1 + t2);
        CHECK((va.b1 * vb.b1 - vc.b1).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((va.b2 * vb.b2 - vc.b2).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("propagator blocks stay unitary") {
    const SpectralData spectral = eigendecompose(chain_blocks(9));
    for (double t : {0.1, 3.7, 58.9826, -12.0}) CHECK(propagator(spectral, t).unitarity_defect() < 1e-12);
}

TEST_CASE("propagator_column extracts single columns") {
    const SpectralData spectral = eigendecompose(chain_blocks(7));
    const double t = 5.3;
    const BlockOperator v = propagator(spectral, t);
    for (int k = 1; k <= 2; ++k) {
        const Eigen::MatrixXcd& block = (k == 1) ? v.b1 : v.b2;
        for (int col : {0, 2}) {
            const Eigen::VectorXcd column = propagator_column(spectral, t, k, col);
            CHECK((column - block.col(col)).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
    CHECK_THROWS_AS(propagator_column(spectral, t, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(propagator_column(spectral, t, 1, 99), std::invalid_argument);
}
