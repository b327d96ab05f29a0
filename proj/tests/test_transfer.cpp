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

#include <bit>
#include <numbers>

#include "oracles.hpp"
#include "spinline/rng.hpp"
#include "spinline/transfer.hpp"

using namespace spinline;

namespace {

struct Pipeline {
    ChainSpec spec;
    BasisCatalog catalog;
    Eigen::MatrixXd coupling;
    SpectralData spectral;

    explicit Pipeline(int n)
        : spec{make_spec(n)},
          catalog(n),
          coupling(coupling_matrix(build_positions(spec))),
          spectral(eigendecompose(hamiltonian_blocks(coupling, catalog))) {}

    static ChainSpec make_spec(int n) {
        ChainSpec s;
        s.n_sites = n;
        return s;
    }
};

PhiVector random_phi(std::uint64_t seed) {
    SplitMix64 gen(seed);
    PhiVector phi;
    for (int i = 0; i < kNumPhiAngles; ++i) phi.set_flat(i, gen.next_double(2 * std::numbers::pi));
    return phi;
}

double max_abs(const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("identity angles at t=0 give the identity map") {
    Pipeline p(6);
    const BlockOperator w = total_W(PhiVector(), ProductOrdering::canonical, 0.0, p.spectral, p.catalog);
    CHECK((w.b1 - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((w.b2 - Eigen::MatrixXcd::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-14);

    // receiver starts in its ground state
    const TwoQubitState rho = random_density_matrix(3);
    const TwoQubitState out = receiver_state(rho, w, p.catalog);
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected(0, 0) = 1.0;
    CHECK(max_abs(out.rho - expected) < 1e-13);
}

TEST_CASE("W is block-unitary with unit vacuum element") {
    Pipeline p(7);
    for (std::uint64_t seed : {1ull, 9ull}) {
        const BlockOperator w =
            total_W(random_phi(seed), ProductOrdering::canonical, 17.3, p.spectral, p.catalog);
        CHECK(w.unitarity_defect() < 1e-12);
        CHECK(w.b0 == Complex(1, 0));
    }
}

TEST_CASE("receiver state is trace preserving, Hermitian, positive and linear") {
    Pipeline p(7);
    const BlockOperator w =
        total_W(random_phi(21), ProductOrdering::canonical, 9.4, p.spectral, p.catalog);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TwoQubitState rho = random_density_matrix(1000 + seed);
        const TwoQubitState out = receiver_state(rho, w, p.catalog);
        CHECK(std::abs(out.trace_real() - 1.0) < 1e-12);
        CHECK(out.hermiticity_defect() < 1e-12);
        CHECK(out.min_eigenvalue() > -1e-10);
    }

    const TwoQubitState r1 = random_density_matrix(51);
    const TwoQubitState r2 = random_density_matrix(52);
    const double alpha = 0.37;
    TwoQubitState mix;
    mix.rho = alpha * r1.rho + (1 - alpha) * r2.rho;
    const Eigen::Matrix4cd lhs = receiver_state(mix, w, p.catalog).rho;
    const Eigen::Matrix4cd rhs = alpha * receiver_state(r1, w, p.catalog).rho +
                                 (1 - alpha) * receiver_state(r2, w, p.catalog).rho;
    CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("sector evolution matches the dense full-space reference") {
    Pipeline p(6);
    SplitMix64 gen(0xabcdef);
    for (int trial = 0; trial < 6; ++trial) {
        const PhiVector phi = random_phi(100 + static_cast<std::uint64_t>(trial));
        const double t = gen.next_double(30.0);
        const TwoQubitState rho = random_density_matrix(200 + static_cast<std::uint64_t>(trial));

        const BlockOperator w = total_W(phi, ProductOrdering::canonical, t, p.spectral, p.catalog);
        const TwoQubitState fast = receiver_state(rho, w, p.catalog);
        const Eigen::Matrix4cd reference =
            oracle::receiver_state_reference(rho.rho, p.coupling, t, compose(phi));
        CHECK(max_abs(fast.rho - reference) < 1e-12);
    }
}

TEST_CASE("transfer tensor reproduces the channel and its structure") {
    Pipeline p(7);
    const PhiVector phi = random_phi(7);
    const double t = 12.0;
    const BlockOperator w = total_W(phi, ProductOrdering::canonical, t, p.spectral, p.catalog);
    const Eigen::MatrixXcd tensor = transfer_tensor(w, p.catalog);

    // tensor application agrees with the evolution route
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const TwoQubitState rho = random_density_matrix(300 + seed);
        const TwoQubitState via_tensor = apply_tensor(tensor, rho);
        const TwoQubitState direct = receiver_state(rho, w, p.catalog);
        CHECK(max_abs(via_tensor.rho - direct.rho) < 1e-12);
    }

    // coherence-order selection rule: exact zeros off the diagonal blocks
    for (int rn = 0; rn < 4; ++rn)
        for (int rm = 0; rm < 4; ++rm)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const int order_out = std::popcount(static_cast<unsigned>(rm)) -
                                          std::popcount(static_cast<unsigned>(rn));
                    const int order_in = std::popcount(static_cast<unsigned>(j)) -
                                         std::popcount(static_cast<unsigned>(i));
                    if (order_out != order_in)
                        CHECK(std::abs(tensor(4 * rn + rm, 4 * i + j)) == 0.0);
                }

    // Kraus completeness from the unitarity of W
    CHECK(kraus_defect(sender_columns(w, p.catalog)) < 1e-12);
}

TEST_CASE("identity map at t=0 concentrates the tensor on the vacuum row") {
    Pipeline p(6);
    const BlockOperator w = total_W(PhiVector(), ProductOrdering::canonical, 0.0, p.spectral, p.catalog);
    const Eigen::MatrixXcd tensor = transfer_tensor(w, p.catalog);
    for (int rn = 0; rn < 4; ++rn)
        for (int rm = 0; rm < 4; ++rm)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    const Complex want = (rn == 0 && rm == 0 && i == j) ? Complex(1, 0) : Complex(0, 0);
                    CHECK(std::abs(tensor(4 * rn + rm, 4 * i + j) - want) < 1e-13);
                }
}

TEST_CASE("coherence decomposition partitions by order") {
    const TwoQubitState rho = random_density_matrix(17);
    const CoherenceDecomposition decomp = coherence_decompose(rho);
    CHECK(max_abs(decomp.sum() - rho.rho) == 0.0);
    // entry (00;11) sits in order +2, the diagonal in order 0
    CHECK(decomp.order(2)(0, 3) == rho.rho(0, 3));
    CHECK(decomp.order(0)(1, 1) == rho.rho(1, 1));
    CHECK(std::abs(decomp.order(1)(0, 3)) == 0.0);
    // Hermitian input: order(-n) is the adjoint of order(n)
    for (int n = 0; n <= 2; ++n)
        CHECK(max_abs(decomp.order(-n) - decomp.order(n).adjoint().eval()) < 1e-15);
}

TEST_CASE("coefficient extraction: identity channel carries nothing") {
    Pipeline p(7);
    const BlockOperator w = total_W(PhiVector(), ProductOrdering::canonical, 0.0, p.spectral, p.catalog);
    const TransferCoefficients coef = coefficients(w, p.catalog);
    CHECK(std::abs(coef.d) < 1e-14);
    for (int n = 0; n < 2; ++n)
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(coef.a[n][i]) < 1e-14);
            CHECK(std::abs(coef.b[n][i]) < 1e-14);
            CHECK(std::abs(coef.c[n][i]) < 1e-14);
            CHECK(std::abs(coef.f[n][i]) < 1e-14);
        }
    CHECK(std::abs(coef.f_11_11) < 1e-14);
}

TEST_CASE("fast engine agrees with the direct element reads") {
    for (int n : {6, 7, 9}) {
        Pipeline p(n);
        const double t = 14.2;
        const CoefficientEngine engine(p.spectral, p.catalog, t);
        for (std::uint64_t seed : {4ull, 5ull}) {
            const PhiVector phi = random_phi(seed);
            for (ProductOrdering ordering : {ProductOrdering::canonical, ProductOrdering::alternate}) {
                const BlockOperator w = total_W(phi, ordering, t, p.spectral, p.catalog);
                const TransferCoefficients slow = coefficients(w, p.catalog);
                const TransferCoefficients fast = engine.coefficients(phi, ordering);
                CHECK(std::abs(slow.d - fast.d) < 1e-13);
                CHECK(std::abs(slow.f_11_11 - fast.f_11_11) < 1e-13);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        CHECK(std::abs(slow.a[a][b] - fast.a[a][b]) < 1e-13);
                        CHECK(std::abs(slow.b[a][b] - fast.b[a][b]) < 1e-13);
                        CHECK(std::abs(slow.c[a][b] - fast.c[a][b]) < 1e-13);
                        CHECK(std::abs(slow.f[a][b] - fast.f[a][b]) < 1e-13);
                    }

                // evolved columns match the W columns
                const SenderColumns fast_cols = engine.evolved_columns(compose(phi, ordering));
                const SenderColumns slow_cols = sender_columns(w, p.catalog);
                CHECK((fast_cols.c01 - slow_cols.c01).cwiseAbs().maxCoeff() < 1e-13);
                CHECK((fast_cols.c10 - slow_cols.c10).cwiseAbs().maxCoeff() < 1e-13);
                CHECK((fast_cols.c11 - slow_cols.c11).cwiseAbs().maxCoeff() < 1e-13);
            }
        }
    }
}

TEST_CASE("coefficients reproduce the evolved upper entries") {
    for (int n : {6, 8}) {
        Pipeline p(n);
        const double t = 23.7;
        const CoefficientEngine engine(p.spectral, p.catalog, t);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const PhiVector phi = random_phi(40 + seed);
            const ERUnitary u = compose(phi);
            const TransferCoefficients coef = engine.coefficients(u);
            const SenderColumns cols = engine.evolved_columns(u);
            for (std::uint64_t probe = 0; probe < 5; ++probe) {
                const TwoQubitState rho = random_density_matrix(500 + probe);
                const UpperEntries predicted = predicted_entries(coef, rho);
                const UpperEntries actual = upper_entries(receiver_state(rho, cols, p.catalog));
                CHECK(std::abs(predicted.r00_01 - actual.r00_01) < 1e-12);
                CHECK(std::abs(predicted.r00_10 - actual.r00_10) < 1e-12);
                CHECK(std::abs(predicted.r01_11 - actual.r01_11) < 1e-12);
                CHECK(std::abs(predicted.r10_11 - actual.r10_11) < 1e-12);
                CHECK(std::abs(predicted.r00_11 - actual.r00_11) < 1e-12);
                CHECK(std::abs(predicted.r01_10 - actual.r01_10) < 1e-12);
            }
        }
    }
}

TEST_CASE("product identities among the extracted coefficients") {
    Pipeline p(7);
    const CoefficientEngine engine(p.spectral, p.catalog, 31.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const TransferCoefficients coef =
            engine.coefficients(random_phi(600 + seed), ProductOrdering::canonical);
        for (int n = 0; n < 2; ++n)
            for (int i = 0; i < 2; ++i) {
                CHECK(std::abs(coef.c[n][i] - std::conj(coef.a[n][i]) * coef.d) < 1e-12);
                CHECK(std::abs(coef.f[n][i] - std::conj(coef.a[0][n]) * coef.a[1][i]) < 1e-12);
            }
        // a rows sit inside a unitary
        CHECK(std::norm(coef.a[0][0]) + std::norm(coef.a[0][1]) <= 1.0 + 1e-10);
        CHECK(std::norm(coef.a[1][0]) + std::norm(coef.a[1][1]) <= 1.0 + 1e-10);
    }
}

TEST_CASE("coherence orders travel independently through the channel") {
    Pipeline p(6);
    const CoefficientEngine engine(p.spectral, p.catalog, 8.0);
    const ERUnitary u = compose(random_phi(77));
    const SenderColumns cols = engine.evolved_columns(u);
    const TwoQubitState rho = random_density_matrix(78);
    const CoherenceDecomposition parts = coherence_decompose(rho);
    for (int order = -2; order <= 2; ++order) {
        TwoQubitState injected;
        injected.rho = parts.order(order);
        const TwoQubitState out = receiver_state(injected, cols, p.catalog);
        const CoherenceDecomposition out_parts = coherence_decompose(out);
        for (int other = -2; other <= 2; ++other)
            if (other != order) CHECK(max_abs(out_parts.order(other)) < 1e-13);
    }
}
