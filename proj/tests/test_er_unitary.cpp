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

#include <filesystem>
#include <fstream>
#include <numbers>

#include "spinline/er_unitary.hpp"
#include "spinline/rng.hpp"

using namespace spinline;

namespace {

PhiVector random_phi(std::uint64_t seed) {
    SplitMix64 gen(seed);
    PhiVector phi;
    for (int i = 0; i < kNumPhiAngles; ++i) phi.set_flat(i, gen.next_double(2 * std::numbers::pi));
    return phi;
}

}  // namespace

TEST_CASE("the pair list splits into the two excitation blocks") {
    int one_exc = 0, two_exc = 0;
    for (const auto& [n, m] : rotation_pairs()) {
        const auto [bn, ln] = er_block_of(n);
        const auto [bm, lm] = er_block_of(m);
        CHECK(bn == bm);
        CHECK(ln < lm);
        (bn == 1 ? one_exc : two_exc) += 1;
    }
    CHECK(one_exc == 6);
    CHECK(two_exc == 15);
}

TEST_CASE("zero angles compose to the identity") {
    const PhiVector phi;
    const ERUnitary u = compose(phi);
    CHECK((u.to_matrix() - Eigen::MatrixXcd::Identity(11, 11)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((elementary_rotation(1, 2, 3, 0.0) - Eigen::MatrixXcd::Identity(11, 11)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("elementary rotations at pi/2") {
    const double half_pi = std::numbers::pi / 2;
    const Eigen::MatrixXcd r1 = elementary_rotation(1, 2, 3, half_pi);
    // basis 2 -> i basis 3 and 3 -> i basis 2 (1-based positions)
    CHECK(std::abs(r1(2, 1) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(r1(1, 2) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(r1(1, 1)) < 1e-15);
    CHECK(std::abs(r1(2, 2)) < 1e-15);

    const Eigen::MatrixXcd r2 = elementary_rotation(2, 2, 3, half_pi);
    // basis 2 -> -basis 3, basis 3 -> basis 2
    CHECK(std::abs(r2(2, 1) - Complex(-1, 0)) < 1e-15);
    CHECK(std::abs(r2(1, 2) - Complex(1, 0)) < 1e-15);

    CHECK_THROWS_AS(elementary_rotation(1, 2, 4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(elementary_rotation(3, 2, 3, 0.5), std::invalid_argument);
}

TEST_CASE("composition fixes the vacuum and the excitation blocks") {
    const PhiVector phi = random_phi(11);
    for (ProductOrdering ordering :
         {ProductOrdering::canonical, ProductOrdering::alternate,
          ProductOrdering::canonical_swapped, ProductOrdering::alternate_swapped}) {
        const Eigen::MatrixXcd u = compose(phi, ordering).to_matrix();
        CHECK(std::abs(u(0, 0) - Complex(1, 0)) == 0.0);
        for (int k = 1; k < 11; ++k) {
            CHECK(std::abs(u(0, k)) == 0.0);
            CHECK(std::abs(u(k, 0)) == 0.0);
        }
        // no mixing between the one- and two-excitation positions
        const auto& order = BasisCatalog::er_order();
        for (int a = 0; a < 11; ++a)
            for (int b = 0; b < 11; ++b)
                if (order[static_cast<std::size_t>(a)].excitations() != order[static_cast<std::size_t>(b)].excitations())
                    CHECK(std::abs(u(a, b)) == 0.0);
    }
}

TEST_CASE("composition is unitary for random angles") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const ERUnitary u = compose(random_phi(seed));
        CHECK(u.unitarity_defect() < 1e-12);
    }
}

TEST_CASE("negated angles in mirrored order give the adjoint") {
    const PhiVector phi = random_phi(99);
    Eigen::VectorXd negated = -phi.to_vector();
    const ERUnitary u = compose(phi, ProductOrdering::canonical);
    const ERUnitary inv = compose_flat(negated.data(), ProductOrdering::alternate_swapped);
    CHECK((inv.to_matrix() - u.to_matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("orderings genuinely differ for generic angles") {
    const PhiVector phi = random_phi(5);
    const Eigen::MatrixXcd a = compose(phi, ProductOrdering::canonical).to_matrix();
    const Eigen::MatrixXcd b = compose(phi, ProductOrdering::alternate).to_matrix();
    const Eigen::MatrixXcd c = compose(phi, ProductOrdering::canonical_swapped).to_matrix();
    CHECK((a - b).cwiseAbs().maxCoeff() > 1e-3);
    CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("embedding the identity gives the chain identity") {
    const BasisCatalog catalog(7);
    const BlockOperator w = embed(compose(PhiVector()), catalog);
    CHECK((w.b1 - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((w.b2 - Eigen::MatrixXcd::Identity(21, 21)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a single receiver rotation lands on the right chain entry") {
    PhiVector phi;
    phi.set(1, 2, 3, std::numbers::pi / 2);
    const BasisCatalog catalog(6);
    const BlockOperator w = embed(compose(phi), catalog);
    const int row = catalog.offset_of(1, 0b000010);
    const int col = catalog.offset_of(1, 0b000001);
    CHECK(std::abs(w.b1(row, col) - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(w.b1(col, row) - Complex(0, 1)) < 1e-15);
    // heads differing means no coupling
    const int other = catalog.offset_of(1, 0b010000);
    CHECK(std::abs(w.b1(other, col)) == 0.0);
}

TEST_CASE("embedding preserves unitarity") {
    const BasisCatalog catalog(8);
    for (std::uint64_t seed : {7ull, 8ull}) {
        const BlockOperator w = embed(compose(random_phi(seed)), catalog);
        CHECK(w.unitarity_defect() < 1e-12);
    }
}

TEST_CASE("phi tables round-trip and reject malformed input") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spinline_phi_test";
    fs::create_directories(dir);

    const PhiVector phi = random_phi(1234);
    const fs::path file = dir / "table.csv";
    write_phi_table(file, phi);
    const PhiVector loaded = read_phi_table(file);
    for (int i = 0; i < kNumPhiAngles; ++i)
        CHECK(loaded.flat(i) == doctest::Approx(phi.flat(i)).epsilon(1e-15));

    // duplicate row
    {
        std::ofstream out(dir / "dup.csv");
        for (int r = 0; r < 2; ++r)
            for (const auto& [n, m] : rotation_pairs()) out << "1," << n << ',' << m << ",0.5\n";
    }
    CHECK_THROWS(read_phi_table(dir / "dup.csv"));

    // wrong row count
    {
        std::ofstream out(dir / "short.csv");
        out << "1,2,3,0.5\n";
    }
    CHECK_THROWS(read_phi_table(dir / "short.csv"));

    // bad pair
    {
        std::ofstream out(dir / "badpair.csv");
        out << "1,2,4,0.5\n";
    }
    CHECK_THROWS(read_phi_table(dir / "badpair.csv"));
}

TEST_CASE("angles are reduced modulo two pi on ingestion") {
    PhiVector phi;
    phi.set(2, 2, 5, 6.3390);
    CHECK(phi.at(2, 2, 5) == doctest::Approx(6.3390 - 2 * std::numbers::pi).epsilon(1e-12));
    phi.set(1, 2, 3, -0.1);
    CHECK(phi.at(1, 2, 3) == doctest::Approx(2 * std::numbers::pi - 0.1).epsilon(1e-12));
}
