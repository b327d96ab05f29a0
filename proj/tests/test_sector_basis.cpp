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

#include <algorithm>

#include "spinline/sector_basis.hpp"

using namespace spinline;

namespace {

long binomial(int n, int k) {
    long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

}  // namespace

TEST_CASE("vacuum sector is the single all-zero configuration") {
    const auto sector = enumerate_sector(4, 0);
    REQUIRE(sector.size() == 1);
    CHECK(sector[0].to_string() == "0000");
    CHECK(sector[0].excitations() == 0);
}

TEST_CASE("receiver ordering is the fixed eleven-state list") {
    const auto& order = BasisCatalog::er_order();
    const std::vector<std::string> expected = {"0000", "0001", "0010", "0011", "0100", "0101",
                                               "0110", "1000", "1001", "1010", "1100"};
    for (int i = 0; i < 11; ++i)
        CHECK(order[static_cast<std::size_t>(i)].to_string() == expected[static_cast<std::size_t>(i)]);
    CHECK(order[0].excitations() == 0);  // first element is the vacuum

    // it interleaves the sectors: same states as sectors 0..2 of a
    // 4-site chain, in globally ascending binary order
    std::vector<Configuration> combined;
    for (int k = 0; k <= 2; ++k)
        for (const auto& c : enumerate_sector(4, k)) combined.push_back(c);
    REQUIRE(combined.size() == 11);
    std::sort(combined.begin(), combined.end(),
              [](const Configuration& a, const Configuration& b) { return a.bits < b.bits; });
    for (int i = 0; i < 11; ++i)
        CHECK(combined[static_cast<std::size_t>(i)] == order[static_cast<std::size_t>(i)]);
}

TEST_CASE("five-site two-excitation sector is lexicographic") {
    const auto sector = enumerate_sector(5, 2);
    REQUIRE(sector.size() == 10);
    CHECK(sector.front().to_string() == "00011");
    CHECK(sector.back().to_string() == "11000");
    for (std::size_t i = 1; i < sector.size(); ++i)
        CHECK(sector[i - 1].bits < sector[i].bits);
}

TEST_CASE("sector sizes are binomial for several chain lengths") {
    for (int n : {4, 6, 8, 10, 42}) {
        for (int k = 0; k <= 2; ++k) {
            const auto sector = enumerate_sector(n, k);
            CHECK(static_cast<long>(sector.size()) == binomial(n, k));
            for (const auto& c : sector) CHECK(c.excitations() == k);
            for (std::size_t i = 1; i < sector.size(); ++i)
                CHECK(sector[i - 1].bits < sector[i].bits);
        }
    }
}

TEST_CASE("index_of inverts enumeration") {
    const BasisCatalog catalog(6);
    int seen = 0;
    for (int k = 0; k <= 2; ++k) {
        const auto& sector = catalog.sector(k);
        for (std::size_t i = 0; i < sector.size(); ++i) {
            const auto [kk, off] = catalog.index_of(sector[i]);
            CHECK(kk == k);
            CHECK(off == static_cast<int>(i));
            ++seen;
        }
    }
    CHECK(seen == 22);  // 1 + 6 + 15
}

TEST_CASE("vacuum and edge single-excitation indices") {
    const BasisCatalog catalog(42);
    CHECK(catalog.index_of(Configuration(0, 42)) == std::pair<int, int>(0, 0));
    // excitation at site 1 has the largest binary value in its sector
    CHECK(catalog.index_of(Configuration(1ull << 41, 42)) == std::pair<int, int>(1, 41));
    CHECK(catalog.index_of(Configuration(1, 42)) == std::pair<int, int>(1, 0));
}

TEST_CASE("out-of-subspace configurations are rejected") {
    const BasisCatalog catalog(6);
    CHECK_THROWS_AS(catalog.index_of(Configuration(0b111000, 6)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(6, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sector(2, -1), std::invalid_argument);
}

TEST_CASE("split_tail splits and concat restores") {
    const auto [h1, t1] = split_tail(Configuration::from_string("000011"), 4);
    CHECK(h1.to_string() == "00");
    CHECK(t1.to_string() == "0011");

    const auto [h2, t2] = split_tail(Configuration::from_string("100001"), 4);
    CHECK(h2.to_string() == "10");
    CHECK(t2.to_string() == "0001");

    for (int k = 0; k <= 2; ++k) {
        for (const auto& c : enumerate_sector(6, k)) {
            const auto [head, tail] = split_tail(c, 4);
            CHECK(concat(head, tail) == c);
        }
    }
}

TEST_CASE("er_index_of matches the fixed ordering") {
    for (int i = 0; i < 11; ++i)
        CHECK(BasisCatalog::er_index_of(BasisCatalog::er_order()[static_cast<std::size_t>(i)].bits) == i);
    CHECK(BasisCatalog::er_index_of(0b0111) == -1);
    CHECK(BasisCatalog::er_index_of(0b1111) == -1);
}
