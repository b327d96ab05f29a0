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

#include "spinline/sector_basis.hpp"

#include <bit>
#include <stdexcept>

namespace spinline {

Configuration::Configuration(std::uint64_t b, int n) : bits(b), n_sites(n) {
    if (n < 1 || n > 63) throw std::invalid_argument("Configuration: n_sites out of range");
    if (n < 64 && (b >> n) != 0)
        throw std::invalid_argument("Configuration: bits exceed n_sites");
}

int Configuration::excitations() const {
    return std::popcount(bits);
}

bool Configuration::site(int i) const {
    if (i < 1 || i > n_sites) throw std::invalid_argument("Configuration::site: index out of range");
    return (bits >> (n_sites - i)) & 1u;
}

std::string Configuration::to_string() const {
    std::string s(static_cast<std::size_t>(n_sites), '0');
    for (int i = 1; i <= n_sites; ++i)
        if (site(i)) s[static_cast<std::size_t>(i - 1)] = '1';
    return s;
}

Configuration Configuration::from_string(const std::string& s) {
    std::uint64_t b = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("Configuration::from_string: expected a 0/1 string");
        b = (b << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Configuration(b, static_cast<int>(s.size()));
}

std::pair<Configuration, Configuration> split_tail(const Configuration& config, int tail_len) {
    if (tail_len < 0 || tail_len > config.n_sites)
        throw std::invalid_argument("split_tail: tail_len out of range");
    const std::uint64_t mask = (tail_len == 64) ? ~0ull : ((1ull << tail_len) - 1);
    Configuration head(config.bits >> tail_len, config.n_sites - tail_len);
    Configuration tail(config.bits & mask, tail_len);
    return {head, tail};
}

Configuration concat(const Configuration& head, const Configuration& tail) {
    return Configuration((head.bits << tail.n_sites) | tail.bits, head.n_sites + tail.n_sites);
}

std::vector<Configuration> enumerate_sector(int n_sites, int k) {
    if (n_sites < 2) throw std::invalid_argument("enumerate_sector: n_sites must be >= 2");
    if (k < 0 || k > 2) throw std::invalid_argument("enumerate_sector: excitation count must be 0, 1 or 2");
    if (k > n_sites) throw std::invalid_argument("enumerate_sector: k exceeds n_sites");

    std::vector<Configuration> out;
    switch (k) {
        case 0:
            out.emplace_back(0u, n_sites);
            break;
        case 1:
            for (int b = 0; b < n_sites; ++b)
                out.emplace_back(1ull << b, n_sites);
            break;
        case 2:
            // ascending binary value: the higher bit grows outermost
            for (int hi = 1; hi < n_sites; ++hi)
                for (int lo = 0; lo < hi; ++lo)
                    out.emplace_back((1ull << hi) | (1ull << lo), n_sites);
            break;
    }
    return out;
}

BasisCatalog::BasisCatalog(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 2) throw std::invalid_argument("BasisCatalog: n_sites must be >= 2");
    for (int k = 0; k <= 2 && k <= n_sites; ++k) {
        sectors_[static_cast<std::size_t>(k)] = enumerate_sector(n_sites, k);
        auto& map = offsets_[static_cast<std::size_t>(k)];
        const auto& sec = sectors_[static_cast<std::size_t>(k)];
        map.reserve(sec.size());
        for (std::size_t i = 0; i < sec.size(); ++i)
            map.emplace(sec[i].bits, static_cast<int>(i));
    }
}

const std::vector<Configuration>& BasisCatalog::sector(int k) const {
    if (k < 0 || k > 2) throw std::invalid_argument("BasisCatalog::sector: k must be 0, 1 or 2");
    return sectors_[static_cast<std::size_t>(k)];
}

std::pair<int, int> BasisCatalog::index_of(const Configuration& config) const {
    if (config.n_sites != n_sites_)
        throw std::invalid_argument("BasisCatalog::index_of: site count mismatch");
    const int k = config.excitations();
    if (k > 2) throw std::invalid_argument("BasisCatalog::index_of: configuration outside the two-excitation subspace");
    return {k, offset_of(k, config.bits)};
}

int BasisCatalog::offset_of(int k, std::uint64_t bits) const {
    const auto& map = offsets_[static_cast<std::size_t>(k)];
    auto it = map.find(bits);
    if (it == map.end()) throw std::invalid_argument("BasisCatalog::offset_of: no such configuration");
    return it->second;
}

const std::array<Configuration, 11>& BasisCatalog::er_order() {
    static const std::array<Configuration, 11> order = {
        Configuration(0b0000, 4), Configuration(0b0001, 4), Configuration(0b0010, 4),
        Configuration(0b0011, 4), Configuration(0b0100, 4), Configuration(0b0101, 4),
        Configuration(0b0110, 4), Configuration(0b1000, 4), Configuration(0b1001, 4),
        Configuration(0b1010, 4), Configuration(0b1100, 4)};
    return order;
}

int BasisCatalog::er_index_of(std::uint64_t tail_bits) {
    // dense lookup over the 16 possible 4-bit patterns
    static const std::array<int, 16> table = [] {
        std::array<int, 16> t{};
        t.fill(-1);
        const auto& order = er_order();
        for (int i = 0; i < 11; ++i) t[order[static_cast<std::size_t>(i)].bits] = i;
        return t;
    }();
    return table[tail_bits & 0xF];
}

}  // namespace spinline
