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

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spinline {

// A spin configuration on n_sites sites.  Site 1 is the most significant
// bit of `bits`, so ascending binary value is a total order on each sector.
struct Configuration {
    std::uint64_t bits = 0;
    int n_sites = 0;

    Configuration() = default;
    Configuration(std::uint64_t b, int n);

    int excitations() const;
    // 1-based site access: site(1) is the leftmost spin.
    bool site(int i) const;
    std::string to_string() const;
    static Configuration from_string(const std::string& s);

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Split off the trailing tail_len sites: (head, tail) with
// head ++ tail == config.
std::pair<Configuration, Configuration> split_tail(const Configuration& config, int tail_len);

// Concatenate two configurations (inverse of split_tail).
Configuration concat(const Configuration& head, const Configuration& tail);

// All configurations of n_sites spins with exactly k excitations,
// ascending binary value.  k is capped at 2: the dynamics never leaves
// the two-excitation subspace.
std::vector<Configuration> enumerate_sector(int n_sites, int k);

// Indexed access to the 0/1/2-excitation sectors of an n-site chain,
// plus the fixed 11-state ordering of the 4-site extended receiver.
class BasisCatalog {
public:
    explicit BasisCatalog(int n_sites);

    int n_sites() const { return n_sites_; }
    const std::vector<Configuration>& sector(int k) const;
    int sector_dim(int k) const { return static_cast<int>(sector(k).size()); }

    // (sector, offset) of a configuration; throws for >2 excitations.
    std::pair<int, int> index_of(const Configuration& config) const;
    // Offset within sector k of the state with the given bit pattern.
    int offset_of(int k, std::uint64_t bits) const;

    // The eleven 4-site extended-receiver states:
    // 0000, 0001, 0010, 0011, 0100, 0101, 0110, 1000, 1001, 1010, 1100.
    static const std::array<Configuration, 11>& er_order();
    // Position (0..10) of a 4-bit pattern in er_order; -1 if absent.
    static int er_index_of(std::uint64_t tail_bits);

private:
    int n_sites_;
    std::array<std::vector<Configuration>, 3> sectors_;
    std::array<std::unordered_map<std::uint64_t, int>, 3> offsets_;
};

}  // namespace spinline
