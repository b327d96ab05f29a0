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
#include <array>
#include <filesystem>
#include <utility>

#include "spinline/evolution.hpp"
#include "spinline/sector_basis.hpp"

namespace spinline {

inline constexpr int kNumRotationPairs = 21;
inline constexpr int kNumPhiAngles = 2 * kNumRotationPairs;

// The 21 index pairs (1-based positions in the 11-state receiver basis)
// addressed by the planar rotations.  Six pairs act inside the
// one-excitation block, fifteen inside the two-excitation block.
const std::array<std::pair<int, int>, kNumRotationPairs>& rotation_pairs();

// 42 rotation angles keyed by (kind, pair).  Angles are reduced to
// [0, 2*pi) on ingestion.
class PhiVector {
public:
    PhiVector();  // all zeros

    double at(int kind, int n, int m) const;
    void set(int kind, int n, int m, double value);

    // flat layout: kind-1 angles over the 21 pairs, then kind-2 angles
    double flat(int idx) const { return angles_[static_cast<std::size_t>(idx)]; }
    void set_flat(int idx, double value);
    Eigen::VectorXd to_vector() const;
    static PhiVector from_vector(const Eigen::VectorXd& v);

    friend bool operator==(const PhiVector&, const PhiVector&) = default;

private:
    static int slot(int kind, int n, int m);
    std::array<double, kNumPhiAngles> angles_;
};

// Order of the rotation product.  "canonical" applies the pair (2,3)
// first and (10,11) last, pairs sorted lexicographically; "alternate"
// reverses the pair order.  The *_swapped variants flip which kind of
// rotation acts first within each pair (kind 1 first by default).
enum class ProductOrdering { canonical, alternate, canonical_swapped, alternate_swapped };

ProductOrdering ordering_from_string(const std::string& name);
std::string to_string(ProductOrdering ordering);

// Receiver unitary stored blockwise: u1 over the one-excitation states
// (0001, 0010, 0100, 1000), u2 over the two-excitation states
// (0011, 0101, 0110, 1001, 1010, 1100).  The vacuum is untouched.
struct ERUnitary {
    Eigen::Matrix4cd u1;
    Eigen::Matrix<Complex, 6, 6> u2;

    Eigen::MatrixXcd to_matrix() const;  // 11 x 11 over er_order
    double unitarity_defect() const;
};

// block/local coordinates of a 1-based basis position
std::pair<int, int> er_block_of(int position);

// exp(i*phi*gamma) for a single generator, as the full 11x11 matrix.
// kind 1: [[cos, i sin],[i sin, cos]] on the (n,m) plane;
// kind 2: [[cos, sin],[-sin, cos]].
Eigen::MatrixXcd elementary_rotation(int kind, int n, int m, double phi);

// Product of the 42 elementary rotations in the requested order.
ERUnitary compose(const PhiVector& phi, ProductOrdering ordering = ProductOrdering::canonical);

// Same product from raw angles in flat layout (kind-1 block then
// kind-2 block); no wrapping, for optimizer inner loops.
ERUnitary compose_flat(const double* angles, ProductOrdering ordering);

// Identity on all but the last four sites, tensored with the receiver
// unitary; block-diagonal over the chain's excitation sectors.
BlockOperator embed(const ERUnitary& u, const BasisCatalog& catalog);

// phi-table file: exactly 42 CSV rows "kind,n,m,phi_radians" covering
// every (kind, pair) key once.  '#' comments and a literal header line
// are skipped.
PhiVector read_phi_table(const std::filesystem::path& path);
void write_phi_table(const std::filesystem::path& path, const PhiVector& phi);

}  // namespace spinline
