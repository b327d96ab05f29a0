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
#include <cstdint>
#include <vector>

#include "spinline/er_unitary.hpp"
#include "spinline/evolution.hpp"
#include "spinline/sector_basis.hpp"

namespace spinline {

// Two-qubit basis order 00, 01, 10, 11 (first qubit = lower site index).
struct TwoQubitState {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();

    double hermiticity_defect() const;
    double trace_real() const { return rho.trace().real(); }
    double min_eigenvalue() const;
    bool is_physical(double tol = 1e-10) const;
};

// GG^dag / tr(GG^dag) with Ginibre G drawn from the given seed.
TwoQubitState random_density_matrix(std::uint64_t seed);

// Partition of a 4x4 matrix by coherence order
// n = excitations(column) - excitations(row), n = -2..2.
struct CoherenceDecomposition {
    std::array<Eigen::Matrix4cd, 5> components;  // index n + 2

    const Eigen::Matrix4cd& order(int n) const { return components[static_cast<std::size_t>(n + 2)]; }
    Eigen::Matrix4cd sum() const;
};

CoherenceDecomposition coherence_decompose(const TwoQubitState& state);

// The complex scalars through which the receiver's upper nondiagonal
// entries depend on the sender's.  Index 0 stands for "01", 1 for "10",
// first index = receiver element, second = sender element.
struct TransferCoefficients {
    Complex d{};
    std::array<std::array<Complex, 2>, 2> a{};
    std::array<std::array<Complex, 2>, 2> b{};
    std::array<std::array<Complex, 2>, 2> c{};
    std::array<std::array<Complex, 2>, 2> f{};  // f[n][m] pairs sender (n;m)
    Complex f_11_11{};
};

// Upper nondiagonal entries of a two-qubit density matrix, grouped by
// coherence order.
struct UpperEntries {
    Complex r00_01, r00_10, r01_11, r10_11;  // first order
    Complex r00_11;                          // second order
    Complex r01_10;                          // zero order
};

UpperEntries upper_entries(const TwoQubitState& state);

// Receiver entries predicted by contracting the coefficients against a
// sender state.
UpperEntries predicted_entries(const TransferCoefficients& coef, const TwoQubitState& sender);

// W = (identity on S+TL  x  U^(ER)) V(t).
BlockOperator total_W(const PhiVector& phi, ProductOrdering ordering, double t,
                      const SpectralData& spectral, const BasisCatalog& catalog);

// The three nontrivial columns of W addressed by a sender-only initial
// excitation: W|01,0..0>, W|10,0..0> (one-excitation sector) and
// W|11,0..0> (two-excitation sector).
struct SenderColumns {
    Eigen::VectorXcd c01;
    Eigen::VectorXcd c10;
    Eigen::VectorXcd c11;
};

SenderColumns sender_columns(const BlockOperator& w, const BasisCatalog& catalog);

// Partial trace over sites 1..N-2 of W (rho_S x vacuum) W^dag.
TwoQubitState receiver_state(const TwoQubitState& rho_S, const BlockOperator& w,
                             const BasisCatalog& catalog);
TwoQubitState receiver_state(const TwoQubitState& rho_S, const SenderColumns& cols,
                             const BasisCatalog& catalog);

// 16x16 map from vectorized sender to vectorized receiver state,
// row-major element order (00,01,10,11) x (00,01,10,11).
Eigen::MatrixXcd transfer_tensor(const BlockOperator& w, const BasisCatalog& catalog);
Eigen::MatrixXcd transfer_tensor(const SenderColumns& cols, const BasisCatalog& catalog);

TwoQubitState apply_tensor(const Eigen::MatrixXcd& tensor, const TwoQubitState& rho_S);

// Kraus completeness defect: max |sum_m sum_J W^+ W - delta| over the
// sender basis.
double kraus_defect(const SenderColumns& cols);

// Reads d, a, b, c, f off the W matrix elements.
TransferCoefficients coefficients(const BlockOperator& w, const BasisCatalog& catalog);

// Precomputed propagator slices for one (chain, t); turns a PhiVector
// into TransferCoefficients without forming W.  Safe for concurrent use.
class CoefficientEngine {
public:
    CoefficientEngine(const SpectralData& spectral, const BasisCatalog& catalog, double t);

    int n_sites() const { return n_; }
    double time() const { return t_; }

    TransferCoefficients coefficients(const PhiVector& phi, ProductOrdering ordering) const;
    TransferCoefficients coefficients(const ERUnitary& u) const;

    // full evolved columns (for receiver states and tensors)
    SenderColumns evolved_columns(const ERUnitary& u) const;

private:
    int n_;
    double t_;
    // V-column slices: heads are the vacuum or a single excitation at
    // site p <= N-4; tails run over the receiver basis states.
    std::array<std::array<Complex, 4>, 2> a1_;       // [sender 01|10][1-exc tail]
    std::array<Complex, 6> a2_;                      // [2-exc tail], sender 11 column
    std::array<std::vector<Complex>, 2> b1_;         // [sender][site p], tail 0000
    std::vector<std::array<Complex, 4>> b2_;         // [site p][1-exc tail], sender 11 column
    // raw V columns and row maps for evolved_columns
    Eigen::VectorXcd v01_, v10_, v11_;
    struct RowTerm {
        int col;
        std::int8_t lc;
    };
    struct Row {
        std::int8_t block;  // 0 = identity, 1 = u1, 2 = u2
        std::int8_t lr;
        std::vector<RowTerm> terms;
    };
    std::vector<Row> rows1_, rows2_;
};

}  // namespace spinline
