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

// Brute-force full-Hilbert-space reference implementations.  Everything
// here works on dense 2^N matrices and is deliberately independent of
// the sector-restricted code paths it checks.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spinline/er_unitary.hpp"
#include "spinline/sector_basis.hpp"

namespace oracle {

using spinline::Complex;
using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// spin-1/2 projection operator at 1-based site of an n-site chain,
// site 1 carried by the most significant qubit
inline Matrix site_operator(const Matrix& op, int site, int n) {
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 1; s <= n; ++s)
        out = kron(out, s == site ? op : Matrix::Identity(2, 2));
    return out;
}

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

// H = sum_{j>i} D_ij (I_ix I_jx + I_iy I_jy) with I = sigma/2, built on
// the full 2^n space by explicit tensor products
inline Matrix full_hamiltonian(const Eigen::MatrixXd& coupling) {
    const int n = static_cast<int>(coupling.rows());
    const Eigen::Index dim = Eigen::Index(1) << n;
    Matrix h = Matrix::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const Matrix xx = site_operator(0.5 * pauli_x(), i, n) * site_operator(0.5 * pauli_x(), j, n);
            const Matrix yy = site_operator(0.5 * pauli_y(), i, n) * site_operator(0.5 * pauli_y(), j, n);
            h += coupling(i - 1, j - 1) * (xx + yy);
        }
    }
    return h;
}

inline Matrix expm_hermitian(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Eigen::VectorXcd phases =
        (Complex(0, -t) * solver.eigenvalues().cast<Complex>().array()).exp();
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// receiver unitary extended by the identity on the 3+ excitation states
// of the last four sites, then tensored up to the full chain
inline Matrix full_er_unitary(const spinline::ERUnitary& u, int n) {
    const Eigen::MatrixXcd u11 = u.to_matrix();
    Matrix u16 = Matrix::Identity(16, 16);
    const auto& order = spinline::BasisCatalog::er_order();
    for (int a = 0; a < 11; ++a)
        for (int b = 0; b < 11; ++b)
            u16(static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)].bits),
                static_cast<Eigen::Index>(order[static_cast<std::size_t>(b)].bits)) = u11(a, b);
    return kron(Matrix::Identity(Eigen::Index(1) << (n - 4), Eigen::Index(1) << (n - 4)), u16);
}

// rho_S on sites 1..2 tensored with the vacuum of the remaining sites
inline Matrix full_initial_state(const Eigen::Matrix4cd& rho_s, int n) {
    const Eigen::Index env_dim = Eigen::Index(1) << (n - 2);
    Matrix env = Matrix::Zero(env_dim, env_dim);
    env(0, 0) = 1.0;
    return kron(rho_s, env);
}

// partial trace over the first n-2 sites
inline Eigen::Matrix4cd trace_out_environment(const Matrix& rho, int n) {
    const Eigen::Index env_dim = Eigen::Index(1) << (n - 2);
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (Eigen::Index env = 0; env < env_dim; ++env)
        for (Eigen::Index r = 0; r < 4; ++r)
            for (Eigen::Index c = 0; c < 4; ++c) out(r, c) += rho(env * 4 + r, env * 4 + c);
    return out;
}

// end-to-end reference: initial product state, full-space W = (E x U) V,
// conjugation and reduction to the last two sites
inline Eigen::Matrix4cd receiver_state_reference(const Eigen::Matrix4cd& rho_s,
                                                 const Eigen::MatrixXd& coupling, double t,
                                                 const spinline::ERUnitary& u) {
    const int n = static_cast<int>(coupling.rows());
    const Matrix w = full_er_unitary(u, n) * expm_hermitian(full_hamiltonian(coupling), t);
    const Matrix rho_t = w * full_initial_state(rho_s, n) * w.adjoint();
    return trace_out_environment(rho_t, n);
}

}  // namespace oracle
