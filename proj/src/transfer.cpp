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

#include "spinline/transfer.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "spinline/rng.hpp"

namespace spinline {

namespace {

// bit patterns of the receiver basis blocks, in local order
constexpr std::array<std::uint64_t, 4> kOneExcTails = {1, 2, 4, 8};
constexpr std::array<std::uint64_t, 6> kTwoExcTails = {3, 5, 6, 9, 10, 12};

// (block, local) coordinates of a 4-bit tail
std::pair<int, int> tail_block(std::uint64_t tail_bits) {
    const int idx = BasisCatalog::er_index_of(tail_bits);
    if (idx < 0) throw std::invalid_argument("tail pattern outside the receiver basis");
    return er_block_of(idx + 1);
}

struct RowTerm {
    int col;
    std::int8_t lc;
};
struct EmbeddingRow {
    std::int8_t block;
    std::int8_t lr;
    std::vector<RowTerm> terms;
};

// per-row sparse structure of (identity x U^(ER)) on sector k
std::vector<EmbeddingRow> build_embedding_rows(const BasisCatalog& catalog, int k) {
    const auto& sec = catalog.sector(k);
    std::vector<EmbeddingRow> rows(sec.size());
    for (std::size_t r = 0; r < sec.size(); ++r) {
        const auto [head, tail] = split_tail(sec[r], 4);
        const auto [block, lr] = tail_block(tail.bits);
        EmbeddingRow& row = rows[r];
        row.block = static_cast<std::int8_t>(block);
        row.lr = static_cast<std::int8_t>(lr);
        if (block == 0) {
            row.terms.push_back({catalog.offset_of(k, sec[r].bits), 0});
            continue;
        }
        const auto& tails = BasisCatalog::er_order();
        for (int tau = 0; tau < 11; ++tau) {
            const Configuration& cand = tails[static_cast<std::size_t>(tau)];
            if (head.excitations() + cand.excitations() != k) continue;
            const auto [cb, lc] = er_block_of(tau + 1);
            if (cb != block) continue;
            const std::uint64_t col_bits = (head.bits << 4) | cand.bits;
            row.terms.push_back({catalog.offset_of(k, col_bits), static_cast<std::int8_t>(lc)});
        }
    }
    return rows;
}

Complex u_entry(const ERUnitary& u, int block, int lr, int lc) {
    if (block == 0) return Complex(1, 0);
    return (block == 1) ? u.u1(lr, lc) : u.u2(lr, lc);
}

// amplitude of evolved sender-basis column i at the chain state `bits`
Complex column_amplitude(const SenderColumns& cols, const BasisCatalog& catalog, int i,
                         std::uint64_t bits) {
    const int exc = std::popcount(bits);
    switch (i) {
        case 0: return bits == 0 ? Complex(1, 0) : Complex(0, 0);
        case 1: return exc == 1 ? cols.c01[catalog.offset_of(1, bits)] : Complex(0, 0);
        case 2: return exc == 1 ? cols.c10[catalog.offset_of(1, bits)] : Complex(0, 0);
        case 3: return exc == 2 ? cols.c11[catalog.offset_of(2, bits)] : Complex(0, 0);
        default: throw std::invalid_argument("sender basis index must be 0..3");
    }
}

int sender_offset(const BasisCatalog& catalog, int i) {
    const int n = catalog.n_sites();
    switch (i) {
        case 1: return catalog.offset_of(1, 1ull << (n - 2));
        case 2: return catalog.offset_of(1, 1ull << (n - 1));
        case 3: return catalog.offset_of(2, (1ull << (n - 1)) | (1ull << (n - 2)));
        default: throw std::invalid_argument("sender basis index must be 1..3");
    }
}

}  // namespace

double TwoQubitState::hermiticity_defect() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double TwoQubitState::min_eigenvalue() const {
    const Eigen::Matrix4cd sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(sym);
    return solver.eigenvalues().minCoeff();
}

bool TwoQubitState::is_physical(double tol) const {
    return hermiticity_defect() < 1e-12 && std::abs(trace_real() - 1.0) < 1e-10 &&
           min_eigenvalue() >= -tol;
}

TwoQubitState random_density_matrix(std::uint64_t seed) {
    SplitMix64 gen(seed);
    auto gauss = [&gen] {
        const double u1 = 1.0 - gen.next_double();
        const double u2 = gen.next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = Complex(gauss(), gauss());
    TwoQubitState state;
    state.rho = g * g.adjoint();
    state.rho /= state.rho.trace();
    return state;
}

Eigen::Matrix4cd CoherenceDecomposition::sum() const {
    Eigen::Matrix4cd total = Eigen::Matrix4cd::Zero();
    for (const auto& comp : components) total += comp;
    return total;
}

CoherenceDecomposition coherence_decompose(const TwoQubitState& state) {
    CoherenceDecomposition decomp;
    for (auto& comp : decomp.components) comp.setZero();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const int order = std::popcount(static_cast<unsigned>(c)) -
                              std::popcount(static_cast<unsigned>(r));
            decomp.components[static_cast<std::size_t>(order + 2)](r, c) = state.rho(r, c);
        }
    }
    return decomp;
}

UpperEntries upper_entries(const TwoQubitState& state) {
    const auto& rho = state.rho;
    return {rho(0, 1), rho(0, 2), rho(1, 3), rho(2, 3), rho(0, 3), rho(1, 2)};
}

UpperEntries predicted_entries(const TransferCoefficients& coef, const TwoQubitState& sender) {
    const auto& rho = sender.rho;
    UpperEntries out;
    // sender first-order entries: rho_{00;01}, rho_{00;10}, rho_{01;11}, rho_{10;11}
    const Complex s01 = rho(0, 1), s10 = rho(0, 2), s01_11 = rho(1, 3), s10_11 = rho(2, 3);
    out.r00_01 = coef.a[0][0] * s01 + coef.a[0][1] * s10 + coef.b[0][0] * s01_11 + coef.b[0][1] * s10_11;
    out.r00_10 = coef.a[1][0] * s01 + coef.a[1][1] * s10 + coef.b[1][0] * s01_11 + coef.b[1][1] * s10_11;
    out.r01_11 = coef.c[0][0] * s01_11 + coef.c[0][1] * s10_11;
    out.r10_11 = coef.c[1][0] * s01_11 + coef.c[1][1] * s10_11;
    out.r00_11 = coef.d * rho(0, 3);
    out.r01_10 = coef.f[0][0] * rho(1, 1) + coef.f[0][1] * rho(1, 2) + coef.f[1][0] * rho(2, 1) +
                 coef.f[1][1] * rho(2, 2) + coef.f_11_11 * rho(3, 3);
    return out;
}

BlockOperator total_W(const PhiVector& phi, ProductOrdering ordering, double t,
                      const SpectralData& spectral, const BasisCatalog& catalog) {
    const ERUnitary u = compose(phi, ordering);
    const BlockOperator v = propagator(spectral, t);

    BlockOperator w;
    w.b0 = 1.0;
    for (int k = 1; k <= 2; ++k) {
        const Eigen::MatrixXcd& vb = (k == 1) ? v.b1 : v.b2;
        const auto rows = build_embedding_rows(catalog, k);
        Eigen::MatrixXcd wb = Eigen::MatrixXcd::Zero(vb.rows(), vb.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const RowTerm& term : rows[r].terms)
                wb.row(static_cast<Eigen::Index>(r)) +=
                    u_entry(u, rows[r].block, rows[r].lr, term.lc) * vb.row(term.col);
        }
        if (k == 1)
            w.b1 = std::move(wb);
        else
            w.b2 = std::move(wb);
    }
    return w;
}

SenderColumns sender_columns(const BlockOperator& w, const BasisCatalog& catalog) {
    SenderColumns cols;
    cols.c01 = w.b1.col(sender_offset(catalog, 1));
    cols.c10 = w.b1.col(sender_offset(catalog, 2));
    cols.c11 = w.b2.col(sender_offset(catalog, 3));
    return cols;
}

TwoQubitState receiver_state(const TwoQubitState& rho_S, const BlockOperator& w,
                             const BasisCatalog& catalog) {
    return receiver_state(rho_S, sender_columns(w, catalog), catalog);
}

TwoQubitState receiver_state(const TwoQubitState& rho_S, const SenderColumns& cols,
                             const BasisCatalog& catalog) {
    TwoQubitState out;
    std::vector<std::pair<int, Complex>> row_amps, col_amps;
    for (int k = 0; k <= 2; ++k) {
        const auto& sec = catalog.sector(k);
        for (const Configuration& s : sec) {
            const int r = static_cast<int>(s.bits & 3u);
            const std::uint64_t env = s.bits >> 2;
            row_amps.clear();
            if (k == 0) row_amps.emplace_back(0, Complex(1, 0));
            if (k == 1) {
                const int off = catalog.offset_of(1, s.bits);
                row_amps.emplace_back(1, cols.c01[off]);
                row_amps.emplace_back(2, cols.c10[off]);
            }
            if (k == 2) row_amps.emplace_back(3, cols.c11[catalog.offset_of(2, s.bits)]);

            for (int rc = 0; rc < 4; ++rc) {
                const std::uint64_t bits_c = (env << 2) | static_cast<std::uint64_t>(rc);
                const int kc = std::popcount(bits_c);
                if (kc > 2) continue;
                col_amps.clear();
                if (kc == 0) col_amps.emplace_back(0, Complex(1, 0));
                if (kc == 1) {
                    const int off = catalog.offset_of(1, bits_c);
                    col_amps.emplace_back(1, cols.c01[off]);
                    col_amps.emplace_back(2, cols.c10[off]);
                }
                if (kc == 2) col_amps.emplace_back(3, cols.c11[catalog.offset_of(2, bits_c)]);

                for (const auto& [i, ai] : row_amps)
                    for (const auto& [j, aj] : col_amps)
                        out.rho(r, rc) += rho_S.rho(i, j) * ai * std::conj(aj);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd transfer_tensor(const BlockOperator& w, const BasisCatalog& catalog) {
    return transfer_tensor(sender_columns(w, catalog), catalog);
}

Eigen::MatrixXcd transfer_tensor(const SenderColumns& cols, const BasisCatalog& catalog) {
    const int n = catalog.n_sites();
    const std::array<std::vector<Configuration>, 3> env_sectors = {
        enumerate_sector(n - 2, 0), enumerate_sector(n - 2, 1), enumerate_sector(n - 2, 2)};
    Eigen::MatrixXcd tensor = Eigen::MatrixXcd::Zero(16, 16);
    const auto exc = [](int idx) { return std::popcount(static_cast<unsigned>(idx)); };
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int rn = 0; rn < 4; ++rn) {
                for (int rm = 0; rm < 4; ++rm) {
                    const int kj = exc(i) - exc(rn);
                    if (kj < 0 || kj > 2 || kj != exc(j) - exc(rm)) continue;
                    Complex sum(0, 0);
                    for (const Configuration& env : env_sectors[static_cast<std::size_t>(kj)]) {
                        const std::uint64_t row_bits = (env.bits << 2) | static_cast<std::uint64_t>(rn);
                        const std::uint64_t col_bits = (env.bits << 2) | static_cast<std::uint64_t>(rm);
                        sum += column_amplitude(cols, catalog, i, row_bits) *
                               std::conj(column_amplitude(cols, catalog, j, col_bits));
                    }
                    tensor(4 * rn + rm, 4 * i + j) = sum;
                }
            }
        }
    }
    return tensor;
}

TwoQubitState apply_tensor(const Eigen::MatrixXcd& tensor, const TwoQubitState& rho_S) {
    Eigen::VectorXcd vec(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) vec[4 * i + j] = rho_S.rho(i, j);
    const Eigen::VectorXcd out = tensor * vec;
    TwoQubitState state;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) state.rho(r, c) = out[4 * r + c];
    return state;
}

double kraus_defect(const SenderColumns& cols) {
    double defect = 0.0;
    defect = std::max(defect, std::abs(cols.c01.squaredNorm() - 1.0));
    defect = std::max(defect, std::abs(cols.c10.squaredNorm() - 1.0));
    defect = std::max(defect, std::abs(cols.c11.squaredNorm() - 1.0));
    defect = std::max(defect, std::abs(cols.c01.dot(cols.c10)));
    return defect;
}

TransferCoefficients coefficients(const BlockOperator& w, const BasisCatalog& catalog) {
    const int n = catalog.n_sites();
    TransferCoefficients coef;

    const std::array<int, 2> sender1 = {sender_offset(catalog, 1), sender_offset(catalog, 2)};
    const int sender2 = sender_offset(catalog, 3);
    const std::array<int, 2> recv1 = {catalog.offset_of(1, 1), catalog.offset_of(1, 2)};
    const int recv2 = catalog.offset_of(2, 3);

    for (int nn = 0; nn < 2; ++nn)
        for (int i = 0; i < 2; ++i) coef.a[nn][i] = std::conj(w.b1(recv1[nn], sender1[i]));
    coef.d = std::conj(w.b2(recv2, sender2));

    // environment sums over single excitations of the first N-2 sites
    for (int site = 1; site <= n - 2; ++site) {
        const std::uint64_t env = 1ull << (n - site);
        const int row00 = catalog.offset_of(1, env);
        std::array<int, 2> row_n;
        row_n[0] = catalog.offset_of(2, env | 1u);
        row_n[1] = catalog.offset_of(2, env | 2u);
        for (int nn = 0; nn < 2; ++nn)
            for (int i = 0; i < 2; ++i)
                coef.b[nn][i] += w.b1(row00, sender1[i]) * std::conj(w.b2(row_n[nn], sender2));
        coef.f_11_11 += w.b2(row_n[0], sender2) * std::conj(w.b2(row_n[1], sender2));
    }

    for (int nn = 0; nn < 2; ++nn)
        for (int i = 0; i < 2; ++i) coef.c[nn][i] = std::conj(coef.a[nn][i]) * coef.d;
    for (int nn = 0; nn < 2; ++nn)
        for (int mm = 0; mm < 2; ++mm) coef.f[nn][mm] = std::conj(coef.a[0][nn]) * coef.a[1][mm];
    return coef;
}

CoefficientEngine::CoefficientEngine(const SpectralData& spectral, const BasisCatalog& catalog,
                                     double t)
    : n_(catalog.n_sites()), t_(t) {
    if (n_ < 6) throw std::invalid_argument("CoefficientEngine: chain must have at least 6 sites");

    v01_ = propagator_column(spectral, t, 1, sender_offset(catalog, 1));
    v10_ = propagator_column(spectral, t, 1, sender_offset(catalog, 2));
    v11_ = propagator_column(spectral, t, 2, sender_offset(catalog, 3));

    for (int l = 0; l < 4; ++l) {
        a1_[0][static_cast<std::size_t>(l)] = v01_[catalog.offset_of(1, kOneExcTails[static_cast<std::size_t>(l)])];
        a1_[1][static_cast<std::size_t>(l)] = v10_[catalog.offset_of(1, kOneExcTails[static_cast<std::size_t>(l)])];
    }
    for (int m = 0; m < 6; ++m)
        a2_[static_cast<std::size_t>(m)] = v11_[catalog.offset_of(2, kTwoExcTails[static_cast<std::size_t>(m)])];

    b1_[0].resize(static_cast<std::size_t>(n_ - 4));
    b1_[1].resize(static_cast<std::size_t>(n_ - 4));
    b2_.resize(static_cast<std::size_t>(n_ - 4));
    for (int site = 1; site <= n_ - 4; ++site) {
        const std::uint64_t head = 1ull << (n_ - site);
        b1_[0][static_cast<std::size_t>(site - 1)] = v01_[catalog.offset_of(1, head)];
        b1_[1][static_cast<std::size_t>(site - 1)] = v10_[catalog.offset_of(1, head)];
        for (int l = 0; l < 4; ++l)
            b2_[static_cast<std::size_t>(site - 1)][static_cast<std::size_t>(l)] =
                v11_[catalog.offset_of(2, head | kOneExcTails[static_cast<std::size_t>(l)])];
    }

    for (int k = 1; k <= 2; ++k) {
        auto& dst = (k == 1) ? rows1_ : rows2_;
        for (const auto& row : build_embedding_rows(catalog, k)) {
            Row r;
            r.block = row.block;
            r.lr = row.lr;
            for (const auto& term : row.terms) r.terms.push_back({term.col, term.lc});
            dst.push_back(std::move(r));
        }
    }
}

TransferCoefficients CoefficientEngine::coefficients(const PhiVector& phi,
                                                     ProductOrdering ordering) const {
    return coefficients(compose(phi, ordering));
}

TransferCoefficients CoefficientEngine::coefficients(const ERUnitary& u) const {
    TransferCoefficients coef;

    // receiver tails: 01 -> |0001> (local 0), 10 -> |0010> (local 1)
    std::array<std::array<Complex, 2>, 2> w0n{};  // [receiver][sender]
    for (int nn = 0; nn < 2; ++nn)
        for (int i = 0; i < 2; ++i) {
            Complex sum(0, 0);
            for (int l = 0; l < 4; ++l) sum += u.u1(nn, l) * a1_[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            w0n[static_cast<std::size_t>(nn)][static_cast<std::size_t>(i)] = sum;
        }
    for (int nn = 0; nn < 2; ++nn)
        for (int i = 0; i < 2; ++i)
            coef.a[nn][i] = std::conj(w0n[static_cast<std::size_t>(nn)][static_cast<std::size_t>(i)]);

    Complex w011(0, 0);
    for (int m = 0; m < 6; ++m) w011 += u.u2(0, m) * a2_[static_cast<std::size_t>(m)];
    coef.d = std::conj(w011);

    // environment sums: sites 1..N-4, then the two ancilla sites.
    // site p <= N-4: W[(e_p,00); i] is phi-independent, W[(e_p,n); 11]
    // mixes the one-excitation tails.
    std::array<std::array<Complex, 2>, 2> b_acc{};
    Complex f11_acc(0, 0);
    for (std::size_t q = 0; q < b2_.size(); ++q) {
        std::array<Complex, 2> wjn;
        for (int nn = 0; nn < 2; ++nn) {
            Complex sum(0, 0);
            for (int l = 0; l < 4; ++l) sum += u.u1(nn, l) * b2_[q][static_cast<std::size_t>(l)];
            wjn[static_cast<std::size_t>(nn)] = sum;
        }
        for (int nn = 0; nn < 2; ++nn)
            for (int i = 0; i < 2; ++i)
                b_acc[nn][static_cast<std::size_t>(i)] +=
                    b1_[static_cast<std::size_t>(i)][q] * std::conj(wjn[static_cast<std::size_t>(nn)]);
        f11_acc += wjn[0] * std::conj(wjn[1]);
    }
    // ancilla site N-3: tail 1000 (local 3); with receiver n: 1001 -> m3, 1010 -> m4.
    // ancilla site N-2: tail 0100 (local 2); with receiver n: 0101 -> m1, 0110 -> m2.
    const std::array<int, 2> anc_l = {3, 2};
    const std::array<std::array<int, 2>, 2> anc_m = {{{3, 4}, {1, 2}}};
    for (int anc = 0; anc < 2; ++anc) {
        std::array<Complex, 2> wj0;
        for (int i = 0; i < 2; ++i) {
            Complex sum(0, 0);
            for (int l = 0; l < 4; ++l)
                sum += u.u1(anc_l[static_cast<std::size_t>(anc)], l) * a1_[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            wj0[static_cast<std::size_t>(i)] = sum;
        }
        std::array<Complex, 2> wjn;
        for (int nn = 0; nn < 2; ++nn) {
            Complex sum(0, 0);
            for (int m = 0; m < 6; ++m)
                sum += u.u2(anc_m[static_cast<std::size_t>(anc)][static_cast<std::size_t>(nn)], m) * a2_[static_cast<std::size_t>(m)];
            wjn[static_cast<std::size_t>(nn)] = sum;
        }
        for (int nn = 0; nn < 2; ++nn)
            for (int i = 0; i < 2; ++i)
                b_acc[nn][static_cast<std::size_t>(i)] +=
                    wj0[static_cast<std::size_t>(i)] * std::conj(wjn[static_cast<std::size_t>(nn)]);
        f11_acc += wjn[0] * std::conj(wjn[1]);
    }
    for (int nn = 0; nn < 2; ++nn)
        for (int i = 0; i < 2; ++i) coef.b[nn][i] = b_acc[nn][static_cast<std::size_t>(i)];
    coef.f_11_11 = f11_acc;

    for (int nn = 0; nn < 2; ++nn)
        for (int i = 0; i < 2; ++i) coef.c[nn][i] = std::conj(coef.a[nn][i]) * coef.d;
    for (int nn = 0; nn < 2; ++nn)
        for (int mm = 0; mm < 2; ++mm) coef.f[nn][mm] = std::conj(coef.a[0][nn]) * coef.a[1][mm];
    return coef;
}

SenderColumns CoefficientEngine::evolved_columns(const ERUnitary& u) const {
    SenderColumns cols;
    cols.c01.resize(v01_.size());
    cols.c10.resize(v10_.size());
    cols.c11.resize(v11_.size());
    auto factor_of = [&u](const Row& row, const RowTerm& term) -> Complex {
        if (row.block == 0) return Complex(1, 0);
        return (row.block == 1) ? u.u1(row.lr, term.lc) : u.u2(row.lr, term.lc);
    };
    for (std::size_t r = 0; r < rows1_.size(); ++r) {
        Complex s01(0, 0), s10(0, 0);
        for (const RowTerm& term : rows1_[r].terms) {
            const Complex factor = factor_of(rows1_[r], term);
            s01 += factor * v01_[term.col];
            s10 += factor * v10_[term.col];
        }
        cols.c01[static_cast<Eigen::Index>(r)] = s01;
        cols.c10[static_cast<Eigen::Index>(r)] = s10;
    }
    for (std::size_t r = 0; r < rows2_.size(); ++r) {
        Complex s11(0, 0);
        for (const RowTerm& term : rows2_[r].terms)
            s11 += factor_of(rows2_[r], term) * v11_[term.col];
        cols.c11[static_cast<Eigen::Index>(r)] = s11;
    }
    return cols;
}

}  // namespace spinline
