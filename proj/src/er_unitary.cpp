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

#include "spinline/er_unitary.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spinline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

// apply exp(i*phi*gamma^(kind)) from the left to rows (a, b) of a block
template <typename Block>
void left_rotate(Block& u, int kind, int a, int b, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    if (kind == 1) {
        const Complex is(0.0, s);
        for (int col = 0; col < u.cols(); ++col) {
            const Complex ra = u(a, col);
            const Complex rb = u(b, col);
            u(a, col) = c * ra + is * rb;
            u(b, col) = is * ra + c * rb;
        }
    } else {
        for (int col = 0; col < u.cols(); ++col) {
            const Complex ra = u(a, col);
            const Complex rb = u(b, col);
            u(a, col) = c * ra + s * rb;
            u(b, col) = -s * ra + c * rb;
        }
    }
}

int pair_slot(int n, int m) {
    const auto& pairs = rotation_pairs();
    for (int p = 0; p < kNumRotationPairs; ++p)
        if (pairs[static_cast<std::size_t>(p)] == std::make_pair(n, m)) return p;
    throw std::invalid_argument("rotation pair (" + std::to_string(n) + "," + std::to_string(m) +
                                ") is not addressed by the parameterization");
}

}  // namespace

const std::array<std::pair<int, int>, kNumRotationPairs>& rotation_pairs() {
    static const std::array<std::pair<int, int>, kNumRotationPairs> pairs = {{
        {2, 3},  {2, 5},  {2, 8},  {3, 5},  {3, 8},  {4, 6},  {4, 7},
        {4, 9},  {4, 10}, {4, 11}, {5, 8},  {6, 7},  {6, 9},  {6, 10},
        {6, 11}, {7, 9},  {7, 10}, {7, 11}, {9, 10}, {9, 11}, {10, 11},
    }};
    return pairs;
}

PhiVector::PhiVector() { angles_.fill(0.0); }

int PhiVector::slot(int kind, int n, int m) {
    if (kind != 1 && kind != 2) throw std::invalid_argument("PhiVector: kind must be 1 or 2");
    return (kind - 1) * kNumRotationPairs + pair_slot(n, m);
}

double PhiVector::at(int kind, int n, int m) const {
    return angles_[static_cast<std::size_t>(slot(kind, n, m))];
}

void PhiVector::set(int kind, int n, int m, double value) {
    angles_[static_cast<std::size_t>(slot(kind, n, m))] = wrap_angle(value);
}

void PhiVector::set_flat(int idx, double value) {
    if (idx < 0 || idx >= kNumPhiAngles) throw std::invalid_argument("PhiVector: flat index out of range");
    angles_[static_cast<std::size_t>(idx)] = wrap_angle(value);
}

Eigen::VectorXd PhiVector::to_vector() const {
    Eigen::VectorXd v(kNumPhiAngles);
    for (int i = 0; i < kNumPhiAngles; ++i) v[i] = angles_[static_cast<std::size_t>(i)];
    return v;
}

PhiVector PhiVector::from_vector(const Eigen::VectorXd& v) {
    if (v.size() != kNumPhiAngles) throw std::invalid_argument("PhiVector: expected 42 angles");
    PhiVector phi;
    for (int i = 0; i < kNumPhiAngles; ++i) phi.set_flat(i, v[i]);
    return phi;
}

ProductOrdering ordering_from_string(const std::string& name) {
    if (name == "canonical") return ProductOrdering::canonical;
    if (name == "alternate") return ProductOrdering::alternate;
    if (name == "canonical-swapped") return ProductOrdering::canonical_swapped;
    if (name == "alternate-swapped") return ProductOrdering::alternate_swapped;
    throw std::invalid_argument("unknown product ordering '" + name + "'");
}

std::string to_string(ProductOrdering ordering) {
    switch (ordering) {
        case ProductOrdering::canonical: return "canonical";
        case ProductOrdering::alternate: return "alternate";
        case ProductOrdering::canonical_swapped: return "canonical-swapped";
        case ProductOrdering::alternate_swapped: return "alternate-swapped";
    }
    throw std::logic_error("unreachable");
}

std::pair<int, int> er_block_of(int position) {
    switch (position) {
        case 1: return {0, 0};
        case 2: return {1, 0};
        case 3: return {1, 1};
        case 5: return {1, 2};
        case 8: return {1, 3};
        case 4: return {2, 0};
        case 6: return {2, 1};
        case 7: return {2, 2};
        case 9: return {2, 3};
        case 10: return {2, 4};
        case 11: return {2, 5};
        default: throw std::invalid_argument("er_block_of: position must be 1..11");
    }
}

Eigen::MatrixXcd ERUnitary::to_matrix() const {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(11, 11);
    u(0, 0) = 1.0;
    static const std::array<int, 4> one_exc = {2, 3, 5, 8};
    static const std::array<int, 6> two_exc = {4, 6, 7, 9, 10, 11};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            u(one_exc[static_cast<std::size_t>(a)] - 1, one_exc[static_cast<std::size_t>(b)] - 1) = u1(a, b);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            u(two_exc[static_cast<std::size_t>(a)] - 1, two_exc[static_cast<std::size_t>(b)] - 1) = u2(a, b);
    return u;
}

double ERUnitary::unitarity_defect() const {
    const Eigen::Matrix4cd g1 = u1.adjoint() * u1 - Eigen::Matrix4cd::Identity();
    const Eigen::Matrix<Complex, 6, 6> g2 =
        u2.adjoint() * u2 - Eigen::Matrix<Complex, 6, 6>::Identity();
    return std::max(g1.cwiseAbs().maxCoeff(), g2.cwiseAbs().maxCoeff());
}

Eigen::MatrixXcd elementary_rotation(int kind, int n, int m, double phi) {
    pair_slot(n, m);  // validates the pair
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(11, 11);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const int a = n - 1;
    const int b = m - 1;
    if (kind == 1) {
        u(a, a) = c;
        u(b, b) = c;
        u(a, b) = Complex(0, s);
        u(b, a) = Complex(0, s);
    } else if (kind == 2) {
        u(a, a) = c;
        u(b, b) = c;
        u(a, b) = s;
        u(b, a) = -s;
    } else {
        throw std::invalid_argument("elementary_rotation: kind must be 1 or 2");
    }
    return u;
}

ERUnitary compose_flat(const double* angles, ProductOrdering ordering) {
    ERUnitary u;
    u.u1 = Eigen::Matrix4cd::Identity();
    u.u2 = Eigen::Matrix<Complex, 6, 6>::Identity();

    const bool reversed =
        ordering == ProductOrdering::alternate || ordering == ProductOrdering::alternate_swapped;
    const bool swapped = ordering == ProductOrdering::canonical_swapped ||
                         ordering == ProductOrdering::alternate_swapped;

    const auto& pairs = rotation_pairs();
    for (int step = 0; step < kNumRotationPairs; ++step) {
        const int p = reversed ? kNumRotationPairs - 1 - step : step;
        const auto [n, m] = pairs[static_cast<std::size_t>(p)];
        const auto [block, a] = er_block_of(n);
        const int b = er_block_of(m).second;
        const double phi1 = angles[p];
        const double phi2 = angles[kNumRotationPairs + p];
        const int first_kind = swapped ? 2 : 1;
        const int second_kind = swapped ? 1 : 2;
        const double first_angle = swapped ? phi2 : phi1;
        const double second_angle = swapped ? phi1 : phi2;
        if (block == 1) {
            left_rotate(u.u1, first_kind, a, b, first_angle);
            left_rotate(u.u1, second_kind, a, b, second_angle);
        } else {
            left_rotate(u.u2, first_kind, a, b, first_angle);
            left_rotate(u.u2, second_kind, a, b, second_angle);
        }
    }
    return u;
}

ERUnitary compose(const PhiVector& phi, ProductOrdering ordering) {
    std::array<double, kNumPhiAngles> flat;
    for (int i = 0; i < kNumPhiAngles; ++i) flat[static_cast<std::size_t>(i)] = phi.flat(i);
    return compose_flat(flat.data(), ordering);
}

BlockOperator embed(const ERUnitary& u, const BasisCatalog& catalog) {
    if (catalog.n_sites() < 6)
        throw std::invalid_argument("embed: the chain must have at least 6 sites");
    const Eigen::MatrixXcd full = u.to_matrix();

    BlockOperator w;
    w.b0 = 1.0;
    for (int k = 1; k <= 2; ++k) {
        const auto& sec = catalog.sector(k);
        const int dim = static_cast<int>(sec.size());
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const auto [head, tail] = split_tail(sec[static_cast<std::size_t>(r)], 4);
            const int tau_r = BasisCatalog::er_index_of(tail.bits);
            // columns sharing this head: substitute every er state with
            // the complementary excitation count
            const int head_exc = head.excitations();
            for (int tau_c = 0; tau_c < 11; ++tau_c) {
                const Configuration& er_tail = BasisCatalog::er_order()[static_cast<std::size_t>(tau_c)];
                if (head_exc + er_tail.excitations() != k) continue;
                const std::uint64_t col_bits = (head.bits << 4) | er_tail.bits;
                const int c = catalog.offset_of(k, col_bits);
                block(r, c) = full(tau_r, tau_c);
            }
        }
        if (k == 1)
            w.b1 = std::move(block);
        else
            w.b2 = std::move(block);
    }
    return w;
}

PhiVector read_phi_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open phi table '" + path.string() + "'");

    PhiVector phi;
    std::array<bool, kNumPhiAngles> seen{};
    int rows = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.rfind("kind,", 0) == 0) continue;
        std::istringstream ss(line);
        int kind = 0, n = 0, m = 0;
        double value = 0;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(ss >> kind >> c1 >> n >> c2 >> m >> c3 >> value) || c1 != ',' || c2 != ',' || c3 != ',')
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 'kind,n,m,phi_radians'");
        int flat = 0;
        try {
            phi.set(kind, n, m, value);
            flat = (kind - 1) * kNumRotationPairs + pair_slot(n, m);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (seen[static_cast<std::size_t>(flat)])
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": duplicate key");
        seen[static_cast<std::size_t>(flat)] = true;
        ++rows;
    }
    if (rows != kNumPhiAngles)
        throw std::runtime_error(path.string() + ": expected exactly 42 angle rows, found " +
                                 std::to_string(rows));
    return phi;
}

void write_phi_table(const std::filesystem::path& path, const PhiVector& phi) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write phi table '" + path.string() + "'");
    out.precision(17);
    for (int kind = 1; kind <= 2; ++kind)
        for (const auto& [n, m] : rotation_pairs())
            out << kind << ',' << n << ',' << m << ',' << phi.at(kind, n, m) << '\n';
}

}  // namespace spinline
