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

#include "spinline/operations.hpp"

#include <cmath>
#include <stdexcept>

namespace spinline {

namespace {

double norm_of(const std::vector<Complex>& v) {
    double s = 0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

OperationSpec OperationSpec::restore() {
    OperationSpec spec;
    spec.kind = Kind::restore;
    return spec;
}

OperationSpec OperationSpec::zero_triplet(int variant) {
    OperationSpec spec;
    switch (variant) {
        case 1: spec.kind = Kind::zero1; break;
        case 2: spec.kind = Kind::zero2; break;
        case 3: spec.kind = Kind::zero3; break;
        default: throw std::invalid_argument("zero_triplet: variant must be 1, 2 or 3");
    }
    return spec;
}

OperationSpec OperationSpec::rearrange() {
    OperationSpec spec;
    spec.kind = Kind::rearrange;
    return spec;
}

OperationSpec OperationSpec::lin_comb(const LinCombTargets& targets) {
    OperationSpec spec;
    spec.kind = Kind::lin_comb;
    spec.targets = targets;
    return spec;
}

OperationSpec OperationSpec::lin_sys(const Eigen::Matrix2d& a) {
    OperationSpec spec;
    spec.kind = Kind::lin_sys;
    spec.coeff_matrix = a;
    spec.validate();
    return spec;
}

std::string OperationSpec::name() const {
    switch (kind) {
        case Kind::restore: return "restore";
        case Kind::zero1: return "zero1";
        case Kind::zero2: return "zero2";
        case Kind::zero3: return "zero3";
        case Kind::rearrange: return "rearrange";
        case Kind::lin_comb: return "lincomb";
        case Kind::lin_sys: return "linsys";
    }
    throw std::logic_error("unreachable");
}

void OperationSpec::validate() const {
    if (kind == Kind::lin_sys && std::abs(coeff_matrix.determinant()) < 1e-12)
        throw std::invalid_argument("lin_sys: coefficient matrix is singular");
    if (kind == Kind::lin_comb) {
        double s = 0;
        for (const Complex& z : targets.alpha) s += std::norm(z);
        for (const Complex& z : targets.beta) s += std::norm(z);
        s += std::norm(targets.gamma);
        if (!(s > 0) || !std::isfinite(s))
            throw std::invalid_argument("lin_comb: target ratios must be finite and not all zero");
    }
}

OperationSpec::Kind operation_kind_from_string(const std::string& name) {
    if (name == "restore") return OperationSpec::Kind::restore;
    if (name == "zero1") return OperationSpec::Kind::zero1;
    if (name == "zero2") return OperationSpec::Kind::zero2;
    if (name == "zero3") return OperationSpec::Kind::zero3;
    if (name == "rearrange") return OperationSpec::Kind::rearrange;
    if (name == "lincomb") return OperationSpec::Kind::lin_comb;
    if (name == "linsys") return OperationSpec::Kind::lin_sys;
    throw std::invalid_argument("unknown operation '" + name + "'");
}

ResidualReport residual(const OperationSpec& spec, const TransferCoefficients& coef) {
    ResidualReport report;
    auto& r = report.residuals;

    const auto push_restore_core = [&] {
        // off-diagonal a plus all b and f_11_11; the c off-diagonals and
        // f diagonals vanish with them through the product identities
        r.push_back(coef.a[0][1]);
        r.push_back(coef.a[1][0]);
        r.push_back(coef.b[0][0]);
        r.push_back(coef.b[0][1]);
        r.push_back(coef.b[1][0]);
        r.push_back(coef.b[1][1]);
        r.push_back(coef.f_11_11);
    };

    switch (spec.kind) {
        case OperationSpec::Kind::restore:
            push_restore_core();
            report.objective = std::abs(coef.a[0][0]) + std::abs(coef.a[1][1]) +
                               std::abs(coef.c[0][0]) + std::abs(coef.c[1][1]) +
                               std::abs(coef.f[0][1]) + std::abs(coef.d);
            break;
        case OperationSpec::Kind::zero1:
            push_restore_core();
            r.push_back(coef.a[0][0]);
            report.objective = std::abs(coef.a[1][1]) + std::abs(coef.c[1][1]) + std::abs(coef.d);
            break;
        case OperationSpec::Kind::zero2:
            push_restore_core();
            r.push_back(coef.a[1][1]);
            report.objective = std::abs(coef.a[0][0]) + std::abs(coef.c[0][0]) + std::abs(coef.d);
            break;
        case OperationSpec::Kind::zero3:
            push_restore_core();
            r.push_back(coef.d);
            report.objective = std::abs(coef.a[0][0]) + std::abs(coef.a[1][1]) + std::abs(coef.f[0][1]);
            break;
        case OperationSpec::Kind::rearrange:
            r.push_back(coef.a[0][0]);
            r.push_back(coef.a[1][1]);
            r.push_back(coef.b[0][0]);
            r.push_back(coef.b[0][1]);
            r.push_back(coef.b[1][0]);
            r.push_back(coef.b[1][1]);
            r.push_back(coef.f_11_11);
            report.objective = std::abs(coef.a[0][1]) + std::abs(coef.a[1][0]) +
                               std::abs(coef.c[0][1]) + std::abs(coef.c[1][0]) +
                               std::abs(coef.f[1][0]) + std::abs(coef.d);
            break;
        case OperationSpec::Kind::lin_comb: {
            spec.validate();
            const std::array<Complex, 9> values = {coef.a[0][0], coef.a[0][1], coef.b[0][0],
                                                   coef.b[0][1], coef.a[1][0], coef.a[1][1],
                                                   coef.b[1][0], coef.b[1][1], coef.d};
            const std::array<Complex, 9> targets = {
                spec.targets.alpha[0], spec.targets.alpha[1], spec.targets.alpha[2],
                spec.targets.alpha[3], spec.targets.beta[0],  spec.targets.beta[1],
                spec.targets.beta[2],  spec.targets.beta[3],  spec.targets.gamma};
            // least-squares elimination of the free scale
            Complex num(0, 0);
            double den = 0;
            for (int k = 0; k < 9; ++k) {
                num += std::conj(targets[static_cast<std::size_t>(k)]) * values[static_cast<std::size_t>(k)];
                den += std::norm(targets[static_cast<std::size_t>(k)]);
            }
            const Complex alpha = num / den;
            for (int k = 0; k < 9; ++k)
                r.push_back(values[static_cast<std::size_t>(k)] - targets[static_cast<std::size_t>(k)] * alpha);
            report.objective = std::abs(alpha);
            report.aux = alpha;
            break;
        }
        case OperationSpec::Kind::lin_sys: {
            spec.validate();
            Eigen::Matrix2cd a_block;
            a_block << coef.a[0][0], coef.a[0][1], coef.a[1][0], coef.a[1][1];
            const Eigen::Matrix2cd m = a_block * spec.coeff_matrix.cast<Complex>();
            // least-squares c over |m11-c|^2 + |m22-c|^2 + Im(c)^2
            const double cr = 0.5 * (m(0, 0).real() + m(1, 1).real());
            const double ci = (m(0, 0).imag() + m(1, 1).imag()) / 3.0;
            const Complex c(cr, ci);
            r.push_back(m(0, 1));
            r.push_back(m(1, 0));
            r.push_back(m(0, 0) - c);
            r.push_back(m(1, 1) - c);
            r.push_back(Complex(ci, 0));
            report.objective = cr;
            report.aux = c;
            break;
        }
    }
    report.norm = norm_of(r);
    return report;
}

bool VerificationReport::passed() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

void add_check(VerificationReport& report, const std::string& name, double error, double tol) {
    report.checks.push_back({name, error, tol, error < tol});
}

// expected receiver upper entries for the structural operations, given
// the surviving coefficients only
UpperEntries pattern_expectation(const OperationSpec& spec, const TransferCoefficients& coef,
                                 const Eigen::Matrix4cd& s) {
    UpperEntries e{};
    switch (spec.kind) {
        case OperationSpec::Kind::restore:
            e.r00_01 = coef.a[0][0] * s(0, 1);
            e.r00_10 = coef.a[1][1] * s(0, 2);
            e.r01_11 = coef.c[0][0] * s(1, 3);
            e.r10_11 = coef.c[1][1] * s(2, 3);
            e.r00_11 = coef.d * s(0, 3);
            e.r01_10 = coef.f[0][1] * s(1, 2);
            break;
        case OperationSpec::Kind::zero1:
            e.r00_01 = 0;
            e.r00_10 = coef.a[1][1] * s(0, 2);
            e.r01_11 = 0;
            e.r10_11 = coef.c[1][1] * s(2, 3);
            e.r00_11 = coef.d * s(0, 3);
            e.r01_10 = 0;
            break;
        case OperationSpec::Kind::zero2:
            e.r00_01 = coef.a[0][0] * s(0, 1);
            e.r00_10 = 0;
            e.r01_11 = coef.c[0][0] * s(1, 3);
            e.r10_11 = 0;
            e.r00_11 = coef.d * s(0, 3);
            e.r01_10 = 0;
            break;
        case OperationSpec::Kind::zero3:
            e.r00_01 = coef.a[0][0] * s(0, 1);
            e.r00_10 = coef.a[1][1] * s(0, 2);
            e.r01_11 = 0;
            e.r10_11 = 0;
            e.r00_11 = 0;
            e.r01_10 = coef.f[0][1] * s(1, 2);
            break;
        case OperationSpec::Kind::rearrange:
            e.r00_01 = coef.a[0][1] * s(0, 2);
            e.r00_10 = coef.a[1][0] * s(0, 1);
            e.r01_11 = coef.c[0][1] * s(2, 3);
            e.r10_11 = coef.c[1][0] * s(1, 3);
            e.r00_11 = coef.d * s(0, 3);
            e.r01_10 = coef.f[1][0] * s(2, 1);
            break;
        default:
            throw std::logic_error("pattern_expectation: structural operations only");
    }
    return e;
}

void check_pattern(VerificationReport& report, const std::string& probe_name,
                   const OperationSpec& spec, const TransferCoefficients& coef,
                   const TwoQubitState& sender, const TwoQubitState& receiver, double tol) {
    const UpperEntries expected = pattern_expectation(spec, coef, sender.rho);
    const UpperEntries actual = upper_entries(receiver);
    add_check(report, probe_name + ".r00_01", std::abs(actual.r00_01 - expected.r00_01), tol);
    add_check(report, probe_name + ".r00_10", std::abs(actual.r00_10 - expected.r00_10), tol);
    add_check(report, probe_name + ".r01_11", std::abs(actual.r01_11 - expected.r01_11), tol);
    add_check(report, probe_name + ".r10_11", std::abs(actual.r10_11 - expected.r10_11), tol);
    add_check(report, probe_name + ".r00_11", std::abs(actual.r00_11 - expected.r00_11), tol);
    add_check(report, probe_name + ".r01_10", std::abs(actual.r01_10 - expected.r01_10), tol);
}

}  // namespace

VerificationReport verify_application(const OperationSpec& spec, const PhiVector& phi,
                                      ProductOrdering ordering, const CoefficientEngine& engine,
                                      const BasisCatalog& catalog, double tol,
                                      const std::vector<TwoQubitState>& probes) {
    VerificationReport report;
    const ERUnitary u = compose(phi, ordering);
    const SenderColumns cols = engine.evolved_columns(u);
    const TransferCoefficients coef = engine.coefficients(u);

    std::vector<TwoQubitState> physical = probes;
    for (std::uint64_t s = 0; s < 3; ++s) physical.push_back(random_density_matrix(0xbeefcafe + s));

    // trace bookkeeping on every physical probe
    for (std::size_t p = 0; p < physical.size(); ++p) {
        const TwoQubitState out = receiver_state(physical[p], cols, catalog);
        const std::string name = "probe" + std::to_string(p);
        add_check(report, name + ".trace", std::abs(out.trace_real() - physical[p].trace_real()), 1e-12);
        add_check(report, name + ".hermitian", out.hermiticity_defect(), 1e-12);
    }

    switch (spec.kind) {
        case OperationSpec::Kind::restore:
        case OperationSpec::Kind::zero1:
        case OperationSpec::Kind::zero2:
        case OperationSpec::Kind::zero3:
        case OperationSpec::Kind::rearrange: {
            for (std::size_t p = 0; p < physical.size(); ++p) {
                const TwoQubitState out = receiver_state(physical[p], cols, catalog);
                check_pattern(report, "probe" + std::to_string(p), spec, coef, physical[p], out, tol);
            }
            break;
        }
        case OperationSpec::Kind::lin_comb: {
            const ResidualReport res = residual(spec, coef);
            const Complex alpha = res.aux.value();
            const double x = 0.1;
            TwoQubitState mono;
            mono.rho(0, 1) = x;
            mono.rho(0, 2) = x * x;
            mono.rho(1, 3) = x * x * x;
            mono.rho(2, 3) = x * x * x * x;
            mono.rho(0, 3) = x * x * x * x * x;
            const TwoQubitState out = receiver_state(mono, cols, catalog);
            Complex poly_a(0, 0), poly_b(0, 0);
            double xk = x;
            for (int k = 0; k < 4; ++k) {
                poly_a += spec.targets.alpha[static_cast<std::size_t>(k)] * xk;
                poly_b += spec.targets.beta[static_cast<std::size_t>(k)] * xk;
                xk *= x;
            }
            add_check(report, "monomial.r00_01", std::abs(out.rho(0, 1) - alpha * poly_a), tol);
            add_check(report, "monomial.r00_10", std::abs(out.rho(0, 2) - alpha * poly_b), tol);
            add_check(report, "monomial.r00_11",
                      std::abs(out.rho(0, 3) - alpha * spec.targets.gamma * xk), tol);

            TwoQubitState zero_probe;  // x = 0 sends the targets to zero
            const TwoQubitState out0 = receiver_state(zero_probe, cols, catalog);
            add_check(report, "monomial_x0.r00_01", std::abs(out0.rho(0, 1)), tol);
            add_check(report, "monomial_x0.r00_10", std::abs(out0.rho(0, 2)), tol);
            break;
        }
        case OperationSpec::Kind::lin_sys: {
            const ResidualReport res = residual(spec, coef);
            const Complex c = res.aux.value();
            const Eigen::Vector2d x_true(0.05, 0.05);
            const Eigen::Vector2d b = spec.coeff_matrix * x_true;
            TwoQubitState sender;
            sender.rho = Eigen::Vector4d(0.7, 0.1, 0.1, 0.1).asDiagonal();
            sender.rho(0, 1) = b[0];
            sender.rho(1, 0) = b[0];
            sender.rho(0, 2) = b[1];
            sender.rho(2, 0) = b[1];
            const TwoQubitState out = receiver_state(sender, cols, catalog);
            add_check(report, "linsys.r00_01", std::abs(out.rho(0, 1) - c * x_true[0]), tol);
            add_check(report, "linsys.r00_10", std::abs(out.rho(0, 2) - c * x_true[1]), tol);
            // linearity in b
            TwoQubitState half = sender;
            half.rho(0, 1) *= 0.5;
            half.rho(1, 0) *= 0.5;
            half.rho(0, 2) *= 0.5;
            half.rho(2, 0) *= 0.5;
            const TwoQubitState out_half = receiver_state(half, cols, catalog);
            add_check(report, "linsys.halved_b", std::abs(out_half.rho(0, 1) - 0.5 * c * x_true[0]),
                      tol);
            break;
        }
    }
    return report;
}

}  // namespace spinline
