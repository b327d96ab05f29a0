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

#include <optional>
#include <string>
#include <vector>

#include "spinline/transfer.hpp"

namespace spinline {

// Target ratios for the linear-combination operation, per unit of the
// free scale alpha.  Defaults give the degree-4 truncations of
// alpha(e^x - 1) and alpha(e^-x - 1) plus the x^5/5! second-order term.
struct LinCombTargets {
    std::array<Complex, 4> alpha = {1.0, 1.0 / 2, 1.0 / 6, 1.0 / 24};
    std::array<Complex, 4> beta = {-1.0, 1.0 / 2, -1.0 / 6, 1.0 / 24};
    Complex gamma = 1.0 / 120;
};

// One of the five receiver-side operations.
struct OperationSpec {
    enum class Kind { restore, zero1, zero2, zero3, rearrange, lin_comb, lin_sys };

    Kind kind = Kind::restore;
    LinCombTargets targets;                              // lin_comb
    Eigen::Matrix2d coeff_matrix = Eigen::Matrix2d::Zero();  // lin_sys A

    static OperationSpec restore();
    static OperationSpec zero_triplet(int variant);  // 1, 2 or 3
    static OperationSpec rearrange();
    static OperationSpec lin_comb(const LinCombTargets& targets = {});
    static OperationSpec lin_sys(const Eigen::Matrix2d& a);

    std::string name() const;
    void validate() const;
};

OperationSpec::Kind operation_kind_from_string(const std::string& name);

// Residual vector of the operation's constraints plus the figure of
// merit used to rank feasible solutions.
struct ResidualReport {
    std::vector<Complex> residuals;
    double norm = 0.0;
    double objective = 0.0;
    std::optional<Complex> aux;  // alpha (lin_comb) or c (lin_sys)
};

ResidualReport residual(const OperationSpec& spec, const TransferCoefficients& coef);

// One verified property of an applied operation.
struct CheckResult {
    std::string name;
    double error = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    const CheckResult* find(const std::string& name) const;
};

// Applies the channel defined by (phi, ordering) to probe sender states
// and checks the operation's output pattern entrywise.  Extra physical
// probes may be supplied; deterministic defaults are always included.
VerificationReport verify_application(const OperationSpec& spec, const PhiVector& phi,
                                      ProductOrdering ordering, const CoefficientEngine& engine,
                                      const BasisCatalog& catalog, double tol,
                                      const std::vector<TwoQubitState>& probes = {});

}  // namespace spinline
