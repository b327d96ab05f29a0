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

#include <cstdint>
#include <optional>
#include <vector>

#include "spinline/operations.hpp"

namespace spinline {

struct SearchConfig {
    int restarts = 1000;
    std::uint64_t seed = 1;
    double residual_tol = 1e-8;
    int max_iterations = 20000;  // function-evaluation budget per restart
    double objective_floor = 0.01;
    int workers = 0;  // 0 = hardware concurrency
    bool verbose = false;

    void validate() const;
};

// Residual of one operation as a function of the 42 angles, bound to a
// fixed chain and working time.
class OperationObjective {
public:
    OperationObjective(const CoefficientEngine& engine, OperationSpec spec,
                       ProductOrdering ordering);

    ResidualReport evaluate(const Eigen::VectorXd& angles) const;
    ResidualReport evaluate(const PhiVector& phi) const;
    double squared_norm(const Eigen::VectorXd& angles) const;

    const OperationSpec& spec() const { return spec_; }
    ProductOrdering ordering() const { return ordering_; }
    const CoefficientEngine& engine() const { return engine_; }

private:
    const CoefficientEngine& engine_;
    OperationSpec spec_;
    ProductOrdering ordering_;
};

struct LocalSolveResult {
    PhiVector phi;
    ResidualReport report;
    bool converged = false;
    int evals = 0;
};

// Simplex descent followed by a finite-difference BFGS polish of the
// squared residual norm.  Deterministic given phi0 and config.
LocalSolveResult local_solve(const OperationObjective& objective, const PhiVector& phi0,
                             const SearchConfig& config);

struct RestartRecord {
    int index = 0;
    double residual_norm = 0.0;
    double objective = 0.0;
    bool feasible = false;
};

struct SearchResult {
    PhiVector best_phi;
    double residual_norm = 0.0;
    double objective = 0.0;
    std::optional<Complex> aux;
    int feasible_count = 0;
    bool feasible = false;
    int best_restart = -1;
    std::vector<RestartRecord> log;
};

// Independent local solves from seeded uniform starting points; keeps
// solutions under the residual tolerance and above the objective floor
// and returns the one with the largest objective (ties within 1e-9 go
// to the lower residual, then the lower restart index).  Bitwise
// reproducible for a fixed seed regardless of worker count.
SearchResult multistart(const OperationObjective& objective, const SearchConfig& config);

}  // namespace spinline
