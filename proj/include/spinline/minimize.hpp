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
#include <functional>

namespace spinline {

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;

struct MinimizeResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int evals = 0;
    bool converged = false;
};

// Derivative-free simplex descent with dimension-adaptive coefficients.
// Stops at the evaluation budget or when the simplex collapses.
MinimizeResult nelder_mead(const ScalarFn& fn, const Eigen::VectorXd& x0, int max_evals,
                           double initial_step);

// BFGS with central finite-difference gradients and a backtracking
// Armijo line search.  Stops at f <= f_target, a vanishing gradient,
// a failed line search, or the iteration cap.
MinimizeResult bfgs_fd(const ScalarFn& fn, const Eigen::VectorXd& x0, int max_iterations,
                       double fd_step, double grad_tol, double f_target);

}  // namespace spinline
