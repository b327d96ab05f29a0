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

#include "spinline/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace spinline {

MinimizeResult nelder_mead(const ScalarFn& fn, const Eigen::VectorXd& x0, int max_evals,
                           double initial_step) {
    const int n = static_cast<int>(x0.size());
    const double nd = static_cast<double>(n);
    // dimension-adaptive coefficients (Gao & Han)
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / nd;
    const double contract = 0.75 - 0.5 / nd;
    const double shrink = 1.0 - 1.0 / nd;

    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return fn(x);
    };

    std::vector<Eigen::VectorXd> verts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> fv(static_cast<std::size_t>(n + 1));
    fv[0] = eval(x0);
    for (int i = 0; i < n; ++i) {
        verts[static_cast<std::size_t>(i + 1)][i] += initial_step;
        fv[static_cast<std::size_t>(i + 1)] = eval(verts[static_cast<std::size_t>(i + 1)]);
    }

    std::vector<int> order(static_cast<std::size_t>(n + 1));
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fv[static_cast<std::size_t>(a)] < fv[static_cast<std::size_t>(b)]; });
    };

    while (evals < max_evals) {
        sort_order();
        const int best = order[0];
        const int worst = order[static_cast<std::size_t>(n)];
        const int second_worst = order[static_cast<std::size_t>(n - 1)];
        const double fb = fv[static_cast<std::size_t>(best)];
        const double fw = fv[static_cast<std::size_t>(worst)];
        if (fw - fb < 1e-12 + 1e-10 * std::abs(fb)) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (order[static_cast<std::size_t>(i)] != worst)
                centroid += verts[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        centroid /= nd;

        const Eigen::VectorXd xr = centroid + reflect * (centroid - verts[static_cast<std::size_t>(worst)]);
        const double fr = eval(xr);
        if (fr < fb) {
            const Eigen::VectorXd xe = centroid + expand * (xr - centroid);
            const double fe = eval(xe);
            if (fe < fr) {
                verts[static_cast<std::size_t>(worst)] = xe;
                fv[static_cast<std::size_t>(worst)] = fe;
            } else {
                verts[static_cast<std::size_t>(worst)] = xr;
                fv[static_cast<std::size_t>(worst)] = fr;
            }
            continue;
        }
        if (fr < fv[static_cast<std::size_t>(second_worst)]) {
            verts[static_cast<std::size_t>(worst)] = xr;
            fv[static_cast<std::size_t>(worst)] = fr;
            continue;
        }
        // contraction: outside if the reflected point improved the worst
        if (fr < fw) {
            const Eigen::VectorXd xc = centroid + contract * (xr - centroid);
            const double fc = eval(xc);
            if (fc <= fr) {
                verts[static_cast<std::size_t>(worst)] = xc;
                fv[static_cast<std::size_t>(worst)] = fc;
                continue;
            }
        } else {
            const Eigen::VectorXd xc = centroid - contract * (centroid - verts[static_cast<std::size_t>(worst)]);
            const double fc = eval(xc);
            if (fc < fw) {
                verts[static_cast<std::size_t>(worst)] = xc;
                fv[static_cast<std::size_t>(worst)] = fc;
                continue;
            }
        }
        // shrink toward the best vertex
        for (int i = 1; i <= n; ++i) {
            const int v = order[static_cast<std::size_t>(i)];
            verts[static_cast<std::size_t>(v)] =
                verts[static_cast<std::size_t>(best)] +
                shrink * (verts[static_cast<std::size_t>(v)] - verts[static_cast<std::size_t>(best)]);
            fv[static_cast<std::size_t>(v)] = eval(verts[static_cast<std::size_t>(v)]);
            if (evals >= max_evals) break;
        }
    }

    sort_order();
    MinimizeResult result;
    result.x = verts[static_cast<std::size_t>(order[0])];
    result.f = fv[static_cast<std::size_t>(order[0])];
    result.evals = evals;
    result.converged = true;
    return result;
}

MinimizeResult bfgs_fd(const ScalarFn& fn, const Eigen::VectorXd& x0, int max_iterations,
                       double fd_step, double grad_tol, double f_target) {
    const int n = static_cast<int>(x0.size());
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return fn(x);
    };
    auto gradient = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd g(n);
        Eigen::VectorXd xp = x;
        for (int i = 0; i < n; ++i) {
            const double xi = x[i];
            xp[i] = xi + fd_step;
            const double fp = eval(xp);
            xp[i] = xi - fd_step;
            const double fm = eval(xp);
            xp[i] = xi;
            g[i] = (fp - fm) / (2.0 * fd_step);
        }
        return g;
    };

    Eigen::VectorXd x = x0;
    double f = eval(x);
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = gradient(x);
    bool first_update = true;

    MinimizeResult result;
    result.converged = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
        if (f <= f_target || g.lpNorm<Eigen::Infinity>() <= grad_tol) {
            result.converged = true;
            break;
        }
        Eigen::VectorXd p = -(h_inv * g);
        double slope = g.dot(p);
        if (slope >= 0) {  // reset a broken curvature model
            h_inv.setIdentity();
            p = -g;
            slope = g.dot(p);
            if (slope >= 0) break;
        }

        // backtracking Armijo search
        double alpha = 1.0;
        double f_new = f;
        Eigen::VectorXd x_new = x;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = x + alpha * p;
            f_new = eval(x_new);
            if (f_new <= f + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
            if (alpha < 1e-14) break;
        }
        if (!accepted) break;

        const Eigen::VectorXd g_new = gradient(x_new);
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (first_update) {
                h_inv *= sy / y.squaredNorm();
                first_update = false;
            }
            const double rho = 1.0 / sy;
            const Eigen::VectorXd hy = h_inv * y;
            // BFGS inverse update
            h_inv += (sy + y.dot(hy)) * rho * rho * (s * s.transpose()) -
                     rho * (hy * s.transpose() + s * hy.transpose());
        }
        x = x_new;
        f = f_new;
        g = g_new;
    }
    if (f <= f_target || g.lpNorm<Eigen::Infinity>() <= grad_tol) result.converged = true;

    result.x = x;
    result.f = f;
    result.evals = evals;
    return result;
}

}  // namespace spinline
