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

#include "spinline/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spinline/minimize.hpp"
#include "spinline/rng.hpp"

namespace spinline {

void SearchConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("SearchConfig: restarts must be >= 1");
    if (residual_tol <= 0) throw std::invalid_argument("SearchConfig: residual_tol must be positive");
    if (max_iterations < 100) throw std::invalid_argument("SearchConfig: max_iterations too small");
}

OperationObjective::OperationObjective(const CoefficientEngine& engine, OperationSpec spec,
                                       ProductOrdering ordering)
    : engine_(engine), spec_(std::move(spec)), ordering_(ordering) {
    spec_.validate();
}

ResidualReport OperationObjective::evaluate(const Eigen::VectorXd& angles) const {
    const ERUnitary u = compose_flat(angles.data(), ordering_);
    return residual(spec_, engine_.coefficients(u));
}

ResidualReport OperationObjective::evaluate(const PhiVector& phi) const {
    return evaluate(phi.to_vector());
}

double OperationObjective::squared_norm(const Eigen::VectorXd& angles) const {
    const ResidualReport report = evaluate(angles);
    return report.norm * report.norm;
}

LocalSolveResult local_solve(const OperationObjective& objective, const PhiVector& phi0,
                             const SearchConfig& config) {
    config.validate();
    const ScalarFn fn = [&objective](const Eigen::VectorXd& x) { return objective.squared_norm(x); };

    LocalSolveResult result;
    const Eigen::VectorXd x0 = phi0.to_vector();
    const double f0 = fn(x0);
    const double tol2 = config.residual_tol * config.residual_tol;

    // already deep inside the feasible set: nothing to do
    if (f0 < 1e-4 * tol2) {
        result.phi = phi0;
        result.report = objective.evaluate(phi0);
        result.converged = true;
        result.evals = 1;
        return result;
    }

    const int simplex_budget = std::min(1500, config.max_iterations / 4);
    const MinimizeResult coarse = nelder_mead(fn, x0, simplex_budget, 0.8);

    const int evals_left = config.max_iterations - coarse.evals;
    const int bfgs_iters = std::max(20, evals_left / (2 * kNumPhiAngles + 8));
    const MinimizeResult polished =
        bfgs_fd(fn, coarse.x, bfgs_iters, 1e-6, 1e-12, 1e-4 * tol2);

    result.phi = PhiVector::from_vector(polished.x);
    // wrapped angles re-fed through the pipeline give the reported numbers
    result.report = objective.evaluate(result.phi);
    result.converged = result.report.norm <= config.residual_tol;
    result.evals = coarse.evals + polished.evals + 1;
    return result;
}

namespace {

PhiVector random_start(std::uint64_t seed, int restart) {
    SplitMix64 gen(mix_seed(seed, static_cast<std::uint64_t>(restart)));
    PhiVector phi;
    for (int i = 0; i < kNumPhiAngles; ++i)
        phi.set_flat(i, gen.next_double(2.0 * std::numbers::pi));
    return phi;
}

struct Candidate {
    RestartRecord record;
    PhiVector phi;
    std::optional<Complex> aux;
};

}  // namespace

SearchResult multistart(const OperationObjective& objective, const SearchConfig& config) {
    config.validate();

    std::vector<Candidate> candidates(static_cast<std::size_t>(config.restarts));
    std::atomic<int> next{0};
    std::mutex io_mutex;

    auto run_restart = [&](int index) {
        const PhiVector start = random_start(config.seed, index);
        const LocalSolveResult local = local_solve(objective, start, config);
        Candidate& cand = candidates[static_cast<std::size_t>(index)];
        cand.record.index = index;
        cand.record.residual_norm = local.report.norm;
        cand.record.objective = local.report.objective;
        cand.record.feasible = local.report.norm < config.residual_tol &&
                               local.report.objective > config.objective_floor;
        cand.phi = local.phi;
        cand.aux = local.report.aux;
        if (config.verbose) {
            std::lock_guard<std::mutex> lock(io_mutex);
            std::cerr << "{\"restart\":" << index << ",\"residual\":" << local.report.norm
                      << ",\"objective\":" << local.report.objective
                      << ",\"feasible\":" << (cand.record.feasible ? "true" : "false") << "}\n";
        }
    };

    int workers = config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, config.restarts));
    if (workers == 1) {
        for (int i = 0; i < config.restarts; ++i) run_restart(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < config.restarts; i = next.fetch_add(1))
                    run_restart(i);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    // deterministic fold in restart order
    SearchResult result;
    result.log.reserve(candidates.size());
    const Candidate* best = nullptr;
    const Candidate* best_infeasible = nullptr;
    for (const Candidate& cand : candidates) {
        result.log.push_back(cand.record);
        if (cand.record.feasible) {
            ++result.feasible_count;
            if (best == nullptr || cand.record.objective > best->record.objective + 1e-9 ||
                (cand.record.objective > best->record.objective - 1e-9 &&
                 cand.record.residual_norm < best->record.residual_norm)) {
                best = &cand;
            }
        } else if (best_infeasible == nullptr ||
                   cand.record.residual_norm < best_infeasible->record.residual_norm) {
            best_infeasible = &cand;
        }
    }

    if (best != nullptr) {
        result.feasible = true;
        result.best_phi = best->phi;
        result.residual_norm = best->record.residual_norm;
        result.objective = best->record.objective;
        result.aux = best->aux;
        result.best_restart = best->record.index;
    } else if (best_infeasible != nullptr) {
        result.feasible = false;
        result.best_phi = best_infeasible->phi;
        result.residual_norm = best_infeasible->record.residual_norm;
        result.objective = best_infeasible->record.objective;
        result.aux = best_infeasible->aux;
        result.best_restart = best_infeasible->record.index;
    }
    return result;
}

}  // namespace spinline
