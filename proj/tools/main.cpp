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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spinline/cli_io.hpp"

namespace {

using spinline::RunConfig;

struct GlobalArgs {
    std::string config_path;
    std::string phi_path;
    std::string ordering;
    int restarts = -1;
    std::int64_t seed = -1;
    double tol = -1;
    std::string out_path;
    bool verbose = false;
};

RunConfig resolve_config(const GlobalArgs& args) {
    RunConfig config;
    if (!args.config_path.empty()) config = RunConfig::load(args.config_path);
    if (!args.ordering.empty()) config.ordering = spinline::ordering_from_string(args.ordering);
    if (args.restarts > 0) config.search.restarts = args.restarts;
    if (args.seed >= 0) config.search.seed = static_cast<std::uint64_t>(args.seed);
    if (args.tol > 0) config.search.residual_tol = args.tol;
    config.search.verbose = config.search.verbose || args.verbose;
    return config;
}

void emit(const nlohmann::json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report '" + out_path + "'");
    out << report.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-chain transfer with receiver-side algebraic operations"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "run configuration (JSON)");
    app.add_option("--ordering", args.ordering,
                   "rotation product order: canonical|alternate|canonical-swapped|alternate-swapped");
    app.add_option("--restarts", args.restarts, "number of multistart restarts");
    app.add_option("--seed", args.seed, "search seed");
    app.add_option("--tol", args.tol, "residual tolerance");
    app.add_option("--out", args.out_path, "output path (phi table for optimize, report otherwise)");
    app.add_flag("--verbose", args.verbose, "stream per-restart records to stderr");

    auto* model = app.add_subcommand("model", "chain geometry, couplings and spectrum");

    auto* coefficients =
        app.add_subcommand("coefficients", "transfer coefficients for a phi table");
    coefficients->add_option("--phi", args.phi_path, "phi table (CSV)")->required();

    auto* verify = app.add_subcommand("verify-table", "check the bundled reference tables");
    std::string table_dir;
    verify->add_option("tables", table_dir, "directory with reference_values.json");

    auto* optimize = app.add_subcommand("optimize", "multistart search for the configured operation");

    auto* apply = app.add_subcommand("apply", "apply a phi table and verify the operation pattern");
    apply->add_option("--phi", args.phi_path, "phi table (CSV)")->required();
    double apply_tol = 1e-6;
    apply->add_option("--check-tol", apply_tol, "verification tolerance");

    auto* solve = app.add_subcommand("solve-linsys", "solve A x = b through the transfer channel");
    std::vector<double> a_entries, b_entries;
    solve->add_option("--A", a_entries, "row-major entries a11,a12,a21,a22")->delimiter(',');
    solve->add_option("--b", b_entries, "right-hand side b1,b2")->delimiter(',')->required();
    solve->add_option("--phi", args.phi_path, "phi table (optional; optimizes when absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig config = resolve_config(args);
        nlohmann::json report;
        int code = 2;

        if (model->parsed()) {
            code = spinline::cmd_model(config, report);
        } else if (coefficients->parsed()) {
            code = spinline::cmd_coefficients(config, args.phi_path, report);
        } else if (verify->parsed()) {
            const std::filesystem::path dir =
                table_dir.empty() ? spinline::default_data_dir() : std::filesystem::path(table_dir);
            code = spinline::cmd_verify_table(config, dir, report);
        } else if (optimize->parsed()) {
            std::optional<std::filesystem::path> phi_out;
            if (!args.out_path.empty()) phi_out = args.out_path;
            code = spinline::cmd_optimize(config, phi_out, report);
            emit(report, "");
            return code;
        } else if (apply->parsed()) {
            code = spinline::cmd_apply(config, args.phi_path, apply_tol, report);
        } else if (solve->parsed()) {
            if (b_entries.size() != 2) throw std::runtime_error("--b expects two entries");
            if (!a_entries.empty()) {
                if (a_entries.size() != 4) throw std::runtime_error("--A expects four entries");
                Eigen::Matrix2d a;
                a << a_entries[0], a_entries[1], a_entries[2], a_entries[3];
                config.operation = spinline::OperationSpec::lin_sys(a);
            }
            std::optional<std::filesystem::path> phi;
            if (!args.phi_path.empty()) phi = args.phi_path;
            code = spinline::cmd_solve_linsys(config, Eigen::Vector2d(b_entries[0], b_entries[1]),
                                              phi, report);
        }

        emit(report, args.out_path);
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
