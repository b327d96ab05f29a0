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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "spinline/optimizer.hpp"

namespace spinline {

inline constexpr const char* kArtifactVersion = "spinline 0.1.0";

// Everything one run needs: chain geometry, working time, product
// ordering, target operation, search parameters, optional sender state.
struct RunConfig {
    ChainSpec chain;
    double time = 58.9826;
    ProductOrdering ordering = ProductOrdering::canonical;
    OperationSpec operation = OperationSpec::restore();
    SearchConfig search;
    std::optional<Eigen::Matrix4cd> sender_state;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::filesystem::path& path);
    nlohmann::json to_json() const;
    // FNV-1a of the canonical serialization; embedded in every report
    std::string digest() const;
};

// Catalog, spectral data and coefficient engine for one configuration.
struct ModelContext {
    BasisCatalog catalog;
    SpectralData spectral;
    CoefficientEngine engine;

    explicit ModelContext(const RunConfig& config);
};

nlohmann::json complex_json(const Complex& z);
nlohmann::json coefficients_json(const TransferCoefficients& coef);
nlohmann::json residual_json(const ResidualReport& report);
nlohmann::json verification_json(const VerificationReport& report);
nlohmann::json provenance_json(const RunConfig& config);

// default location of the bundled reference tables
std::filesystem::path default_data_dir();
nlohmann::json load_reference_values(const std::filesystem::path& table_dir);

// Consistency identities evaluated on the published coefficient values
// alone (no simulation): |c| = |a||d| with phase(c) = phase(d)-phase(a),
// and |f| = |a_01||a_10| with the matching phase rule.
nlohmann::json printed_identity_checks(const nlohmann::json& reference, double mag_tol,
                                       double phase_tol, bool& all_pass);

// operation pattern flags at the given tolerance (norm of the residual
// vector below `tol` and a non-degenerate objective)
std::vector<std::string> pattern_flags(const TransferCoefficients& coef,
                                       const OperationSpec& configured, double tol,
                                       double objective_floor);

// subcommands; each fills `out` with the report and returns the exit
// code (0 pass, 1 verification fail / infeasible, 2 usage errors are
// raised as exceptions by the caller)
int cmd_model(const RunConfig& config, nlohmann::json& out);
int cmd_coefficients(const RunConfig& config, const std::filesystem::path& phi_file,
                     nlohmann::json& out);
int cmd_verify_table(const RunConfig& config, const std::filesystem::path& table_dir,
                     nlohmann::json& out);
int cmd_optimize(const RunConfig& config, const std::optional<std::filesystem::path>& phi_out,
                 nlohmann::json& out);
int cmd_apply(const RunConfig& config, const std::filesystem::path& phi_file, double tol,
              nlohmann::json& out);
int cmd_solve_linsys(const RunConfig& config, const Eigen::Vector2d& b,
                     const std::optional<std::filesystem::path>& phi_file, nlohmann::json& out);

}  // namespace spinline
