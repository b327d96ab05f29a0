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

#include "spinline/evolution.hpp"

#include <sstream>
#include <stdexcept>

namespace spinline {

namespace {

void decompose_block(const Eigen::MatrixXd& h, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs,
                     const char* which) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigendecompose: solver failed on the " << which << " block (dim " << h.rows() << ")";
        throw std::runtime_error(msg.str());
    }
    evals = solver.eigenvalues();
    evecs = solver.eigenvectors();
    const double defect = (evecs * evals.asDiagonal() * evecs.transpose() - h).cwiseAbs().maxCoeff();
    if (defect > 1e-12) {
        std::ostringstream msg;
        msg << "eigendecompose: reconstruction defect " << defect << " on the " << which << " block";
        throw std::runtime_error(msg.str());
    }
}

Eigen::MatrixXcd exp_block(const Eigen::VectorXd& evals, const Eigen::MatrixXd& evecs, double t) {
    const Eigen::VectorXcd phases =
        (Complex(0, -t) * evals.cast<Complex>().array()).exp().matrix();
    return evecs.cast<Complex>() * phases.asDiagonal() * evecs.transpose().cast<Complex>();
}

}  // namespace

double BlockOperator::unitarity_defect() const {
    double defect = std::abs(std::abs(b0) - 1.0);
    if (b1.size() > 0) {
        const Eigen::MatrixXcd g1 = b1.adjoint() * b1 - Eigen::MatrixXcd::Identity(b1.rows(), b1.cols());
        defect = std::max(defect, g1.cwiseAbs().maxCoeff());
    }
    if (b2.size() > 0) {
        const Eigen::MatrixXcd g2 = b2.adjoint() * b2 - Eigen::MatrixXcd::Identity(b2.rows(), b2.cols());
        defect = std::max(defect, g2.cwiseAbs().maxCoeff());
    }
    return defect;
}

SpectralData eigendecompose(const HamiltonianBlocks& blocks) {
    SpectralData spectral;
    decompose_block(blocks.h1, spectral.evals1, spectral.evecs1, "one-excitation");
    decompose_block(blocks.h2, spectral.evals2, spectral.evecs2, "two-excitation");
    return spectral;
}

BlockOperator propagator(const SpectralData& spectral, double t) {
    BlockOperator v;
    v.b0 = Complex(1.0, 0.0);
    v.b1 = exp_block(spectral.evals1, spectral.evecs1, t);
    v.b2 = exp_block(spectral.evals2, spectral.evecs2, t);
    return v;
}

Eigen::VectorXcd propagator_column(const SpectralData& spectral, double t, int k, int offset) {
    const Eigen::VectorXd& evals = (k == 1) ? spectral.evals1 : spectral.evals2;
    const Eigen::MatrixXd& evecs = (k == 1) ? spectral.evecs1 : spectral.evecs2;
    if (k != 1 && k != 2) throw std::invalid_argument("propagator_column: sector must be 1 or 2");
    if (offset < 0 || offset >= evecs.rows())
        throw std::invalid_argument("propagator_column: offset out of range");
    const Eigen::VectorXd weights = evecs.row(offset).transpose();
    const Eigen::VectorXcd phased =
        (Complex(0, -t) * evals.cast<Complex>().array()).exp() * weights.cast<Complex>().array();
    return evecs.cast<Complex>() * phased;
}

}  // namespace spinline
