// Copyright 2026 The Purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force density-matrix swap test for small d.
//
// Nothing here uses the parametric formulas: the swap operator is built as an
// explicit d^2 x d^2 permutation, the outcome branches are projected with
// (I +- S)/2, and the output register is obtained by a partial trace. This
// makes the module an independent check of the closed forms in gadget.hpp and
// recurrence.hpp.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "purify/core.hpp"

namespace purify::dense {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::int64_t kMaxDimension = 16;
inline constexpr double kValidityTolerance = 1e-12;

inline void require_oracle_dimension(std::int64_t d) {
    if (d < 2 || d > kMaxDimension) {
        throw std::invalid_argument("dense oracle supports 2 <= d <= " + std::to_string(kMaxDimension) + ", got " +
                                    std::to_string(d));
    }
}

/// Normalized state vector.
class PureState {
   public:
    explicit PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        require_oracle_dimension(amplitudes_.size());
        if (std::abs(amplitudes_.norm() - 1.0) > kValidityTolerance) {
            throw std::invalid_argument("PureState must have unit norm");
        }
    }

    static PureState basis(std::int64_t d, std::int64_t k) {
        Vector v = Vector::Zero(d);
        v(k) = 1.0;
        return PureState(std::move(v));
    }

    const Vector &amplitudes() const { return amplitudes_; }
    std::int64_t dim() const { return amplitudes_.size(); }
    Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

   private:
    Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (each within 1e-12).
class DensityMatrix {
   public:
    explicit DensityMatrix(Matrix entries, double tol = kValidityTolerance) : m_(std::move(entries)) {
        if (m_.rows() != m_.cols()) {
            throw std::invalid_argument("density matrix must be square");
        }
        if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol) {
            throw std::invalid_argument("density matrix must be Hermitian");
        }
        if (std::abs(m_.trace() - Complex(1.0)) > tol) {
            throw std::invalid_argument("density matrix must have unit trace");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(m_, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -tol) {
            throw std::invalid_argument("density matrix must be positive semidefinite");
        }
    }

    const Matrix &matrix() const { return m_; }
    std::int64_t dim() const { return m_.rows(); }

    Eigen::VectorXd eigenvalues() const {
        return Eigen::SelfAdjointEigenSolver<Matrix>(m_, Eigen::EigenvaluesOnly).eigenvalues();
    }

   private:
    Matrix m_;
};

/// i.i.d. complex Gaussian amplitudes, normalized (Haar-distributed direction).
inline PureState random_pure_state(std::int64_t d, Seed seed) {
    require_oracle_dimension(d);
    Rng rng(seed);
    Vector v(d);
    for (std::int64_t k = 0; k < d; k++) {
        double re = rng.normal();
        double im = rng.normal();
        v(k) = Complex(re, im);
    }
    v /= v.norm();
    return PureState(std::move(v));
}

/// (1 - delta) |psi><psi| + delta I / d.
inline DensityMatrix make_depolarized(const PureState &psi, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("delta must lie in [0,1]");
    }
    std::int64_t d = psi.dim();
    Matrix m = (1.0 - delta) * psi.projector() + (delta / static_cast<double>(d)) * Matrix::Identity(d, d);
    return DensityMatrix(std::move(m));
}

/// The swap operator S |i>|j> = |j>|i> on C^d (x) C^d, index i*d + j.
inline Matrix swap_operator(std::int64_t d) {
    Matrix s = Matrix::Zero(d * d, d * d);
    for (std::int64_t i = 0; i < d; i++) {
        for (std::int64_t j = 0; j < d; j++) {
            s(j * d + i, i * d + j) = 1.0;
        }
    }
    return s;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Tr over the second factor of a (d*d) x (d*d) operator.
inline Matrix partial_trace_second(const Matrix &m, std::int64_t d) {
    Matrix out = Matrix::Zero(d, d);
    for (std::int64_t i = 0; i < d; i++) {
        for (std::int64_t k = 0; k < d; k++) {
            Complex acc = 0.0;
            for (std::int64_t j = 0; j < d; j++) {
                acc += m(i * d + j, k * d + j);
            }
            out(i, k) = acc;
        }
    }
    return out;
}

struct SwapTestResult {
    double p0;                 ///< Tr[(I+S)/2 (rho (x) sigma)]
    double p0_trace_formula;   ///< (1 + Tr(rho sigma)) / 2
    double p1;                 ///< Tr[(I-S)/2 (rho (x) sigma)]
    Matrix omega0;             ///< normalized output register for outcome 0
    Matrix omega1;             ///< normalized output register for outcome 1 (zero if p1 ~ 0)

    DensityMatrix omega0_state(double tol = kValidityTolerance) const { return DensityMatrix(omega0, tol); }
    DensityMatrix omega1_state(double tol = kValidityTolerance) const { return DensityMatrix(omega1, tol); }
};

/// Runs the swap test on rho (x) sigma and reports both measurement branches.
inline SwapTestResult swap_test_apply(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("swap_test_apply: dimension mismatch");
    }
    std::int64_t d = rho.dim();
    require_oracle_dimension(d);
    Matrix joint = kron(rho.matrix(), sigma.matrix());
    Matrix s = swap_operator(d);
    Matrix id = Matrix::Identity(d * d, d * d);
    Matrix sym = 0.5 * (id + s);
    Matrix anti = 0.5 * (id - s);

    Matrix branch0 = sym * joint * sym;
    Matrix branch1 = anti * joint * anti;

    SwapTestResult r;
    r.p0 = branch0.trace().real();
    r.p1 = branch1.trace().real();
    r.p0_trace_formula = 0.5 * (1.0 + (rho.matrix() * sigma.matrix()).trace().real());
    if (std::abs(r.p0 - r.p0_trace_formula) > kValidityTolerance) {
        throw std::logic_error("swap_test_apply: projector and trace formulas disagree");
    }
    r.omega0 = r.p0 > kValidityTolerance ? Matrix(partial_trace_second(branch0, d) / r.p0) : Matrix::Zero(d, d);
    r.omega1 = r.p1 > kValidityTolerance ? Matrix(partial_trace_second(branch1, d) / r.p1) : Matrix::Zero(d, d);
    return r;
}

/// (1/2) sum |eig(A - B)|.
inline double trace_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    Matrix diff = a - b;
    Matrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    return trace_distance(a.matrix(), b.matrix());
}

}  // namespace purify::dense
