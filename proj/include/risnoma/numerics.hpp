// SPDX-License-Identifier: Apache-2.0
//
// risnoma - link-level simulation of RIS-assisted code-domain NOMA uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Dense complex Hermitian linear algebra used throughout the simulator:
// dominant eigenpairs, PSD-cone projection and positive-definite solves.

namespace risnoma {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Dense Hermitian matrix, row-major. Both triangles are stored and kept
// exactly conjugate-symmetric by every mutating member.
class HermitianMatrix {
public:
    // Zero matrix. Throws DimensionMismatch for dim == 0.
    explicit HermitianMatrix(std::size_t dim);

    static HermitianMatrix identity(std::size_t dim);

    // Validates conj-symmetry to `tol` (absolute) and a real diagonal, then
    // stores the exactly symmetrized entries.
    static HermitianMatrix from_dense(std::size_t dim, std::span<const cdouble> row_major,
                                      double tol = 1e-12);

    // (A + A^H) / 2 of an arbitrary square matrix; no validation.
    static HermitianMatrix symmetrized(std::size_t dim, std::span<const cdouble> row_major);

    // scale * v v^H
    static HermitianMatrix outer(std::span<const cdouble> v, double scale = 1.0);

    std::size_t dim() const noexcept { return dim_; }
    cdouble operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }
    std::span<const cdouble> row(std::size_t i) const noexcept {
        return {a_.data() + i * dim_, dim_};
    }
    std::span<const cdouble> data() const noexcept { return a_; }

    // this += scale * v v^H
    void add_outer(double scale, std::span<const cdouble> v);
    // this += scale * other
    void add_scaled(double scale, const HermitianMatrix& other);
    void add_identity(double scale);
    void scale(double s);
    // Sets a diagonal entry; the diagonal of a Hermitian matrix is real.
    void set_diagonal(std::size_t i, double value);
    // Sets (i, j) and its mirror (j, i) = conj(value). For i == j the
    // imaginary part is dropped.
    void set(std::size_t i, std::size_t j, cdouble value);

    double trace() const noexcept;
    // Re tr(this * other), the real Frobenius inner product.
    double inner(const HermitianMatrix& other) const;
    double frobenius_norm() const;
    CVector apply(std::span<const cdouble> x) const;
    // x^H this x (real for Hermitian storage)
    double quadratic_form(std::span<const cdouble> x) const;
    bool is_hermitian(double tol) const noexcept;

private:
    std::size_t dim_;
    std::vector<cdouble> a_;
};

struct EigenPair {
    double value;
    CVector vector;  // unit norm
    int iterations;
};

struct HermitianEigen {
    std::vector<double> values;  // ascending
    std::vector<CVector> vectors;  // vectors[i] pairs with values[i]
};

// Algebraically largest eigenvalue and a unit eigenvector, by power
// iteration from the normalized all-ones vector. Stops once
// ||m u - lambda u|| <= tol * ||m||_F.
EigenPair dominant_eigenpair(const HermitianMatrix& m, double tol = 1e-10, int max_iter = 20000);

// Full eigendecomposition (ascending eigenvalues).
HermitianEigen hermitian_eigen(const HermitianMatrix& m);

double min_eigenvalue(const HermitianMatrix& m);

// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to 0.
HermitianMatrix psd_project(const HermitianMatrix& m);

// Solves a x = b for Hermitian positive-definite a via Cholesky with one
// step of iterative refinement.
CVector solve_hermitian_pd(const HermitianMatrix& a, std::span<const cdouble> b);

// log2 det(a) for Hermitian positive-definite a, from the Cholesky diagonal.
double log2_det_hpd(const HermitianMatrix& a);

double norm(std::span<const cdouble> v);

}  // namespace risnoma
