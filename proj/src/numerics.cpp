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

#include "risnoma/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "risnoma/errors.hpp"
#include "risnoma/kernels.hpp"

namespace risnoma {
namespace {

using RowMajorXcd = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

void normalize(CVector& v) {
    const double n = norm(v);
    for (auto& x : v) x /= n;
}

// Deterministic restart vector.
void randomize(CVector& v) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> g;
    for (auto& e : v) e = {g(rng), g(rng)};
    normalize(v);
}

// Lower Gershgorin bound on the spectrum.
double gershgorin_lower(const HermitianMatrix& m) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (j != i) radius += std::abs(m(i, j));
        lo = std::min(lo, m(i, i).real() - radius);
    }
    return lo;
}

// p <- p * p / ||p * p||_F, using Hermitian symmetry for half the work.
void square_normalized(std::vector<cdouble>& p, std::size_t n) {
    std::vector<cdouble> q(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const cdouble> ri(p.data() + i * n, n);
        for (std::size_t j = i; j < n; ++j) {
            std::span<const cdouble> rj(p.data() + j * n, n);
            // (P^2)_ij = sum_k P_ik P_kj = sum_k conj(P_jk) P_ik
            const cdouble v = kernels::dotc(rj, ri);
            q[i * n + j] = v;
            q[j * n + i] = std::conj(v);
        }
        q[i * n + i] = q[i * n + i].real();
    }
    const double f = std::sqrt(kernels::norm_sq(q));
    if (f > 0.0)
        for (auto& x : q) x /= f;
    p.swap(q);
}

void matvec(std::span<const cdouble> a, std::size_t n, std::span<const cdouble> x, CVector& y) {
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = kernels::dotu(a.subspan(i * n, n), x);
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
    if (dim == 0) throw DimensionMismatch("HermitianMatrix: dimension must be >= 1");
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    HermitianMatrix m(dim);
    m.add_identity(1.0);
    return m;
}

HermitianMatrix HermitianMatrix::from_dense(std::size_t dim, std::span<const cdouble> row_major,
                                            double tol) {
    require_same_dim(row_major.size(), dim * dim, "HermitianMatrix::from_dense");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j)
            if (std::abs(row_major[i * dim + j] - std::conj(row_major[j * dim + i])) > tol)
                throw InvalidState("HermitianMatrix::from_dense: entry (" + std::to_string(i) +
                                   ", " + std::to_string(j) + ") is not conjugate-symmetric");
    return symmetrized(dim, row_major);
}

HermitianMatrix HermitianMatrix::symmetrized(std::size_t dim, std::span<const cdouble> row_major) {
    require_same_dim(row_major.size(), dim * dim, "HermitianMatrix::symmetrized");
    HermitianMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.a_[i * dim + i] = row_major[i * dim + i].real();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cdouble v = 0.5 * (row_major[i * dim + j] + std::conj(row_major[j * dim + i]));
            m.a_[i * dim + j] = v;
            m.a_[j * dim + i] = std::conj(v);
        }
    }
    return m;
}

HermitianMatrix HermitianMatrix::outer(std::span<const cdouble> v, double scale) {
    HermitianMatrix m(v.size());
    m.add_outer(scale, v);
    return m;
}

void HermitianMatrix::add_outer(double scale, std::span<const cdouble> v) {
    require_same_dim(v.size(), dim_, "HermitianMatrix::add_outer");
    for (std::size_t i = 0; i < dim_; ++i) {
        a_[i * dim_ + i] += scale * std::norm(v[i]);
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const cdouble x = scale * v[i] * std::conj(v[j]);
            a_[i * dim_ + j] += x;
            a_[j * dim_ + i] += std::conj(x);
        }
    }
}

void HermitianMatrix::add_scaled(double scale, const HermitianMatrix& other) {
    require_same_dim(other.dim_, dim_, "HermitianMatrix::add_scaled");
    kernels::axpy(scale, other.a_, a_);
}

void HermitianMatrix::add_identity(double scale) {
    for (std::size_t i = 0; i < dim_; ++i) a_[i * dim_ + i] += scale;
}

void HermitianMatrix::scale(double s) {
    for (auto& x : a_) x *= s;
}

void HermitianMatrix::set_diagonal(std::size_t i, double value) { a_[i * dim_ + i] = value; }

void HermitianMatrix::set(std::size_t i, std::size_t j, cdouble value) {
    if (i == j) {
        a_[i * dim_ + i] = value.real();
        return;
    }
    a_[i * dim_ + j] = value;
    a_[j * dim_ + i] = std::conj(value);
}

double HermitianMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += a_[i * dim_ + i].real();
    return t;
}

double HermitianMatrix::inner(const HermitianMatrix& other) const {
    require_same_dim(other.dim_, dim_, "HermitianMatrix::inner");
    return kernels::inner_re(a_, other.a_);
}

double HermitianMatrix::frobenius_norm() const { return std::sqrt(kernels::norm_sq(a_)); }

CVector HermitianMatrix::apply(std::span<const cdouble> x) const {
    require_same_dim(x.size(), dim_, "HermitianMatrix::apply");
    CVector y;
    matvec(a_, dim_, x, y);
    return y;
}

double HermitianMatrix::quadratic_form(std::span<const cdouble> x) const {
    const CVector y = apply(x);
    return kernels::dotc(x, y).real();
}

bool HermitianMatrix::is_hermitian(double tol) const noexcept {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            if (std::abs(a_[i * dim_ + j] - std::conj(a_[j * dim_ + i])) > tol) return false;
    return true;
}

double norm(std::span<const cdouble> v) { return std::sqrt(kernels::norm_sq(v)); }

// ---------------------------------------------------------------------------
// Eigen-solves

EigenPair dominant_eigenpair(const HermitianMatrix& m, double tol, int max_iter) {
    const std::size_t n = m.dim();
    if (n == 1) return {m(0, 0).real(), CVector{1.0}, 0};

    const double fro = m.frobenius_norm();
    CVector x(n, cdouble(1.0 / std::sqrt(static_cast<double>(n))));
    if (fro == 0.0) return {0.0, x, 0};

    // Shift so the iteration converges to the algebraically largest
    // eigenvalue even for indefinite input; residuals are shift-free.
    const double shift = std::max(0.0, -gershgorin_lower(m));
    const double target = tol * fro;

    CVector y;
    const auto residual = [&](const CVector& v, double& lambda) {
        matvec(m.data(), n, v, y);
        lambda = kernels::dotc(v, y).real();
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) r2 += std::norm(y[i] - lambda * v[i]);
        return std::sqrt(r2);
    };
    // x <- (m + shift) x / ||.||, reusing y = m x from the residual pass.
    // A start vector in the null space gets one random restart.
    bool restarted = false;
    const auto step = [&](CVector& v) {
        for (std::size_t i = 0; i < n; ++i) y[i] += shift * v[i];
        const double ny = norm(y);
        if (ny > 1e-300 || restarted) {
            if (ny > 1e-300)
                for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / ny;
            return;
        }
        randomize(v);
        restarted = true;
    };

    constexpr int kPlainSteps = 64;
    int it = 0;
    double lambda = 0.0;
    for (; it < std::min(max_iter, kPlainSteps); ++it) {
        if (residual(x, lambda) <= target) return {lambda, x, it};
        step(x);
    }

    // Stagnation: accelerate by repeated squaring of (m + shift I), which
    // is power iteration with exponent 2^j, then polish with plain steps.
    std::vector<cdouble> p(m.data().begin(), m.data().end());
    for (std::size_t i = 0; i < n; ++i) p[i * n + i] += shift;
    for (auto& e : p) e /= fro + shift;
    CVector px;
    for (int sq = 0; sq < 64 && it < max_iter; ++sq, ++it) {
        square_normalized(p, n);
        matvec(p, n, x, px);
        if (!(norm(px) > 1e-12)) {
            // x fell out of the dominant subspace; restart once from noise.
            randomize(x);
            matvec(p, n, x, px);
            if (!(norm(px) > 1e-12)) continue;
        }
        normalize(px);
        if (residual(px, lambda) <= target) return {lambda, px, it + 1};
        x = px;
    }
    for (; it < max_iter; ++it) {
        if (residual(x, lambda) <= target) return {lambda, x, it};
        step(x);
    }
    throw NonConvergence("dominant_eigenpair: residual above " + std::to_string(target) +
                         " after " + std::to_string(max_iter) + " iterations");
}

HermitianEigen hermitian_eigen(const HermitianMatrix& m) {
    const std::size_t n = m.dim();
    Eigen::Map<const RowMajorXcd> a(m.data().data(), static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success)
        throw DecompositionFailure("hermitian_eigen: eigensolver did not converge");
    HermitianEigen out;
    out.values.resize(n);
    out.vectors.resize(n, CVector(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < n; ++i)
            out.vectors[k][i] =
                solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
    return out;
}

double min_eigenvalue(const HermitianMatrix& m) {
    const std::size_t n = m.dim();
    Eigen::Map<const RowMajorXcd> a(m.data().data(), static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw DecompositionFailure("min_eigenvalue: eigensolver did not converge");
    return solver.eigenvalues()(0);
}

HermitianMatrix psd_project(const HermitianMatrix& m) {
    const HermitianEigen eig = hermitian_eigen(m);
    HermitianMatrix out(m.dim());
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        if (eig.values[k] > 0.0) out.add_outer(eig.values[k], eig.vectors[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Positive-definite solve

namespace {

// Lower Cholesky factor, row-major.
std::vector<cdouble> cholesky(const HermitianMatrix& a) {
    const std::size_t n = a.dim();
    std::vector<cdouble> l(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        std::span<const cdouble> lj(l.data() + j * n, j);
        const double d = a(j, j).real() - kernels::norm_sq(lj);
        if (!(d > 0.0))
            throw SingularMatrix("cholesky: non-positive pivot at column " +
                                 std::to_string(j));
        const double ljj = std::sqrt(d);
        l[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            std::span<const cdouble> li(l.data() + i * n, j);
            l[i * n + j] = (a(i, j) - kernels::dotc(lj, li)) / ljj;
        }
    }
    return l;
}

CVector cholesky_solve(const std::vector<cdouble>& l, std::size_t n, std::span<const cdouble> b) {
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const cdouble> li(l.data() + i * n, i);
        y[i] = (b[i] - kernels::dotu(li, std::span<const cdouble>(y.data(), i))) / l[i * n + i].real();
    }
    CVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        cdouble s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l[k * n + ii]) * x[k];
        x[ii] = s / l[ii * n + ii].real();
    }
    return x;
}

}  // namespace

CVector solve_hermitian_pd(const HermitianMatrix& a, std::span<const cdouble> b) {
    const std::size_t n = a.dim();
    require_same_dim(b.size(), n, "solve_hermitian_pd");
    const std::vector<cdouble> l = cholesky(a);
    CVector x = cholesky_solve(l, n, b);
    CVector r = a.apply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const CVector d = cholesky_solve(l, n, r);
    for (std::size_t i = 0; i < n; ++i) x[i] += d[i];
    return x;
}

double log2_det_hpd(const HermitianMatrix& a) {
    const std::size_t n = a.dim();
    const std::vector<cdouble> l = cholesky(a);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += 2.0 * std::log2(l[i * n + i].real());
    return acc;
}

}  // namespace risnoma
