// Copyright 2026 The symseq Authors
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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "symseq/errors.hpp"

namespace symseq {

using Complex = std::complex<double>;

/// Tolerances shared by every module.
struct Tolerances {
    static constexpr double herm = 1e-12;
    static constexpr double eig = 1e-10;
    static constexpr double psd = 1e-9;
    static constexpr double tie = 1e-9;
    static constexpr double cond = 1e-10;
    static constexpr double clamp = 1e-9;
};

/// tau = exp(2 pi i / 3), the eigenvalue ratio of the symmetry unitary.
inline Complex tau_pow(int k) {
    int m = ((k % 3) + 3) % 3;
    static const std::array<Complex, 3> table = {
        Complex(1.0, 0.0),
        Complex(-0.5, std::numbers::sqrt3 / 2.0),
        Complex(-0.5, -std::numbers::sqrt3 / 2.0),
    };
    return table[static_cast<std::size_t>(m)];
}

inline int mod3(int k) { return ((k % 3) + 3) % 3; }

template <std::size_t N>
using Vec = std::array<Complex, N>;

using Vec3 = Vec<3>;
using Real3 = std::array<double, 3>;
using RealMatrix3 = std::array<std::array<double, 3>, 3>;

template <std::size_t N>
double norm(const Vec<N> &v) {
    double s = 0.0;
    for (const auto &c : v) s += std::norm(c);
    return std::sqrt(s);
}

template <std::size_t N>
Vec<N> normalized(Vec<N> v) {
    double n = norm(v);
    if (n == 0.0) throw Error(ErrorCode::ZeroOperator, "cannot normalize a zero vector");
    for (auto &c : v) c /= n;
    return v;
}

/// <u|v>, antilinear in the first argument.
template <std::size_t N>
Complex inner(const Vec<N> &u, const Vec<N> &v) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

template <std::size_t N, std::size_t M>
Vec<N * M> kron(const Vec<N> &a, const Vec<M> &b) {
    Vec<N * M> out{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < M; ++j) out[i * M + j] = a[i] * b[j];
    return out;
}

/// Dense N x N complex matrix, row-major. Used for operators on H_A, H_B
/// (N = 3) and on H_A (x) H_B (N = 9).
template <std::size_t N>
class Matrix {
  public:
    static constexpr std::size_t dim = N;

    Matrix() : data_{} {}

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::array<double, N> &d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    /// |u><v|
    static Matrix outer(const Vec<N> &u, const Vec<N> &v) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = u[i] * std::conj(v[j]);
        return m;
    }

    static Matrix projector(const Vec<N> &v) { return outer(v, v); }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

    Matrix &operator+=(const Matrix &o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix &operator*=(Complex s) {
        for (auto &c : data_) c *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= Complex(s); }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                Complex aik = a(i, k);
                if (aik == Complex(0.0)) continue;
                for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend Vec<N> operator*(const Matrix &a, const Vec<N> &v) {
        Vec<N> out{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) out[i] += a(i, j) * v[j];
        return out;
    }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto &c : data_) m = std::max(m, std::abs(c));
        return m;
    }

    /// max_ij |H - H^dagger|
    double hermiticity_residual() const { return (*this - adjoint()).max_abs(); }

    bool is_hermitian(double tol = Tolerances::herm) const { return hermiticity_residual() <= tol; }

    /// <u|M|v>
    Complex sandwich(const Vec<N> &u, const Vec<N> &v) const { return inner(u, (*this) * v); }

  private:
    std::array<Complex, N * N> data_;
};

using Operator3 = Matrix<3>;
using Operator9 = Matrix<9>;

template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N> &a, const Matrix<M> &b) {
    Matrix<N * M> out;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            Complex aij = a(i, j);
            if (aij == Complex(0.0)) continue;
            for (std::size_t k = 0; k < M; ++k)
                for (std::size_t l = 0; l < M; ++l) out(i * M + k, j * M + l) = aij * b(k, l);
        }
    return out;
}

template <std::size_t N>
struct EigenDecomposition {
    std::array<double, N> values;   // ascending
    std::array<Vec<N>, N> vectors;  // vectors[i] belongs to values[i]
};

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Deterministic; throws ContractViolation if H is not Hermitian
/// within Tolerances::herm (relative to max(1, |H|_max)).
template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N> &h);

extern template EigenDecomposition<3> hermitian_eigen<3>(const Matrix<3> &);
extern template EigenDecomposition<9> hermitian_eigen<9>(const Matrix<9> &);

/// Smallest eigenvalue of a Hermitian matrix.
template <std::size_t N>
double min_eigenvalue(const Matrix<N> &h) {
    return hermitian_eigen(h).values[0];
}

/// True iff the smallest eigenvalue of H is >= -tol.
template <std::size_t N>
bool psd_check(const Matrix<N> &h, double tol = Tolerances::psd) {
    return min_eigenvalue(h) >= -tol;
}

/// Solves M u = b by Gaussian elimination with partial pivoting. Throws
/// SingularSystem when |det M| < 1e-13 |M|^3 (|M| the max-row-sum norm).
Real3 solve3(const RealMatrix3 &m, const Real3 &b);

}  // namespace symseq
