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

#include "symseq/numerics.hpp"

#include <numeric>
#include <sstream>

namespace symseq {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ContractViolation: return "ContractViolation";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::DegenerateStates: return "DegenerateStates";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::NoCanonicalForm: return "NoCanonicalForm";
        case ErrorCode::NotGloballyOptimal: return "NotGloballyOptimal";
        case ErrorCode::CertificateViolation: return "CertificateViolation";
        case ErrorCode::InvalidPovm: return "InvalidPovm";
        case ErrorCode::ZeroOperator: return "ZeroOperator";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

constexpr int kMaxSweeps = 64;

template <std::size_t N>
double off_diagonal_norm2(const Matrix<N> &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

}  // namespace

template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N> &h) {
    double scale = std::max(1.0, h.max_abs());
    double herm = h.hermiticity_residual();
    if (!(herm <= Tolerances::herm * scale)) {
        std::ostringstream os;
        os << "hermitian_eigen: matrix is not Hermitian (residual " << herm << ")";
        throw Error(ErrorCode::ContractViolation, os.str());
    }

    // Work on the exactly Hermitian part.
    Matrix<N> a = 0.5 * (h + h.adjoint());
    Matrix<N> v = Matrix<N>::identity();

    double total = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) total += std::norm(a(i, j));
    const double stop = 1e-30 * std::max(total, 1e-300);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                Complex apq = a(p, q);
                double mag = std::abs(apq);
                if (mag == 0.0) continue;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                // Phase e^{-i phi} on column q makes a(p,q) real and positive,
                // then a real Jacobi rotation annihilates it.
                Complex phase = std::conj(apq) / mag;
                double theta = (aqq - app) / (2.0 * mag);
                double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                // U restricted to (p, q): [[c, s], [-s*phase, c*phase]]
                const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

                for (std::size_t k = 0; k < N; ++k) {  // A <- A U
                    Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < N; ++k) {  // A <- U^dagger A
                    Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < N; ++k) {  // V <- V U
                    Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t col = order[k];
        out.values[k] = a(col, col).real();
        for (std::size_t i = 0; i < N; ++i) out.vectors[k][i] = v(i, col);
    }
    return out;
}

template EigenDecomposition<3> hermitian_eigen<3>(const Matrix<3> &);
template EigenDecomposition<9> hermitian_eigen<9>(const Matrix<9> &);

Real3 solve3(const RealMatrix3 &m, const Real3 &b) {
    double norm_inf = 0.0;
    for (const auto &row : m) norm_inf = std::max(norm_inf, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (!(std::abs(det) >= 1e-13 * norm_inf * norm_inf * norm_inf) || norm_inf == 0.0) {
        std::ostringstream os;
        os << "solve3: singular system (|det| = " << std::abs(det) << ")";
        throw Error(ErrorCode::SingularSystem, os.str());
    }

    RealMatrix3 a = m;
    Real3 r = b;
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        std::swap(a[col], a[piv]);
        std::swap(r[col], r[piv]);
        for (int row = col + 1; row < 3; ++row) {
            double f = a[row][col] / a[col][col];
            for (int k = col; k < 3; ++k) a[row][k] -= f * a[col][k];
            r[row] -= f * r[col];
        }
    }
    Real3 u{};
    for (int row = 2; row >= 0; --row) {
        double s = r[row];
        for (int k = row + 1; k < 3; ++k) s -= a[row][k] * u[k];
        u[row] = s / a[row][row];
    }
    return u;
}

}  // namespace symseq
