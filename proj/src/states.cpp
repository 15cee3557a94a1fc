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

#include "symseq/states.hpp"

#include <sstream>

namespace symseq {

Overlap::Overlap(Complex k) : value_(k) {
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) {
        throw Error(ErrorCode::DomainError, "overlap must be finite");
    }
    if (std::abs(k) >= kMaxModulus) {
        std::ostringstream os;
        os << "overlap modulus " << std::abs(k) << " is not < 1";
        throw Error(ErrorCode::DegenerateStates, os.str());
    }
}

Complex coherent_overlap(Complex alpha, Complex beta) {
    return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(alpha) * beta);
}

Overlap psk_overlap(double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorCode::DomainError, "psk_overlap: S must be >= 0");
    if (s == 0.0) throw Error(ErrorCode::DegenerateStates, "psk_overlap: S = 0 gives identical states");
    return Overlap(std::polar(std::exp(-1.5 * s), std::numbers::sqrt3 / 2.0 * s));
}

Overlap lifted_trine_overlap(double g) {
    if (!(g > 0.0 && g < 1.0)) {
        std::ostringstream os;
        os << "lifted_trine_overlap: g = " << g << " is outside (0, 1)";
        throw Error(ErrorCode::DomainError, os.str());
    }
    return Overlap(Complex((3.0 * g - 1.0) / 2.0, 0.0));
}

Overlap ppm_overlap(Complex alpha, Complex beta) {
    if (alpha == beta) throw Error(ErrorCode::DegenerateStates, "ppm_overlap: alpha == beta");
    // |<alpha|beta>|^2 <beta|beta> = exp(-|alpha - beta|^2)
    return Overlap(Complex(std::exp(-std::norm(alpha - beta)), 0.0));
}

Real3 amplitudes_from_overlap(Complex k) {
    Real3 x{};
    for (int n = 0; n < 3; ++n) {
        double radicand = (1.0 + tau_pow(2 * n) * k + tau_pow(n) * std::conj(k)).real() / 3.0;
        if (!(radicand > Tolerances::tie * Tolerances::tie)) {
            std::ostringstream os;
            os << "overlap (" << k.real() << ", " << k.imag()
               << ") does not give three linearly independent states (radicand " << radicand << ")";
            throw Error(ErrorCode::RankDeficient, os.str());
        }
        x[static_cast<std::size_t>(n)] = std::sqrt(radicand);
    }
    return x;
}

Complex overlap_from_amplitudes(const Real3 &x) {
    Complex k = 0.0;
    for (int n = 0; n < 3; ++n) k += x[static_cast<std::size_t>(n)] * x[static_cast<std::size_t>(n)] * tau_pow(n);
    return k;
}

Real3 symmetric_convolution(const Real3 &x, const Real3 &y) {
    Real3 tx{};
    for (int n = 0; n < 3; ++n) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) {
            double xk = x[static_cast<std::size_t>(k)];
            double yv = y[static_cast<std::size_t>(mod3(n - k))];
            s += xk * xk * yv * yv;
        }
        tx[static_cast<std::size_t>(n)] = std::sqrt(s);
    }
    return tx;
}

Permutation upsilon_for(const Real3 &tx) {
    if (tx[0] >= tx[2]) return {2, 1, 0};
    return {0, 2, 1};
}

Complex transform_overlap(Complex k, int shift, bool conjugated) {
    Complex base = conjugated ? std::conj(k) : k;
    return tau_pow(shift) * base;
}

namespace {

bool is_canonical(const Real3 &x, const Real3 &y) {
    constexpr double eps = Tolerances::tie;
    return x[0] - x[2] > eps && x[1] - x[2] >= -eps && y[0] - y[1] >= -eps && y[1] - y[2] >= -eps &&
           y[0] - y[2] > eps;
}

}  // namespace

CanonicalPair canonicalize(const Overlap &ka, const Overlap &kb) {
    // Admissibility does not depend on the relabelling; surface it first.
    amplitudes_from_overlap(ka.value());
    amplitudes_from_overlap(kb.value());

    for (bool conjugated : {false, true}) {
        for (int shift_a = 0; shift_a < 3; ++shift_a) {
            Complex ka_t = transform_overlap(ka.value(), shift_a, conjugated);
            Real3 x = amplitudes_from_overlap(ka_t);
            for (int shift_b = 0; shift_b < 3; ++shift_b) {
                Complex kb_t = transform_overlap(kb.value(), shift_b, conjugated);
                Real3 y = amplitudes_from_overlap(kb_t);
                if (!is_canonical(x, y)) continue;
                CanonicalPair pair;
                pair.x = x;
                pair.y = y;
                pair.upsilon = upsilon_for(symmetric_convolution(x, y));
                pair.record = {shift_a, shift_b, conjugated};
                pair.ka_canon = ka_t;
                pair.kb_canon = kb_t;
                return pair;
            }
        }
    }
    std::ostringstream os;
    os << "no relabelling of K_A = (" << ka.value().real() << ", " << ka.value().imag() << "), K_B = ("
       << kb.value().real() << ", " << kb.value().imag() << ") satisfies the canonical ordering";
    throw Error(ErrorCode::NoCanonicalForm, os.str());
}

Vec3 symmetric_state(const Real3 &amplitudes, int r) {
    Vec3 v{};
    for (int n = 0; n < 3; ++n) v[static_cast<std::size_t>(n)] = amplitudes[static_cast<std::size_t>(n)] * tau_pow(r * n);
    return v;
}

StateVectors state_vectors(const CanonicalPair &pair) {
    StateVectors sv;
    for (int r = 0; r < 3; ++r) {
        sv.a[static_cast<std::size_t>(r)] = symmetric_state(pair.x, r);
        sv.b[static_cast<std::size_t>(r)] = symmetric_state(pair.y, r);
    }
    return sv;
}

}  // namespace symseq
