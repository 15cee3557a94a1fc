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

// Overlap models for symmetric ternary pure states and the canonical
// labelling used by every other module.
//
// All vectors live in the eigenbasis {|phi_n>} of the symmetry unitary
// V = diag(1, tau, tau^2). A party's triple is |a_r> = sum_n x_n tau^{rn} |phi_n>
// with x_n > 0, so the triple is fixed by the single overlap K = <a_0|a_1>.

#include <array>

#include "symseq/numerics.hpp"

namespace symseq {

/// Inner product K = <a_0|a_1> of one party's symmetric triple, |K| < 1.
class Overlap {
  public:
    static constexpr double kMaxModulus = 1.0 - 1e-12;

    /// Throws DegenerateStates if |k| >= 1 - 1e-12 or k is not finite.
    explicit Overlap(Complex k);

    Complex value() const { return value_; }
    double modulus() const { return std::abs(value_); }

  private:
    Complex value_;
};

using Permutation = std::array<int, 3>;

struct CanonicalRecord {
    int shift_a = 0;
    int shift_b = 0;
    bool conjugated = false;

    bool is_identity() const { return shift_a == 0 && shift_b == 0 && !conjugated; }
    friend bool operator==(const CanonicalRecord &, const CanonicalRecord &) = default;
};

/// Amplitudes of a bipartite pair in the canonical labelling
/// x0 > x2, x1 >= x2, y0 >= y1 >= y2, y0 > y2 (all within Tolerances::tie).
struct CanonicalPair {
    Real3 x{};
    Real3 y{};
    Permutation upsilon{};
    CanonicalRecord record;
    Complex ka_canon;
    Complex kb_canon;
};

struct StateVectors {
    std::array<Vec3, 3> a;
    std::array<Vec3, 3> b;
};

/// <alpha|beta> for optical coherent states.
Complex coherent_overlap(Complex alpha, Complex beta);

/// Ternary PSK with mean photon number s: K = exp(-3s/2) exp(i sqrt(3) s / 2).
Overlap psk_overlap(double s);

/// Lifted trine states with lift parameter g in (0, 1): K = (3g - 1)/2.
Overlap lifted_trine_overlap(double g);

/// Ternary PPM built from coherent states alpha and beta: K = |<alpha|beta>|^2.
Overlap ppm_overlap(Complex alpha, Complex beta);

/// x_n = sqrt((1 + tau^{2n} K + tau^n K*) / 3). Throws RankDeficient when a
/// radicand is <= tie^2, i.e. the three states do not span three dimensions.
Real3 amplitudes_from_overlap(Complex k);

/// sum_n x_n^2 tau^n, the overlap <a_0|a_1> reconstructed from amplitudes.
Complex overlap_from_amplitudes(const Real3 &x);

/// Joint amplitudes of |Psi_r> = |a_r>|b_r>: tx_n = sqrt(sum_k x_k^2 y_{n-k}^2).
Real3 symmetric_convolution(const Real3 &x, const Real3 &y);

/// [2,1,0] when tx_0 >= tx_2, otherwise [0,2,1].
Permutation upsilon_for(const Real3 &tx);

/// Applies (conjugation, tau^shift) to an overlap.
Complex transform_overlap(Complex k, int shift, bool conjugated);

/// Searches the 18 relabellings in the order (conjugated, shift_a, shift_b)
/// and returns the first one meeting the canonical ordering.
CanonicalPair canonicalize(const Overlap &ka, const Overlap &kb);

StateVectors state_vectors(const CanonicalPair &pair);

/// a_r component n = x_n tau^{rn}.
Vec3 symmetric_state(const Real3 &amplitudes, int r);

}  // namespace symseq
