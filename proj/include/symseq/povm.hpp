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

// Construction and verification of the optimal sequential measurement.
//
// Alice measures first and announces one of seven labels:
//   w1_j  "the state is j"            Bob: always answers j
//   w2_j  "the state is not j"        Bob: binary unambiguous on b_{j+1}, b_{j+2}
//   w3    "no information"            Bob: ternary unambiguous on all b_r
// Flattening gives Pi_r = sum_w alice(w) (x) bob(w)_r on H_A (x) H_B, with
// Pi_3 the inconclusive outcome.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symseq/optimality.hpp"

namespace symseq {

template <std::size_t N>
struct Povm {
    std::vector<Matrix<N>> outcomes;  // last outcome is inconclusive
    std::vector<std::string> labels;

    std::size_t size() const { return outcomes.size(); }
};

using Povm3 = Povm<3>;
using Povm9 = Povm<9>;

inline constexpr std::size_t kNumLabels = 7;

/// Index of w1_j, w2_j and w3 in the seven-label arrays.
constexpr std::size_t label_w1(int j) { return static_cast<std::size_t>(j); }
constexpr std::size_t label_w2(int j) { return 3 + static_cast<std::size_t>(j); }
inline constexpr std::size_t kLabelW3 = 6;

std::string_view label_name(std::size_t label);

struct SequentialMeasurement {
    std::array<Operator3, kNumLabels> alice;
    std::array<Povm3, kNumLabels> bob;
    /// Solution (u1, u2, u3) of the completeness system; u1 = 3 kappa_w1 |C1|^2 etc.
    Real3 kappa{};
    /// Construction actually used: Inequality/PositiveRealA for the generic
    /// construction, PositiveRealB for independent optimal measurements,
    /// Orthogonal for the trivial perfect measurement.
    Branch branch = Branch::Inequality;
    /// Amplitudes the construction was built from. For Orthogonal this is the
    /// unrelabelled pair, which need not satisfy the canonical ordering.
    CanonicalPair pair;
};

template <std::size_t N>
struct PovmResiduals {
    double min_eigenvalue = 0.0;  // smallest eigenvalue over all outcomes
    double completeness = 0.0;    // max |sum - identity|
    double hermiticity = 0.0;
};

struct UnambiguityReport {
    double success = 0.0;
    double error_residual = 0.0;  // max_{k != r} |<Psi_r|Pi_k|Psi_r>|
};

struct LabelCertificate {
    bool evaluated = false;
    double psd_margin = 0.0;        // min eigenvalue of G(w) on K_w
    double kernel_residual = 0.0;   // |P G(w) alice(w)|_max
    double support_residual = 0.0;  // max_{r not in T_w} <a_r|alice(w)|a_r>
    int kernel_dimension = -1;      // -1 when not checked
    double pi_residual = 0.0;       // |P G(w) pi_w| for the closed-form normal vector
    bool passed = true;
};

struct CertificateReport {
    std::array<LabelCertificate, kNumLabels> labels{};
    double alice_completeness = 0.0;
    double alice_min_eigenvalue = 0.0;
    double completeness = 0.0;
    double min_eigenvalue = 0.0;
    double unambiguity_residual = 0.0;
    double success = 0.0;
    double global_optimum = 0.0;
    double consistency = 0.0;  // |Pi - flatten(alice, bob)|_max, when a Pi is supplied
    bool passed = true;
    std::string failure;
};

/// Optimal unambiguous measurement for two equiprobable pure states.
/// Outcomes: detect-u, detect-v, inconclusive.
Povm3 binary_unambiguous(const Vec3 &u, const Vec3 &v);

/// Equal-probability measurement for the states sum_n w_n tau^{rn}|n>.
/// Outcomes 0..2 identify state r, outcome 3 is inconclusive.
Povm3 ternary_unambiguous(const Real3 &w);

/// Closed-form normal vector of label w (unnormalized).
Vec3 normal_vector(const CanonicalPair &pair, std::size_t label);

/// Completeness system for (u1, u2, u3), rows n = upsilon_k.
RealMatrix3 completeness_matrix(const CanonicalPair &pair);

/// Solves the completeness system (row- and column-equilibrated). Throws SingularSystem.
Real3 solve_kappa(const CanonicalPair &pair);

/// Requires a globally optimal pair; throws NotGloballyOptimal otherwise.
SequentialMeasurement build_sequential(const CanonicalPair &pair);

/// Perfect measurement when either overlap vanishes.
SequentialMeasurement build_perfect(const Overlap &ka, const Overlap &kb);

/// Decides and builds; throws NotGloballyOptimal when the verdict is false.
SequentialMeasurement construct(const Overlap &ka, const Overlap &kb);

Povm9 flatten(const SequentialMeasurement &seq);

template <std::size_t N>
PovmResiduals<N> verify_povm(const Povm<N> &p);

extern template PovmResiduals<3> verify_povm<3>(const Povm<3> &);
extern template PovmResiduals<9> verify_povm<9>(const Povm<9> &);

/// |Psi_r> = |a_r>|b_r>.
std::array<Vec<9>, 3> joint_states(const CanonicalPair &pair);

UnambiguityReport verify_unambiguous(const Povm9 &p, const std::array<Vec<9>, 3> &states, const Real3 &priors);

/// Computes every certificate quantity without throwing. `flattened` is the
/// POVM to check against the sequential description; pass nullptr to use
/// flatten(seq).
CertificateReport evaluate_certificate(const SequentialMeasurement &seq, const Povm9 *flattened = nullptr);

/// Same as evaluate_certificate, but throws CertificateViolation naming the
/// failing label and margin.
CertificateReport dual_certificate(const CanonicalPair &pair, const SequentialMeasurement &seq);

/// Born-rule multinomial sampling of `shots` outcomes. Deterministic in seed.
template <std::size_t N>
std::vector<std::uint64_t> sample_outcomes(const Povm<N> &p, const Vec<N> &state, std::uint64_t shots,
                                           std::uint64_t seed);

extern template std::vector<std::uint64_t> sample_outcomes<3>(const Povm<3> &, const Vec<3> &, std::uint64_t,
                                                              std::uint64_t);
extern template std::vector<std::uint64_t> sample_outcomes<9>(const Povm<9> &, const Vec<9> &, std::uint64_t,
                                                              std::uint64_t);

}  // namespace symseq
