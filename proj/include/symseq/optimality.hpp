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

// Decision procedure: can a one-way (Alice -> Bob) sequential measurement
// reach the globally optimal unambiguous success probability for the states
// |Psi_r> = |a_r>|b_r>?

#include <optional>
#include <string_view>

#include "symseq/states.hpp"

namespace symseq {

enum class Branch {
    Orthogonal,     // one party's states are mutually orthogonal
    PositiveRealB,  // y1 = y2, i.e. K_B is positive real
    PositiveRealA,  // x1 = x2, i.e. K_A is positive real
    Inequality,     // both closed-form inequalities hold
    Fails,
};

std::string_view branch_name(Branch b);
std::optional<Branch> branch_from_name(std::string_view name);

struct JointAmplitudes {
    Real3 tx{};
    Permutation upsilon{};
};

struct OptimalityReport {
    double eta = 0.0;
    Real3 z{};
    Real3 tx{};
    Permutation upsilon{};
    double p_global = 1.0;
    bool verdict = true;
    Branch branch = Branch::Orthogonal;
    double c1 = 0.0;
    double c2 = 0.0;
    /// Empty for the Orthogonal branch (no canonical form is computed there).
    std::optional<CanonicalPair> pair;
};

/// Mod-3 subtraction tables used by the second inequality.
inline constexpr std::array<int, 3> kOneMinus = {1, 0, 2};    // 1 - k
inline constexpr std::array<int, 3> kThreeMinus = {0, 2, 1};  // 3 - k

/// eta = (1 - |K_B|)/3; 3 eta is Bob's binary unambiguous success probability.
double eta_of(const Overlap &kb);
double eta_of(const CanonicalPair &pair);

/// z_k = y_k^2 - eta.
Real3 z_values(const CanonicalPair &pair);

JointAmplitudes joint_amplitudes(const CanonicalPair &pair);

/// 3 (min_n tx_n)^2: optimal unambiguous success probability with equal priors.
double global_optimum(const CanonicalPair &pair);

/// c1 = x2 z0 - x1 z1 and c2 = sum_k x_k^2 (z_{1-k}^{-2} - z_{3-k}^{-2}).
std::pair<double, double> condition_values(const CanonicalPair &pair);

OptimalityReport check_global_optimality(const Overlap &ka, const Overlap &kb);

}  // namespace symseq
