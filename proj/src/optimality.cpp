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

#include "symseq/optimality.hpp"

#include <algorithm>
#include <tuple>

namespace symseq {

std::string_view branch_name(Branch b) {
    switch (b) {
        case Branch::Orthogonal: return "Orthogonal";
        case Branch::PositiveRealB: return "PositiveRealB";
        case Branch::PositiveRealA: return "PositiveRealA";
        case Branch::Inequality: return "Inequality";
        case Branch::Fails: return "Fails";
    }
    return "Fails";
}

std::optional<Branch> branch_from_name(std::string_view name) {
    for (Branch b : {Branch::Orthogonal, Branch::PositiveRealB, Branch::PositiveRealA, Branch::Inequality,
                     Branch::Fails}) {
        if (branch_name(b) == name) return b;
    }
    return std::nullopt;
}

double eta_of(const Overlap &kb) { return (1.0 - kb.modulus()) / 3.0; }

double eta_of(const CanonicalPair &pair) { return (1.0 - std::abs(pair.kb_canon)) / 3.0; }

Real3 z_values(const CanonicalPair &pair) {
    double eta = eta_of(pair);
    Real3 z{};
    for (std::size_t k = 0; k < 3; ++k) z[k] = pair.y[k] * pair.y[k] - eta;
    return z;
}

JointAmplitudes joint_amplitudes(const CanonicalPair &pair) {
    JointAmplitudes j;
    j.tx = symmetric_convolution(pair.x, pair.y);
    j.upsilon = upsilon_for(j.tx);
    return j;
}

double global_optimum(const CanonicalPair &pair) {
    JointAmplitudes j = joint_amplitudes(pair);
    double t = j.tx[static_cast<std::size_t>(j.upsilon[0])];
    return 3.0 * t * t;
}

std::pair<double, double> condition_values(const CanonicalPair &pair) {
    const Real3 &x = pair.x;
    Real3 z = z_values(pair);
    double c1 = x[2] * z[0] - x[1] * z[1];
    double c2 = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        double a = z[static_cast<std::size_t>(kOneMinus[k])];
        double b = z[static_cast<std::size_t>(kThreeMinus[k])];
        c2 += x[k] * x[k] * (1.0 / (a * a) - 1.0 / (b * b));
    }
    return {c1, c2};
}

OptimalityReport check_global_optimality(const Overlap &ka, const Overlap &kb) {
    OptimalityReport report;
    report.eta = eta_of(kb);

    if (ka.modulus() < Tolerances::tie || kb.modulus() < Tolerances::tie) {
        // Perfect discrimination; both overlaps must still describe spanning triples.
        amplitudes_from_overlap(ka.value());
        amplitudes_from_overlap(kb.value());
        report.branch = Branch::Orthogonal;
        report.verdict = true;
        report.p_global = 1.0;
        return report;
    }

    CanonicalPair pair = canonicalize(ka, kb);
    JointAmplitudes j = joint_amplitudes(pair);
    report.tx = j.tx;
    report.upsilon = j.upsilon;
    report.z = z_values(pair);
    report.p_global = global_optimum(pair);
    std::tie(report.c1, report.c2) = condition_values(pair);
    report.pair = pair;

    if (pair.y[1] - pair.y[2] <= Tolerances::tie) {
        report.branch = Branch::PositiveRealB;
        report.verdict = true;
    } else if (pair.x[1] - pair.x[2] <= Tolerances::tie) {
        report.branch = Branch::PositiveRealA;
        report.verdict = true;
    } else if (report.c1 >= -Tolerances::cond && report.c2 >= -Tolerances::cond) {
        report.branch = Branch::Inequality;
        report.verdict = true;
    } else {
        report.branch = Branch::Fails;
        report.verdict = false;
    }
    return report;
}

}  // namespace symseq
