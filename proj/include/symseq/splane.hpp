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

// S-plane geometry. An operator T on H_A is mapped to the diagonal of its
// symmetrization, normalized to unit trace, and drawn at (s_{v1}, s_{v0}).

#include <vector>

#include "symseq/povm.hpp"

namespace symseq {

struct SPlanePoint {
    double u = 0.0;  // s_{upsilon_1}
    double v = 0.0;  // s_{upsilon_0}
};

struct Triangle {
    SPlanePoint e1;
    SPlanePoint e2;
    SPlanePoint e3;
    bool degenerate = false;
};

/// (1/3) sum_k V^k T V^k^dagger with V = diag(1, tau, tau^2).
Operator3 symmetrize(const Operator3 &t);

/// Throws ZeroOperator when the trace is below 1e-14.
SPlanePoint s_point(const Operator3 &t, const Permutation &upsilon);

Triangle triangle_vertices(const CanonicalPair &pair);

/// Unit vector gamma_q for q <= eta.
Vec3 gamma_q(const CanonicalPair &pair, double q);

/// q = eta - (1/t - 1) for t = i/samples, i = 1..samples, with q = y2^2
/// inserted at its place in the ordering.
std::vector<double> curve_parameters(const CanonicalPair &pair, int samples);

std::vector<SPlanePoint> curve_C(const CanonicalPair &pair, int samples);

bool in_triangle(const SPlanePoint &p, const Triangle &t, double tol);

bool identity_membership(const CanonicalPair &pair, double tol = 1e-9);

/// u_n(q) = 1/(y_n^2 - q).
Real3 u_values(const CanonicalPair &pair, double q);

/// (u1^2 - u0^2)/(u2^2 - u0^2).
double tc_of(const CanonicalPair &pair, double q);

/// Limit of tc_of for q -> -infinity: (y0^2 - y1^2)/(y0^2 - y2^2).
double tc_limit(const CanonicalPair &pair);

}  // namespace symseq
