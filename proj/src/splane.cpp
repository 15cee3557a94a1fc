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

#include "symseq/splane.hpp"

#include <algorithm>

namespace symseq {

Operator3 symmetrize(const Operator3 &t) {
    Operator3 out;
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                out(i, j) += t(i, j) * tau_pow(k * (static_cast<int>(i) - static_cast<int>(j)));
    }
    return (1.0 / 3.0) * out;
}

SPlanePoint s_point(const Operator3 &t, const Permutation &upsilon) {
    Operator3 s = symmetrize(t);
    double tr = s.trace().real();
    if (!(tr >= 1e-14)) throw Error(ErrorCode::ZeroOperator, "s_point: operator has zero trace");
    return {s(static_cast<std::size_t>(upsilon[1]), static_cast<std::size_t>(upsilon[1])).real() / tr,
            s(static_cast<std::size_t>(upsilon[0]), static_cast<std::size_t>(upsilon[0])).real() / tr};
}

Triangle triangle_vertices(const CanonicalPair &pair) {
    Triangle t;
    t.e1 = s_point(Operator3::projector(normal_vector(pair, label_w1(0))), pair.upsilon);
    t.e2 = s_point(Operator3::projector(normal_vector(pair, label_w2(0))), pair.upsilon);
    t.e3 = {0.0, 0.0};
    double cross = t.e1.u * t.e2.v - t.e1.v * t.e2.u;
    t.degenerate = std::abs(cross) <= 1e-10;
    return t;
}

Vec3 gamma_q(const CanonicalPair &pair, double q) {
    Vec3 g{};
    double y2sq = pair.y[2] * pair.y[2];
    if (std::abs(q - y2sq) <= 1e-10) {
        g[static_cast<std::size_t>(pair.upsilon[2])] = 1.0;
        return g;
    }
    for (std::size_t n = 0; n < 3; ++n) {
        double yv = pair.y[static_cast<std::size_t>(pair.upsilon[n])];
        g[n] = 1.0 / (pair.x[n] * (yv * yv - q));
    }
    return normalized(g);
}

std::vector<double> curve_parameters(const CanonicalPair &pair, int samples) {
    if (samples < 2) throw Error(ErrorCode::DomainError, "curve_C: samples must be >= 2");
    double eta = eta_of(pair);
    double y2sq = pair.y[2] * pair.y[2];
    std::vector<double> qs;
    bool inserted = false;
    for (int i = 1; i <= samples; ++i) {
        double t = static_cast<double>(i) / samples;
        double q = eta - (1.0 / t - 1.0);
        if (!inserted && q >= y2sq) {
            if (std::abs(q - y2sq) > 1e-10) qs.push_back(y2sq);
            inserted = true;
        }
        qs.push_back(q);
    }
    if (!inserted) qs.push_back(y2sq);
    return qs;
}

std::vector<SPlanePoint> curve_C(const CanonicalPair &pair, int samples) {
    std::vector<SPlanePoint> pts;
    for (double q : curve_parameters(pair, samples))
        pts.push_back(s_point(Operator3::projector(gamma_q(pair, q)), pair.upsilon));
    return pts;
}

bool in_triangle(const SPlanePoint &p, const Triangle &t, double tol) {
    if (t.degenerate) {
        // Segment e3 = (0,0) to e1.
        double len2 = t.e1.u * t.e1.u + t.e1.v * t.e1.v;
        if (len2 == 0.0) return std::hypot(p.u, p.v) <= tol;
        double s = (p.u * t.e1.u + p.v * t.e1.v) / len2;
        double du = p.u - s * t.e1.u;
        double dv = p.v - s * t.e1.v;
        return s >= -tol && s <= 1.0 + tol && std::hypot(du, dv) <= tol;
    }
    double a11 = t.e1.u - t.e3.u, a12 = t.e2.u - t.e3.u;
    double a21 = t.e1.v - t.e3.v, a22 = t.e2.v - t.e3.v;
    double bu = p.u - t.e3.u, bv = p.v - t.e3.v;
    double det = a11 * a22 - a12 * a21;
    double w1 = (bu * a22 - a12 * bv) / det;
    double w2 = (a11 * bv - a21 * bu) / det;
    double w3 = 1.0 - w1 - w2;
    return w1 >= -tol && w2 >= -tol && w3 >= -tol;
}

bool identity_membership(const CanonicalPair &pair, double tol) {
    return in_triangle({1.0 / 3.0, 1.0 / 3.0}, triangle_vertices(pair), tol);
}

Real3 u_values(const CanonicalPair &pair, double q) {
    Real3 u{};
    for (std::size_t n = 0; n < 3; ++n) u[n] = 1.0 / (pair.y[n] * pair.y[n] - q);
    return u;
}

double tc_of(const CanonicalPair &pair, double q) {
    Real3 u = u_values(pair, q);
    return (u[1] * u[1] - u[0] * u[0]) / (u[2] * u[2] - u[0] * u[0]);
}

double tc_limit(const CanonicalPair &pair) {
    double y0 = pair.y[0] * pair.y[0], y1 = pair.y[1] * pair.y[1], y2 = pair.y[2] * pair.y[2];
    return (y0 - y1) / (y0 - y2);
}

}  // namespace symseq
