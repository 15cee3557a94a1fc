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

#include <gtest/gtest.h>

#include "test_util.h"

using namespace symseq;

namespace {

const Complex kFig2 = std::polar(0.2, std::numbers::pi / 10);

double dist(const SPlanePoint &a, const SPlanePoint &b) { return std::hypot(a.u - b.u, a.v - b.v); }

}  // namespace

TEST(splane, symmetrize) {
    Operator3 d = Operator3::diagonal({0.2, 0.5, 0.3});
    EXPECT_LT((symmetrize(d) - d).max_abs(), 1e-16);
    EXPECT_LT((symmetrize(Operator3::identity()) - Operator3::identity()).max_abs(), 1e-16);

    Real3 x = amplitudes_from_overlap(std::polar(0.3, 0.7));
    Operator3 s = symmetrize(Operator3::projector(symmetric_state(x, 0)));
    EXPECT_LT((s - Operator3::diagonal({x[0] * x[0], x[1] * x[1], x[2] * x[2]})).max_abs(), 1e-15);

    std::mt19937_64 rng(3);
    auto cols = test::random_unitary_columns<3>(rng);
    Operator3 t = 0.7 * Operator3::projector(cols[0]) + 0.2 * Operator3::projector(cols[1]);
    EXPECT_NEAR(symmetrize(t).trace().real(), t.trace().real(), 1e-12);
}

TEST(splane, s_point_examples) {
    Permutation ups{2, 1, 0};
    SPlanePoint p = s_point(Operator3::identity(), ups);
    EXPECT_NEAR(p.u, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(p.v, 1.0 / 3.0, 1e-15);
    Vec3 e{};
    e[static_cast<std::size_t>(ups[2])] = 1.0;
    p = s_point(Operator3::projector(e), ups);
    EXPECT_EQ(p.u, 0.0);
    EXPECT_EQ(p.v, 0.0);
    EXPECT_THROW(s_point(Operator3{}, ups), Error);

    CanonicalPair pair = canonicalize(Overlap(kFig2), Overlap(kFig2));
    p = s_point(Operator3::projector(normal_vector(pair, label_w1(0))), pair.upsilon);
    double inv[3];
    double tot = 0.0;
    for (std::size_t n = 0; n < 3; ++n) tot += (inv[n] = 1.0 / (pair.x[n] * pair.x[n]));
    EXPECT_NEAR(p.u, inv[pair.upsilon[1]] / tot, 1e-14);
    EXPECT_NEAR(p.v, inv[pair.upsilon[0]] / tot, 1e-14);
}

TEST(splane, fig2_triangle) {
    CanonicalPair pair = canonicalize(Overlap(kFig2), Overlap(kFig2));
    Triangle t = triangle_vertices(pair);
    EXPECT_FALSE(t.degenerate);
    EXPECT_EQ(t.e3.u, 0.0);
    EXPECT_EQ(t.e3.v, 0.0);
    EXPECT_TRUE(identity_membership(pair));
    EXPECT_TRUE(in_triangle(t.e1, t, 1e-12));
    EXPECT_TRUE(in_triangle(t.e2, t, 1e-12));
    EXPECT_FALSE(in_triangle({1.0, 1.0}, t, 1e-9));

    auto curve = curve_C(pair, 100);
    for (const auto &p : curve) EXPECT_TRUE(in_triangle(p, t, 1e-9)) << p.u << " " << p.v;
    EXPECT_LT(dist(curve.back(), t.e2), 1e-10);
    bool origin = false;
    for (const auto &p : curve) origin |= dist(p, {0.0, 0.0}) < 1e-15;
    EXPECT_TRUE(origin);
}

TEST(splane, gamma_endpoints) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Complex ka = test::random_admissible_overlap(rng), kb = test::random_admissible_overlap(rng);
        OptimalityReport r;
        try {
            r = check_global_optimality(Overlap(ka), Overlap(kb));
        } catch (const Error &) {
            continue;
        }
        if (r.branch == Branch::Orthogonal || r.branch == Branch::PositiveRealB) continue;
        const CanonicalPair &pair = *r.pair;
        Triangle t = triangle_vertices(pair);
        EXPECT_LT(dist(s_point(Operator3::projector(gamma_q(pair, -1e8)), pair.upsilon), t.e1), 1e-6);
        EXPECT_LT(dist(s_point(Operator3::projector(gamma_q(pair, r.eta)), pair.upsilon), t.e2), 1e-10);
        EXPECT_NEAR(tc_of(pair, r.eta), tc_limit(pair), 1e-8);
        EXPECT_NEAR(tc_of(pair, -1e4), tc_limit(pair), 1e-3);
    }
}

TEST(splane, degenerate_triangle_for_negative_real_b) {
    CanonicalPair pair = canonicalize(Overlap(std::polar(0.3, 0.4)), Overlap(-0.2));
    EXPECT_NEAR(pair.y[0], pair.y[1], 1e-12);
    Triangle t = triangle_vertices(pair);
    EXPECT_TRUE(t.degenerate);
    EXPECT_TRUE(in_triangle(t.e1, t, 1e-12));
    EXPECT_TRUE(in_triangle({0.5 * t.e1.u, 0.5 * t.e1.v}, t, 1e-12));
    EXPECT_FALSE(in_triangle({0.5 * t.e1.u + 0.01, 0.5 * t.e1.v}, t, 1e-9));
}

TEST(splane, membership_matches_verdict) {
    CanonicalPair neg = canonicalize(Overlap(-0.2), Overlap(-0.2));
    EXPECT_FALSE(identity_membership(neg));
    int compared = 0;
    for (const auto &[ka, kb] : test::random_pairs(3000, 41)) {
        OptimalityReport r;
        try {
            r = check_global_optimality(Overlap(ka), Overlap(kb));
        } catch (const Error &) {
            continue;
        }
        if (r.branch == Branch::Orthogonal || r.branch == Branch::PositiveRealB) continue;
        if (std::abs(r.c1) < 1e-7 || std::abs(r.c2) < 1e-7) continue;
        ++compared;
        EXPECT_EQ(identity_membership(*r.pair), r.verdict) << ka << " " << kb;
    }
    EXPECT_GT(compared, 2000);
}

TEST(splane, u_ordering) {
    CanonicalPair pair = canonicalize(Overlap(kFig2), Overlap(std::polar(0.5, -2.0)));
    for (double q : curve_parameters(pair, 200)) {
        if (std::abs(q - pair.y[2] * pair.y[2]) < 1e-10) continue;
        Real3 u = u_values(pair, q);
        EXPECT_LE(u[0] * u[0], u[1] * u[1] * (1 + 1e-12));
        EXPECT_LE(u[1] * u[1], u[2] * u[2] * (1 + 1e-12));
    }
}
