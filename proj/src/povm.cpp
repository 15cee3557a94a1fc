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

#include "symseq/povm.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace symseq {

namespace {

constexpr double kCompletenessTol = 1e-10;
constexpr double kPsdMarginTol = 1e-12;
constexpr double kUnambiguityTol = 1e-10;
constexpr double kSuccessTol = 1e-10;
constexpr double kKernelTol = 1e-8;

std::size_t idx(int k) { return static_cast<std::size_t>(mod3(k)); }

/// T_w together with the Bob success probability divided by 3 for each r in T_w.
struct LabelTargets {
    std::array<bool, 3> in_target{};
    Real3 mu{};
};

LabelTargets label_targets(const CanonicalPair &pair, std::size_t label) {
    LabelTargets t;
    if (label < 3) {
        int j = static_cast<int>(label);
        t.in_target[idx(j)] = true;
        t.mu[idx(j)] = 1.0 / 3.0;
    } else if (label < 6) {
        int j = static_cast<int>(label) - 3;
        double eta = eta_of(pair);
        t.in_target[idx(j + 1)] = t.in_target[idx(j + 2)] = true;
        t.mu[idx(j + 1)] = t.mu[idx(j + 2)] = eta;
    } else {
        double y2sq = pair.y[2] * pair.y[2];
        t.in_target = {true, true, true};
        t.mu = {y2sq, y2sq, y2sq};
    }
    return t;
}

/// Orthonormal basis of the orthogonal complement of span(excluded).
std::vector<Vec3> complement_basis(const std::vector<Vec3> &excluded) {
    std::vector<Vec3> basis;
    for (const auto &e : excluded) {
        Vec3 v = e;
        for (const auto &b : basis) {
            Complex c = inner(b, v);
            for (std::size_t i = 0; i < 3; ++i) v[i] -= c * b[i];
        }
        if (norm(v) > 1e-12) basis.push_back(normalized(v));
    }
    std::size_t span_dim = basis.size();
    std::vector<Vec3> out;
    for (std::size_t k = 0; k < 3 && basis.size() < 3; ++k) {
        Vec3 v{};
        v[k] = 1.0;
        for (const auto &b : basis) {
            Complex c = inner(b, v);
            for (std::size_t i = 0; i < 3; ++i) v[i] -= c * b[i];
        }
        if (norm(v) > 0.1) {
            Vec3 u = normalized(v);
            basis.push_back(u);
            out.push_back(u);
        }
    }
    // Gram-Schmidt against the standard basis can pick vectors with small
    // residuals first; re-orthogonalize the complement once more.
    std::vector<Vec3> clean;
    for (auto v : out) {
        for (std::size_t k = 0; k < span_dim; ++k) {
            Complex c = inner(basis[k], v);
            for (std::size_t i = 0; i < 3; ++i) v[i] -= c * basis[k][i];
        }
        for (const auto &b : clean) {
            Complex c = inner(b, v);
            for (std::size_t i = 0; i < 3; ++i) v[i] -= c * b[i];
        }
        clean.push_back(normalized(v));
    }
    return clean;
}

/// Eigenvalues (ascending) of Q^dagger G Q for an orthonormal set Q.
std::vector<double> compressed_eigenvalues(const Operator3 &g, const std::vector<Vec3> &q) {
    const std::size_t d = q.size();
    if (d == 0) return {};
    Operator3 c;
    double pad = 10.0 * (1.0 + g.max_abs());
    for (std::size_t i = 0; i < 3; ++i) c(i, i) = pad;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) c(i, j) = g.sandwich(q[i], q[j]);
    c = 0.5 * (c + c.adjoint());
    auto eig = hermitian_eigen(c);
    return std::vector<double>(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(d));
}

Operator3 dual_operator(const CanonicalPair &pair) {
    Real3 d{};
    for (std::size_t n = 0; n < 3; ++n) {
        double yv = pair.y[static_cast<std::size_t>(pair.upsilon[n])];
        d[n] = 3.0 * pair.x[n] * pair.x[n] * yv * yv;
    }
    return Operator3::diagonal(d);
}

Povm3 always_returns(int j) {
    Povm3 p;
    for (int r = 0; r < 4; ++r) {
        p.outcomes.push_back(r == j ? Operator3::identity() : Operator3{});
        p.labels.push_back(r == 3 ? "inconclusive" : std::to_string(r));
    }
    return p;
}

Povm3 filter_out(const Real3 &y, int j) {
    Vec3 b1 = symmetric_state(y, j + 1);
    Vec3 b2 = symmetric_state(y, j + 2);
    Povm3 bin = binary_unambiguous(b1, b2);
    Povm3 p;
    p.outcomes.assign(4, Operator3{});
    p.outcomes[idx(j + 1)] = bin.outcomes[0];
    p.outcomes[idx(j + 2)] = bin.outcomes[1];
    p.outcomes[3] = bin.outcomes[2];
    p.labels = {"0", "1", "2", "inconclusive"};
    return p;
}

void fill_bob(SequentialMeasurement &seq) {
    for (int j = 0; j < 3; ++j) {
        seq.bob[label_w1(j)] = always_returns(j);
        seq.bob[label_w2(j)] = filter_out(seq.pair.y, j);
    }
    seq.bob[kLabelW3] = ternary_unambiguous(seq.pair.y);
}

/// Alice and Bob each apply the equal-probability measurement to their own
/// triple; the first conclusive answer wins.
SequentialMeasurement independent_measurements(const CanonicalPair &pair, Branch branch) {
    SequentialMeasurement seq;
    seq.pair = pair;
    seq.branch = branch;
    Povm3 alice = ternary_unambiguous(pair.x);
    for (int r = 0; r < 3; ++r) seq.alice[label_w1(r)] = alice.outcomes[static_cast<std::size_t>(r)];
    seq.alice[kLabelW3] = alice.outcomes[3];
    double xmin = std::min({pair.x[0], pair.x[1], pair.x[2]});
    // Only u1 is meaningful here; alice(w3) is not rank one.
    seq.kappa = {xmin * xmin, 0.0, 0.0};
    fill_bob(seq);
    return seq;
}

}  // namespace

std::string_view label_name(std::size_t label) {
    static constexpr std::array<std::string_view, kNumLabels> names = {"w1_0", "w1_1", "w1_2", "w2_0",
                                                                        "w2_1", "w2_2", "w3"};
    return label < kNumLabels ? names[label] : "invalid";
}

Povm3 binary_unambiguous(const Vec3 &u, const Vec3 &v) {
    Complex c = inner(u, v);
    double mc = std::abs(c);
    if (!(mc < 1.0 - 1e-12)) throw Error(ErrorCode::DegenerateStates, "binary_unambiguous: |<u|v>| = 1");
    // v_perp in span{u, v}, orthogonal to v, with <u|v_perp> > 0.
    Vec3 v_perp{}, u_perp{};
    Complex cv = inner(v, u);
    Complex cu = inner(u, v);
    for (std::size_t i = 0; i < 3; ++i) {
        v_perp[i] = u[i] - cv * v[i];
        u_perp[i] = v[i] - cu * u[i];
    }
    v_perp = normalized(v_perp);
    u_perp = normalized(u_perp);
    double w = 1.0 / (1.0 + mc);
    Povm3 p;
    p.outcomes.push_back(w * Operator3::projector(v_perp));
    p.outcomes.push_back(w * Operator3::projector(u_perp));
    p.outcomes.push_back(Operator3::identity() - p.outcomes[0] - p.outcomes[1]);
    p.labels = {"u", "v", "inconclusive"};
    return p;
}

Povm3 ternary_unambiguous(const Real3 &w) {
    for (double wn : w) {
        if (!(wn > 0.0)) throw Error(ErrorCode::DomainError, "ternary_unambiguous: amplitudes must be positive");
    }
    double wmin = std::min({w[0], w[1], w[2]});
    Povm3 p;
    Operator3 sum;
    for (int r = 0; r < 3; ++r) {
        Vec3 pi{};
        for (int n = 0; n < 3; ++n)
            pi[idx(n)] = wmin / std::numbers::sqrt3 / w[idx(n)] * tau_pow(r * n);
        p.outcomes.push_back(Operator3::projector(pi));
        p.labels.push_back(std::to_string(r));
        sum += p.outcomes.back();
    }
    p.outcomes.push_back(Operator3::identity() - sum);
    p.labels.push_back("inconclusive");
    return p;
}

Vec3 normal_vector(const CanonicalPair &pair, std::size_t label) {
    Vec3 v{};
    if (label == kLabelW3) {
        v[idx(pair.upsilon[2])] = 1.0;
        return v;
    }
    int j = static_cast<int>(label % 3);
    Real3 z = z_values(pair);
    for (int n = 0; n < 3; ++n) {
        double c = 1.0 / pair.x[idx(n)];
        if (label >= 3) c /= z[idx(pair.upsilon[idx(n)])];
        v[idx(n)] = c * tau_pow(j * n);
    }
    return v;
}

RealMatrix3 completeness_matrix(const CanonicalPair &pair) {
    Real3 z = z_values(pair);
    RealMatrix3 m{};
    for (std::size_t k = 0; k < 3; ++k) {
        double xv = pair.x[static_cast<std::size_t>(pair.upsilon[k])];
        double inv = 1.0 / (xv * xv);
        m[k] = {inv, inv / (z[k] * z[k]), k == 2 ? 1.0 : 0.0};
    }
    return m;
}

Real3 solve_kappa(const CanonicalPair &pair) {
    RealMatrix3 m = completeness_matrix(pair);
    Real3 rhs{1.0, 1.0, 1.0};
    // Rows scale like x^-2 and the middle column like z^-2; equilibrate both.
    for (std::size_t k = 0; k < 3; ++k) {
        double r = std::max({std::abs(m[k][0]), std::abs(m[k][1]), std::abs(m[k][2])});
        if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::SingularSystem, "completeness system has a non-finite row");
        for (double &v : m[k]) v /= r;
        rhs[k] /= r;
    }
    Real3 scale{};
    for (std::size_t c = 0; c < 3; ++c) {
        scale[c] = std::max({std::abs(m[0][c]), std::abs(m[1][c]), std::abs(m[2][c])});
        if (!(scale[c] > 0.0)) throw Error(ErrorCode::SingularSystem, "completeness system has a zero column");
        for (auto &row : m) row[c] /= scale[c];
    }
    Real3 u = solve3(m, rhs);
    for (std::size_t c = 0; c < 3; ++c) u[c] /= scale[c];
    return u;
}

SequentialMeasurement build_sequential(const CanonicalPair &pair) {
    if (pair.y[1] - pair.y[2] <= Tolerances::tie) return independent_measurements(pair, Branch::PositiveRealB);

    bool a_real = pair.x[1] - pair.x[2] <= Tolerances::tie;
    Real3 u{};
    try {
        u = solve_kappa(pair);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::SingularSystem) throw;
        // Singular only when y0 = y1; consistent only when x1 = x2 as well.
        if (a_real) return independent_measurements(pair, Branch::PositiveRealB);
        throw Error(ErrorCode::NotGloballyOptimal,
                    std::string("completeness system is singular and inconsistent: ") + e.what());
    }
    for (double &ui : u) {
        if (ui < -Tolerances::clamp) {
            std::ostringstream os;
            os << "completeness system has a negative weight (" << u[0] << ", " << u[1] << ", " << u[2]
               << "): no globally optimal sequential measurement";
            throw Error(ErrorCode::NotGloballyOptimal, os.str());
        }
        if (ui < 0.0) ui = 0.0;
    }

    SequentialMeasurement seq;
    seq.pair = pair;
    seq.branch = a_real ? Branch::PositiveRealA : Branch::Inequality;
    seq.kappa = u;
    for (int j = 0; j < 3; ++j) {
        seq.alice[label_w1(j)] = (u[0] / 3.0) * Operator3::projector(normal_vector(pair, label_w1(j)));
        seq.alice[label_w2(j)] = (u[1] / 3.0) * Operator3::projector(normal_vector(pair, label_w2(j)));
    }
    seq.alice[kLabelW3] = u[2] * Operator3::projector(normal_vector(pair, kLabelW3));
    fill_bob(seq);
    return seq;
}

SequentialMeasurement build_perfect(const Overlap &ka, const Overlap &kb) {
    if (!(ka.modulus() < Tolerances::tie || kb.modulus() < Tolerances::tie)) {
        throw Error(ErrorCode::ContractViolation, "build_perfect: neither overlap vanishes");
    }
    CanonicalPair pair;
    pair.x = amplitudes_from_overlap(ka.value());
    pair.y = amplitudes_from_overlap(kb.value());
    pair.upsilon = upsilon_for(symmetric_convolution(pair.x, pair.y));
    pair.ka_canon = ka.value();
    pair.kb_canon = kb.value();
    return independent_measurements(pair, Branch::Orthogonal);
}

SequentialMeasurement construct(const Overlap &ka, const Overlap &kb) {
    OptimalityReport report = check_global_optimality(ka, kb);
    if (report.branch == Branch::Orthogonal) return build_perfect(ka, kb);
    if (!report.verdict) {
        throw Error(ErrorCode::NotGloballyOptimal, "no globally optimal sequential measurement");
    }
    return build_sequential(*report.pair);
}

Povm9 flatten(const SequentialMeasurement &seq) {
    Povm9 p;
    p.outcomes.assign(4, Operator9{});
    p.labels = {"0", "1", "2", "inconclusive"};
    for (std::size_t w = 0; w < kNumLabels; ++w) {
        if (seq.alice[w].max_abs() == 0.0) continue;
        for (std::size_t r = 0; r < 4; ++r) p.outcomes[r] += kron(seq.alice[w], seq.bob[w].outcomes[r]);
    }
    return p;
}

template <std::size_t N>
PovmResiduals<N> verify_povm(const Povm<N> &p) {
    PovmResiduals<N> res;
    Matrix<N> sum;
    double min_eig = 0.0;
    bool first = true;
    for (const auto &o : p.outcomes) {
        sum += o;
        res.hermiticity = std::max(res.hermiticity, o.hermiticity_residual());
        double e = min_eigenvalue(Matrix<N>(0.5 * (o + o.adjoint())));
        min_eig = first ? e : std::min(min_eig, e);
        first = false;
    }
    res.min_eigenvalue = min_eig;
    res.completeness = (sum - Matrix<N>::identity()).max_abs();
    return res;
}

template PovmResiduals<3> verify_povm<3>(const Povm<3> &);
template PovmResiduals<9> verify_povm<9>(const Povm<9> &);

std::array<Vec<9>, 3> joint_states(const CanonicalPair &pair) {
    std::array<Vec<9>, 3> out;
    for (int r = 0; r < 3; ++r) out[idx(r)] = kron(symmetric_state(pair.x, r), symmetric_state(pair.y, r));
    return out;
}

UnambiguityReport verify_unambiguous(const Povm9 &p, const std::array<Vec<9>, 3> &states, const Real3 &priors) {
    if (p.size() != 4) throw Error(ErrorCode::InvalidPovm, "verify_unambiguous: expected 4 outcomes");
    UnambiguityReport rep;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t k = 0; k < 3; ++k) {
            Complex v = p.outcomes[k].sandwich(states[r], states[r]);
            if (k == r) rep.success += priors[r] * v.real();
            else rep.error_residual = std::max(rep.error_residual, std::abs(v));
        }
    }
    return rep;
}

CertificateReport evaluate_certificate(const SequentialMeasurement &seq, const Povm9 *flattened) {
    CertificateReport rep;
    const CanonicalPair &pair = seq.pair;
    std::ostringstream why;
    auto fail = [&](const std::string &msg) {
        if (rep.passed) why << msg;
        rep.passed = false;
    };

    if (seq.branch != Branch::Orthogonal) {
        StateVectors sv = state_vectors(pair);
        Operator3 x_opt = dual_operator(pair);
        const bool generic = seq.branch == Branch::Inequality || seq.branch == Branch::PositiveRealA;
        for (std::size_t w = 0; w < kNumLabels; ++w) {
            LabelCertificate &lc = rep.labels[w];
            lc.evaluated = true;
            LabelTargets t = label_targets(pair, w);
            Operator3 g = x_opt;
            std::vector<Vec3> excluded;
            for (std::size_t r = 0; r < 3; ++r) {
                if (t.in_target[r]) g -= t.mu[r] * Operator3::projector(sv.a[r]);
                else excluded.push_back(sv.a[r]);
            }
            std::vector<Vec3> q = complement_basis(excluded);
            Operator3 proj;
            for (const auto &v : q) proj += Operator3::projector(v);

            std::vector<double> eig = compressed_eigenvalues(g, q);
            lc.psd_margin = eig.empty() ? 0.0 : eig.front();
            const Operator3 &a = seq.alice[w];
            lc.kernel_residual = (proj * g * a).max_abs();
            for (std::size_t r = 0; r < 3; ++r) {
                if (!t.in_target[r]) lc.support_residual = std::max(lc.support_residual, std::abs(a.sandwich(sv.a[r], sv.a[r])));
            }
            if (generic) {
                lc.kernel_dimension = 0;
                for (double e : eig)
                    if (std::abs(e) <= kKernelTol) ++lc.kernel_dimension;
                Vec3 pi = normalized(normal_vector(pair, w));
                lc.pi_residual = norm(Vec3(proj * (g * pi)));
                for (std::size_t r = 0; r < 3; ++r) {
                    if (!t.in_target[r]) lc.pi_residual = std::max(lc.pi_residual, std::abs(inner(sv.a[r], pi)));
                }
            }

            std::ostringstream m;
            m << "label " << label_name(w) << ": ";
            if (lc.psd_margin < -Tolerances::psd) {
                lc.passed = false;
                m << "PSD margin " << lc.psd_margin;
            } else if (lc.kernel_residual > kKernelTol) {
                lc.passed = false;
                m << "kernel residual " << lc.kernel_residual;
            } else if (lc.support_residual > kUnambiguityTol) {
                lc.passed = false;
                m << "support residual " << lc.support_residual;
            } else if (generic && lc.kernel_dimension != 1) {
                lc.passed = false;
                m << "kernel dimension " << lc.kernel_dimension;
            } else if (generic && lc.pi_residual > kKernelTol) {
                lc.passed = false;
                m << "normal-vector residual " << lc.pi_residual;
            }
            if (!lc.passed) fail(m.str());
        }
    }

    Operator3 alice_sum;
    rep.alice_min_eigenvalue = 0.0;
    for (std::size_t w = 0; w < kNumLabels; ++w) {
        alice_sum += seq.alice[w];
        rep.alice_min_eigenvalue =
            std::min(rep.alice_min_eigenvalue, min_eigenvalue(Operator3(0.5 * (seq.alice[w] + seq.alice[w].adjoint()))));
    }
    rep.alice_completeness = (alice_sum - Operator3::identity()).max_abs();

    Povm9 own = flatten(seq);
    const Povm9 &pi = flattened ? *flattened : own;
    if (flattened) {
        if (flattened->size() != own.size()) {
            rep.consistency = std::numeric_limits<double>::infinity();
        } else {
            for (std::size_t r = 0; r < own.size(); ++r)
                rep.consistency = std::max(rep.consistency, (flattened->outcomes[r] - own.outcomes[r]).max_abs());
        }
    }
    PovmResiduals<9> res = verify_povm(pi);
    rep.completeness = std::max(res.completeness, res.hermiticity);
    rep.min_eigenvalue = res.min_eigenvalue;
    UnambiguityReport un = verify_unambiguous(pi, joint_states(pair), {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    rep.success = un.success;
    rep.unambiguity_residual = un.error_residual;
    rep.global_optimum = seq.branch == Branch::Orthogonal ? 1.0 : global_optimum(pair);

    auto check = [&](bool ok, const char *name, double value) {
        if (ok) return;
        std::ostringstream m;
        m << name << " " << value;
        fail(m.str());
    };
    check(rep.alice_completeness <= kCompletenessTol, "alice completeness residual", rep.alice_completeness);
    check(rep.alice_min_eigenvalue >= -kPsdMarginTol, "alice PSD margin", rep.alice_min_eigenvalue);
    check(rep.completeness <= kCompletenessTol, "completeness residual", rep.completeness);
    check(rep.min_eigenvalue >= -kPsdMarginTol, "PSD margin", rep.min_eigenvalue);
    check(rep.consistency <= kCompletenessTol, "flattened/sequential consistency residual", rep.consistency);
    check(rep.unambiguity_residual <= kUnambiguityTol, "unambiguity residual", rep.unambiguity_residual);
    check(std::abs(rep.success - rep.global_optimum) <= kSuccessTol, "success gap",
          rep.success - rep.global_optimum);
    rep.failure = why.str();
    return rep;
}

CertificateReport dual_certificate(const CanonicalPair &pair, const SequentialMeasurement &seq) {
    for (std::size_t n = 0; n < 3; ++n) {
        if (std::abs(pair.x[n] - seq.pair.x[n]) > 1e-12 || std::abs(pair.y[n] - seq.pair.y[n]) > 1e-12) {
            throw Error(ErrorCode::ContractViolation, "dual_certificate: measurement was built for another pair");
        }
    }
    CertificateReport rep = evaluate_certificate(seq);
    if (!rep.passed) throw Error(ErrorCode::CertificateViolation, rep.failure);
    return rep;
}

template <std::size_t N>
std::vector<std::uint64_t> sample_outcomes(const Povm<N> &p, const Vec<N> &state, std::uint64_t shots,
                                           std::uint64_t seed) {
    if (shots == 0) throw Error(ErrorCode::DomainError, "sample_outcomes: shots must be >= 1");
    std::vector<double> probs;
    double total = 0.0;
    for (const auto &o : p.outcomes) {
        double pr = std::clamp(o.sandwich(state, state).real(), 0.0, 1.0);
        probs.push_back(pr);
        total += pr;
    }
    if (!(std::abs(total - 1.0) <= 1e-8)) {
        std::ostringstream os;
        os << "sample_outcomes: outcome probabilities sum to " << total;
        throw Error(ErrorCode::InvalidPovm, os.str());
    }
    for (double &pr : probs) pr /= total;

    // Multinomial draw as a chain of conditional binomials.
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    std::uint64_t remaining = shots;
    double mass = 1.0;
    for (std::size_t r = 0; r < probs.size() && remaining > 0; ++r) {
        if (r + 1 == probs.size()) {
            counts[r] = remaining;
            break;
        }
        double cond = mass > 0.0 ? std::clamp(probs[r] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, cond);
        counts[r] = cond >= 1.0 ? remaining : draw(rng);
        remaining -= counts[r];
        mass -= probs[r];
    }
    return counts;
}

template std::vector<std::uint64_t> sample_outcomes<3>(const Povm<3> &, const Vec<3> &, std::uint64_t, std::uint64_t);
template std::vector<std::uint64_t> sample_outcomes<9>(const Povm<9> &, const Vec<9> &, std::uint64_t, std::uint64_t);

}  // namespace symseq
