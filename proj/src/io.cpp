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

#include "symseq/io.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace symseq {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

double grid_point(double lo, double hi, int i, int resolution) {
    if (i == resolution - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
}

void write_verdict_row(std::ostream &out, const std::string &coords, Complex ka, Complex kb) {
    OptimalityReport rep;
    try {
        rep = check_global_optimality(Overlap(ka), Overlap(kb));
    } catch (const Error &) {
        out << coords << ",NA,,,,\n";
        return;
    }
    out << coords << ',' << (rep.verdict ? "true" : "false") << ',' << branch_name(rep.branch) << ','
        << format_double(rep.c1) << ',' << format_double(rep.c2) << ',' << format_double(rep.p_global) << '\n';
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::ParseError, "expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

template <std::size_t N>
json matrix_json(const Matrix<N> &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < N; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < N; ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <std::size_t N>
Matrix<N> matrix_from(const json &j) {
    if (!j.is_array() || j.size() != N) {
        std::ostringstream os;
        os << "matrix must have " << N << " rows";
        throw Error(ErrorCode::ParseError, os.str());
    }
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i) {
        if (!j[i].is_array() || j[i].size() != N) {
            std::ostringstream os;
            os << "matrix row " << i << " must have " << N << " entries";
            throw Error(ErrorCode::ParseError, os.str());
        }
        for (std::size_t k = 0; k < N; ++k) m(i, k) = complex_from(j[i][k]);
    }
    return m;
}

template <std::size_t N>
json povm_outcomes_json(const Povm<N> &p) {
    json arr = json::array();
    for (std::size_t r = 0; r < p.size(); ++r) {
        arr.push_back({{"label", p.labels[r]}, {"matrix", matrix_json(p.outcomes[r])}});
    }
    return arr;
}

template <std::size_t N>
Povm<N> povm_from(const json &arr) {
    if (!arr.is_array() || arr.empty()) throw Error(ErrorCode::ParseError, "outcomes must be a non-empty array");
    Povm<N> p;
    for (const auto &o : arr) {
        if (!o.is_object() || !o.contains("matrix")) throw Error(ErrorCode::ParseError, "outcome without matrix");
        p.labels.push_back(o.contains("label") && o["label"].is_string() ? o["label"].get<std::string>()
                                                                         : std::to_string(p.size()));
        p.outcomes.push_back(matrix_from<N>(o["matrix"]));
    }
    return p;
}

json real3_json(const Real3 &v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

void validate_scan(const ScanSpec &spec) {
    if (spec.resolution < 2) throw Error(ErrorCode::DomainError, "scan: resolution must be >= 2");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(spec.x_min) || !finite(spec.x_max) || spec.x_min > spec.x_max) {
        throw Error(ErrorCode::DomainError, "scan: bad first range");
    }
    if (spec.mode != ScanMode::Copies && (!finite(spec.y_min) || !finite(spec.y_max) || spec.y_min > spec.y_max)) {
        throw Error(ErrorCode::DomainError, "scan: bad second range");
    }
    if (spec.mode == ScanMode::PskGrid && (spec.x_min < 0.0 || spec.y_min < 0.0)) {
        throw Error(ErrorCode::DomainError, "scan: photon numbers must be >= 0");
    }
    if (spec.mode == ScanMode::Copies && (spec.x_min <= 0.0 || spec.n_min < 2 || spec.n_min > spec.n_max)) {
        throw Error(ErrorCode::DomainError, "scan: copies needs S_total > 0 and 2 <= n_min <= n_max");
    }
}

void write_scan_csv(const ScanSpec &spec, std::ostream &out) {
    validate_scan(spec);
    const int res = spec.resolution;
    switch (spec.mode) {
        case ScanMode::ComplexK:
            out << "re,im,verdict,branch,c1,c2,p_global\n";
            for (int i = 0; i < res; ++i) {
                double im = grid_point(spec.y_min, spec.y_max, i, res);
                for (int j = 0; j < res; ++j) {
                    double re = grid_point(spec.x_min, spec.x_max, j, res);
                    Complex k(re, im);
                    write_verdict_row(out, format_double(re) + "," + format_double(im), k, k);
                }
            }
            break;
        case ScanMode::PskGrid:
            out << "s_a,s_b,verdict,branch,c1,c2,p_global\n";
            for (int i = 0; i < res; ++i) {
                double sb = grid_point(spec.y_min, spec.y_max, i, res);
                for (int j = 0; j < res; ++j) {
                    double sa = grid_point(spec.x_min, spec.x_max, j, res);
                    std::string coords = format_double(sa) + "," + format_double(sb);
                    if (sa == 0.0 || sb == 0.0) {
                        out << coords << ",NA,,,,\n";
                        continue;
                    }
                    write_verdict_row(out, coords, psk_overlap(sa).value(), psk_overlap(sb).value());
                }
            }
            break;
        case ScanMode::Copies:
            out << "s_total,n,sufficient,failing_level\n";
            for (int n = spec.n_min; n <= spec.n_max; ++n) {
                for (int j = 0; j < res; ++j) {
                    double s = grid_point(spec.x_min, spec.x_max, j, res);
                    out << format_double(s) << ',' << n << ',';
                    try {
                        MultipartiteResult r = check_copies_psk(s, n);
                        out << (r.sufficient ? "true" : "false") << ',';
                        if (r.failing_level) out << *r.failing_level;
                    } catch (const Error &) {
                        out << "NA,";
                    }
                    out << '\n';
                }
            }
            break;
    }
}

void write_psk_curve_csv(double s_max, double step, std::ostream &out) {
    if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::DomainError, "curve: step must be > 0");
    if (!(s_max > 0.0) || !std::isfinite(s_max)) throw Error(ErrorCode::DomainError, "curve: s_max must be > 0");
    out << "s,p_global,verdict,p_sequential\n";
    auto count = static_cast<long long>(std::floor(s_max / step + 1e-9));
    for (long long i = 1; i <= count; ++i) {
        double s = static_cast<double>(i) * step;
        Overlap k = psk_overlap(s);
        out << format_double(s) << ',';
        try {
            OptimalityReport rep = check_global_optimality(k, k);
            out << format_double(rep.p_global) << ',' << (rep.verdict ? "true" : "false") << ',';
            if (rep.verdict) out << format_double(rep.p_global);
        } catch (const Error &) {
            out << ",NA,";
        }
        out << '\n';
    }
}

std::string report_json(const OptimalityReport &report, Complex ka, Complex kb) {
    json j;
    j["ka"] = complex_json(ka);
    j["kb"] = complex_json(kb);
    j["verdict"] = report.verdict;
    j["branch"] = std::string(branch_name(report.branch));
    j["p_global"] = report.p_global;
    j["eta"] = report.eta;
    j["c1"] = report.c1;
    j["c2"] = report.c2;
    if (report.pair) {
        const CanonicalPair &p = *report.pair;
        j["z"] = real3_json(report.z);
        j["tx"] = real3_json(report.tx);
        j["upsilon"] = report.upsilon;
        j["canonical"] = {{"shift_a", p.record.shift_a},
                          {"shift_b", p.record.shift_b},
                          {"conjugated", p.record.conjugated},
                          {"ka", complex_json(p.ka_canon)},
                          {"kb", complex_json(p.kb_canon)},
                          {"x", real3_json(p.x)},
                          {"y", real3_json(p.y)}};
    }
    return j.dump(2);
}

std::string measurement_json(const SequentialMeasurement &seq, Complex ka, Complex kb) {
    Povm9 flat = flatten(seq);
    UnambiguityReport un = verify_unambiguous(flat, joint_states(seq.pair), {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    json j;
    j["dim"] = 9;
    j["outcomes"] = povm_outcomes_json(flat);
    j["meta"] = {{"ka", complex_json(ka)},
                 {"kb", complex_json(kb)},
                 {"branch", std::string(branch_name(seq.branch))},
                 {"kappa", real3_json(seq.kappa)},
                 {"success", un.success},
                 {"canonical",
                  {{"shift_a", seq.pair.record.shift_a},
                   {"shift_b", seq.pair.record.shift_b},
                   {"conjugated", seq.pair.record.conjugated},
                   {"x", real3_json(seq.pair.x)},
                   {"y", real3_json(seq.pair.y)}}}};
    json alice = json::array();
    json bob = json::array();
    for (std::size_t w = 0; w < kNumLabels; ++w) {
        std::string name(label_name(w));
        alice.push_back({{"label", name}, {"matrix", matrix_json(seq.alice[w])}});
        bob.push_back({{"label", name}, {"outcomes", povm_outcomes_json(seq.bob[w])}});
    }
    j["sequential"] = {{"dim", 3}, {"alice", alice}, {"bob", bob}};
    return j.dump(1);
}

LoadedPovm parse_povm_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
        if (!j.contains("dim") || !j["dim"].is_number_integer()) throw Error(ErrorCode::ParseError, "missing dim");
        if (j["dim"].get<int>() != 9) {
            throw Error(ErrorCode::ParseError, "dimension mismatch: expected a 9-dimensional POVM");
        }
        LoadedPovm out;
        out.flattened = povm_from<9>(j.at("outcomes"));
        if (out.flattened.size() != 4) throw Error(ErrorCode::ParseError, "expected 4 outcomes");
        if (j.contains("meta")) {
            const json &m = j["meta"];
            if (m.contains("ka")) out.ka = complex_from(m["ka"]);
            if (m.contains("kb")) out.kb = complex_from(m["kb"]);
            if (m.contains("branch") && m["branch"].is_string()) out.branch = m["branch"].get<std::string>();
        }
        if (j.contains("sequential")) {
            const json &s = j["sequential"];
            const json &alice = s.at("alice");
            const json &bob = s.at("bob");
            if (!alice.is_array() || alice.size() != kNumLabels || !bob.is_array() || bob.size() != kNumLabels) {
                throw Error(ErrorCode::ParseError, "sequential description needs seven labels");
            }
            SequentialMeasurement seq;
            for (std::size_t w = 0; w < kNumLabels; ++w) {
                seq.alice[w] = matrix_from<3>(alice[w].at("matrix"));
                seq.bob[w] = povm_from<3>(bob[w].at("outcomes"));
                if (seq.bob[w].size() != 4) throw Error(ErrorCode::ParseError, "Bob POVMs need 4 outcomes");
            }
            auto branch = branch_from_name(out.branch);
            if (!branch) throw Error(ErrorCode::ParseError, "unknown branch '" + out.branch + "'");
            seq.branch = *branch;
            if (j["meta"].contains("kappa")) {
                const json &k = j["meta"]["kappa"];
                if (!k.is_array() || k.size() != 3) throw Error(ErrorCode::ParseError, "kappa must have 3 entries");
                for (std::size_t i = 0; i < 3; ++i) seq.kappa[i] = k[i].get<double>();
            }
            out.sequential = std::move(seq);
        }
        return out;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("schema violation: ") + e.what());
    }
}

CanonicalPair reference_pair(const Overlap &ka, const Overlap &kb) {
    OptimalityReport rep = check_global_optimality(ka, kb);
    if (rep.pair) return *rep.pair;
    CanonicalPair pair;
    pair.x = amplitudes_from_overlap(ka.value());
    pair.y = amplitudes_from_overlap(kb.value());
    pair.upsilon = upsilon_for(symmetric_convolution(pair.x, pair.y));
    pair.ka_canon = ka.value();
    pair.kb_canon = kb.value();
    return pair;
}

VerifyOutcome verify_loaded(const LoadedPovm &file, const Overlap &ka, const Overlap &kb) {
    VerifyOutcome v;
    v.residuals = verify_povm(file.flattened);
    OptimalityReport rep = check_global_optimality(ka, kb);
    if (!rep.verdict) {
        v.failure = "no globally optimal sequential measurement exists for these overlaps";
        return v;
    }
    if (!file.sequential) {
        v.failure = "file has no sequential description; the dual certificate needs Alice's operators";
        return v;
    }
    SequentialMeasurement seq = *file.sequential;
    seq.pair = reference_pair(ka, kb);
    if ((rep.branch == Branch::Orthogonal) != (seq.branch == Branch::Orthogonal)) {
        v.failure = "file branch " + std::string(branch_name(seq.branch)) + " does not match the overlaps (" +
                    std::string(branch_name(rep.branch)) + ")";
        return v;
    }
    v.certificate = evaluate_certificate(seq, &file.flattened);
    v.passed = v.certificate.passed;
    v.failure = v.certificate.failure;
    return v;
}

std::string verify_json(const VerifyOutcome &v) {
    const CertificateReport &c = v.certificate;
    json j;
    j["passed"] = v.passed;
    if (!v.failure.empty()) j["failure"] = v.failure;
    j["povm"] = {{"completeness", v.residuals.completeness},
                 {"min_eigenvalue", v.residuals.min_eigenvalue},
                 {"hermiticity", v.residuals.hermiticity}};
    j["unambiguity_residual"] = c.unambiguity_residual;
    j["success"] = c.success;
    j["global_optimum"] = c.global_optimum;
    j["alice_completeness"] = c.alice_completeness;
    j["consistency"] = c.consistency;
    json labels = json::array();
    for (std::size_t w = 0; w < kNumLabels; ++w) {
        const LabelCertificate &lc = c.labels[w];
        if (!lc.evaluated) continue;
        json l = {{"label", std::string(label_name(w))},
                  {"psd_margin", lc.psd_margin},
                  {"kernel_residual", lc.kernel_residual},
                  {"support_residual", lc.support_residual},
                  {"passed", lc.passed}};
        if (lc.kernel_dimension >= 0) {
            l["kernel_dimension"] = lc.kernel_dimension;
            l["pi_residual"] = lc.pi_residual;
        }
        labels.push_back(std::move(l));
    }
    j["labels"] = labels;
    return j.dump(2);
}

}  // namespace symseq
