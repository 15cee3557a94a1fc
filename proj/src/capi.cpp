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

#include "symseq/symseq.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <sstream>

#include "symseq/io.hpp"

using namespace symseq;

struct symseq_report {
    OptimalityReport report;
    Complex ka;
    Complex kb;
};

struct symseq_measurement {
    SequentialMeasurement seq;
    Complex ka;
    Complex kb;
    double success;
};

struct symseq_povm {
    LoadedPovm file;
};

namespace {

thread_local std::string last_error;

symseq_status status_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::ContractViolation: return SYMSEQ_ERR_CONTRACT;
        case ErrorCode::SingularSystem: return SYMSEQ_ERR_SINGULAR;
        case ErrorCode::DegenerateStates: return SYMSEQ_ERR_DEGENERATE;
        case ErrorCode::DomainError: return SYMSEQ_ERR_DOMAIN;
        case ErrorCode::RankDeficient: return SYMSEQ_ERR_RANK_DEFICIENT;
        case ErrorCode::NoCanonicalForm: return SYMSEQ_ERR_NO_CANONICAL_FORM;
        case ErrorCode::NotGloballyOptimal: return SYMSEQ_ERR_NOT_GLOBALLY_OPTIMAL;
        case ErrorCode::CertificateViolation: return SYMSEQ_ERR_CERTIFICATE;
        case ErrorCode::InvalidPovm: return SYMSEQ_ERR_INVALID_POVM;
        case ErrorCode::ZeroOperator: return SYMSEQ_ERR_ZERO_OPERATOR;
        case ErrorCode::ParseError: return SYMSEQ_ERR_PARSE;
        case ErrorCode::IoError: return SYMSEQ_ERR_IO;
    }
    return SYMSEQ_ERR_INTERNAL;
}

symseq_status fail(symseq_status s, const std::string &msg) {
    last_error = msg;
    return s;
}

template <typename F>
symseq_status guarded(F &&f) {
    last_error.clear();
    try {
        return f();
    } catch (const Error &e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(SYMSEQ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(SYMSEQ_ERR_INTERNAL, e.what());
    }
}

Complex to_cpp(symseq_complex c) { return {c.re, c.im}; }
symseq_complex to_c(Complex c) { return {c.real(), c.imag()}; }

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
void with_output(const char *path, F &&write) {
    if (path == nullptr) throw Error(ErrorCode::ContractViolation, "output path is NULL");
    if (std::strcmp(path, "-") == 0) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "' for writing");
    write(out);
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, std::string("write to '") + path + "' failed");
}

#define SYMSEQ_REQUIRE(cond, msg)                                 \
    do {                                                          \
        if (!(cond)) return fail(SYMSEQ_ERR_INVALID_ARGUMENT, msg); \
    } while (0)

}  // namespace

extern "C" {

const char *symseq_version(void) { return "1.0.0"; }

const char *symseq_status_name(symseq_status status) {
    switch (status) {
        case SYMSEQ_OK: return "OK";
        case SYMSEQ_ERR_CONTRACT: return "ContractViolation";
        case SYMSEQ_ERR_SINGULAR: return "SingularSystem";
        case SYMSEQ_ERR_DEGENERATE: return "DegenerateStates";
        case SYMSEQ_ERR_DOMAIN: return "DomainError";
        case SYMSEQ_ERR_RANK_DEFICIENT: return "RankDeficient";
        case SYMSEQ_ERR_NO_CANONICAL_FORM: return "NoCanonicalForm";
        case SYMSEQ_ERR_NOT_GLOBALLY_OPTIMAL: return "NotGloballyOptimal";
        case SYMSEQ_ERR_CERTIFICATE: return "CertificateViolation";
        case SYMSEQ_ERR_INVALID_POVM: return "InvalidPovm";
        case SYMSEQ_ERR_ZERO_OPERATOR: return "ZeroOperator";
        case SYMSEQ_ERR_PARSE: return "ParseError";
        case SYMSEQ_ERR_IO: return "IoError";
        case SYMSEQ_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case SYMSEQ_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char *symseq_last_error(void) { return last_error.c_str(); }

void symseq_string_free(char *s) { std::free(s); }

symseq_status symseq_psk_overlap(double s, symseq_complex *out) {
    SYMSEQ_REQUIRE(out, "out is NULL");
    return guarded([&] {
        *out = to_c(psk_overlap(s).value());
        return SYMSEQ_OK;
    });
}

symseq_status symseq_lifted_trine_overlap(double g, symseq_complex *out) {
    SYMSEQ_REQUIRE(out, "out is NULL");
    return guarded([&] {
        *out = to_c(lifted_trine_overlap(g).value());
        return SYMSEQ_OK;
    });
}

symseq_status symseq_ppm_overlap(symseq_complex alpha, symseq_complex beta, symseq_complex *out) {
    SYMSEQ_REQUIRE(out, "out is NULL");
    return guarded([&] {
        *out = to_c(ppm_overlap(to_cpp(alpha), to_cpp(beta)).value());
        return SYMSEQ_OK;
    });
}

symseq_status symseq_check(symseq_complex ka, symseq_complex kb, symseq_report **out) {
    SYMSEQ_REQUIRE(out, "out is NULL");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<symseq_report>();
        r->ka = to_cpp(ka);
        r->kb = to_cpp(kb);
        r->report = check_global_optimality(Overlap(r->ka), Overlap(r->kb));
        *out = r.release();
        return SYMSEQ_OK;
    });
}

void symseq_report_free(symseq_report *r) { delete r; }
int symseq_report_verdict(const symseq_report *r) { return r && r->report.verdict ? 1 : 0; }
const char *symseq_report_branch(const symseq_report *r) {
    return r ? branch_name(r->report.branch).data() : "";
}
double symseq_report_p_global(const symseq_report *r) { return r ? r->report.p_global : 0.0; }
double symseq_report_eta(const symseq_report *r) { return r ? r->report.eta : 0.0; }
double symseq_report_c1(const symseq_report *r) { return r ? r->report.c1 : 0.0; }
double symseq_report_c2(const symseq_report *r) { return r ? r->report.c2 : 0.0; }

symseq_status symseq_report_json(const symseq_report *r, char **out) {
    SYMSEQ_REQUIRE(r && out, "NULL argument");
    return guarded([&] {
        *out = dup_string(report_json(r->report, r->ka, r->kb));
        return SYMSEQ_OK;
    });
}

symseq_status symseq_construct(symseq_complex ka, symseq_complex kb, symseq_measurement **out) {
    SYMSEQ_REQUIRE(out, "out is NULL");
    *out = nullptr;
    return guarded([&] {
        auto m = std::make_unique<symseq_measurement>();
        m->ka = to_cpp(ka);
        m->kb = to_cpp(kb);
        m->seq = construct(Overlap(m->ka), Overlap(m->kb));
        m->success = verify_unambiguous(flatten(m->seq), joint_states(m->seq.pair), {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})
                         .success;
        *out = m.release();
        return SYMSEQ_OK;
    });
}

void symseq_measurement_free(symseq_measurement *m) { delete m; }
const char *symseq_measurement_branch(const symseq_measurement *m) {
    return m ? branch_name(m->seq.branch).data() : "";
}
double symseq_measurement_success(const symseq_measurement *m) { return m ? m->success : 0.0; }

symseq_status symseq_measurement_write_json(const symseq_measurement *m, const char *path) {
    SYMSEQ_REQUIRE(m && path, "NULL argument");
    return guarded([&] {
        std::string text = measurement_json(m->seq, m->ka, m->kb);
        with_output(path, [&](std::ostream &os) { os << text << '\n'; });
        return SYMSEQ_OK;
    });
}

symseq_status symseq_povm_load(const char *path, symseq_povm **out) {
    SYMSEQ_REQUIRE(path && out, "NULL argument");
    *out = nullptr;
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        auto p = std::make_unique<symseq_povm>();
        p->file = parse_povm_json(ss.str());
        *out = p.release();
        return SYMSEQ_OK;
    });
}

void symseq_povm_free(symseq_povm *p) { delete p; }

symseq_status symseq_povm_meta_overlaps(const symseq_povm *p, symseq_complex *ka, symseq_complex *kb) {
    SYMSEQ_REQUIRE(p && ka && kb, "NULL argument");
    if (!p->file.ka || !p->file.kb) return fail(SYMSEQ_ERR_PARSE, "file meta has no overlaps");
    *ka = to_c(*p->file.ka);
    *kb = to_c(*p->file.kb);
    return SYMSEQ_OK;
}

symseq_status symseq_verify(const symseq_povm *p, const symseq_complex *ka, const symseq_complex *kb,
                            symseq_verify_result *result, char **json) {
    SYMSEQ_REQUIRE(p && result, "NULL argument");
    SYMSEQ_REQUIRE((ka == nullptr) == (kb == nullptr), "ka and kb must both be given or both be NULL");
    return guarded([&] {
        Complex a, b;
        if (ka) {
            a = to_cpp(*ka);
            b = to_cpp(*kb);
        } else {
            if (!p->file.ka || !p->file.kb) throw Error(ErrorCode::ParseError, "file meta has no overlaps");
            a = *p->file.ka;
            b = *p->file.kb;
        }
        VerifyOutcome v = verify_loaded(p->file, Overlap(a), Overlap(b));
        const CertificateReport &c = v.certificate;
        *result = {v.passed ? 1 : 0,      v.residuals.completeness, v.residuals.min_eigenvalue, c.unambiguity_residual,
                   c.success,             c.global_optimum,         c.alice_completeness,       c.consistency};
        if (!v.passed) last_error = v.failure;
        if (json) *json = dup_string(verify_json(v));
        return SYMSEQ_OK;
    });
}

size_t symseq_povm_outcome_count(const symseq_povm *p) { return p ? p->file.flattened.size() : 0; }

symseq_status symseq_simulate(const symseq_povm *p, int state_index, uint64_t shots, uint64_t seed, uint64_t *counts,
                              double *probabilities) {
    SYMSEQ_REQUIRE(p && counts, "NULL argument");
    SYMSEQ_REQUIRE(state_index >= 0 && state_index <= 2, "state index must be 0, 1 or 2");
    SYMSEQ_REQUIRE(shots >= 1, "shots must be >= 1");
    return guarded([&] {
        if (!p->file.ka || !p->file.kb) throw Error(ErrorCode::ParseError, "file meta has no overlaps");
        CanonicalPair pair = reference_pair(Overlap(*p->file.ka), Overlap(*p->file.kb));
        Vec<9> state = joint_states(pair)[static_cast<std::size_t>(state_index)];
        std::vector<std::uint64_t> c = sample_outcomes(p->file.flattened, state, shots, seed);
        for (std::size_t r = 0; r < c.size(); ++r) {
            counts[r] = c[r];
            if (probabilities) probabilities[r] = p->file.flattened.outcomes[r].sandwich(state, state).real();
        }
        return SYMSEQ_OK;
    });
}

symseq_status symseq_check_multipartite(const symseq_complex *overlaps, size_t n, int *sufficient,
                                        int *failing_level) {
    SYMSEQ_REQUIRE(overlaps && sufficient && failing_level, "NULL argument");
    return guarded([&] {
        std::vector<Complex> ks;
        for (size_t i = 0; i < n; ++i) ks.push_back(to_cpp(overlaps[i]));
        MultipartiteResult r = check_multipartite(ks);
        *sufficient = r.sufficient ? 1 : 0;
        *failing_level = r.failing_level.value_or(-1);
        return SYMSEQ_OK;
    });
}

symseq_status symseq_check_copies_psk(double s_total, int n, int *sufficient, int *failing_level) {
    SYMSEQ_REQUIRE(sufficient && failing_level, "NULL argument");
    return guarded([&] {
        MultipartiteResult r = check_copies_psk(s_total, n);
        *sufficient = r.sufficient ? 1 : 0;
        *failing_level = r.failing_level.value_or(-1);
        return SYMSEQ_OK;
    });
}

void symseq_scan_defaults(symseq_scan_mode mode, symseq_scan_spec *spec) {
    if (!spec) return;
    ScanSpec s;
    switch (mode) {
        case SYMSEQ_SCAN_COMPLEX_K: break;
        case SYMSEQ_SCAN_PSK_GRID:
            s.x_min = s.y_min = 0.0;
            s.x_max = s.y_max = 5.0;
            break;
        case SYMSEQ_SCAN_COPIES:
            s.x_min = 0.01;
            s.x_max = 1.0;
            break;
    }
    *spec = {mode, s.resolution, s.x_min, s.x_max, s.y_min, s.y_max, s.n_min, s.n_max};
}

symseq_status symseq_scan(const symseq_scan_spec *spec, const char *path) {
    SYMSEQ_REQUIRE(spec && path, "NULL argument");
    return guarded([&] {
        ScanSpec s;
        switch (spec->mode) {
            case SYMSEQ_SCAN_COMPLEX_K: s.mode = ScanMode::ComplexK; break;
            case SYMSEQ_SCAN_PSK_GRID: s.mode = ScanMode::PskGrid; break;
            case SYMSEQ_SCAN_COPIES: s.mode = ScanMode::Copies; break;
            default: throw Error(ErrorCode::DomainError, "unknown scan mode");
        }
        s.resolution = spec->resolution;
        s.x_min = spec->x_min;
        s.x_max = spec->x_max;
        s.y_min = spec->y_min;
        s.y_max = spec->y_max;
        s.n_min = spec->n_min;
        s.n_max = spec->n_max;
        validate_scan(s);
        std::ostringstream buf;
        write_scan_csv(s, buf);
        with_output(path, [&](std::ostream &os) { os << buf.str(); });
        return SYMSEQ_OK;
    });
}

symseq_status symseq_curve_psk_global(double s_max, double step, const char *path) {
    SYMSEQ_REQUIRE(path, "NULL argument");
    return guarded([&] {
        std::ostringstream buf;
        write_psk_curve_csv(s_max, step, buf);
        with_output(path, [&](std::ostream &os) { os << buf.str(); });
        return SYMSEQ_OK;
    });
}

}  // extern "C"
