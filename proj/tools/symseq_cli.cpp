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

// Command-line front end. Exit codes: 0 true/pass, 1 false/fail,
// 2 internal error, 64 usage, 65 data.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "symseq/symseq.h"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverlapInputs {
    std::vector<double> ka;
    std::vector<double> kb;
    std::vector<double> psk;
    double trine = 0.0;
    std::vector<double> ppm;

    CLI::Option *ka_opt = nullptr;
    CLI::Option *kb_opt = nullptr;
    CLI::Option *psk_opt = nullptr;
    CLI::Option *trine_opt = nullptr;
    CLI::Option *ppm_opt = nullptr;

    void attach(CLI::App *app) {
        ka_opt = app->add_option("--ka", ka, "Alice's overlap K_A as RE IM")->expected(2);
        kb_opt = app->add_option("--kb", kb, "Bob's overlap K_B as RE IM")->expected(2);
        psk_opt = app->add_option("--psk", psk, "PSK photon numbers S_A S_B")->expected(2);
        trine_opt = app->add_option("--trine", trine, "lifted trine parameter g (K_A = K_B)");
        ppm_opt = app->add_option("--ppm", ppm, "PPM amplitudes ALPHA_RE ALPHA_IM BETA_RE BETA_IM for Bob")->expected(4);
    }

    std::pair<symseq_complex, symseq_complex> resolve() const {
        int modes = (ka_opt->count() || kb_opt->count() ? 1 : 0) + (psk_opt->count() ? 1 : 0) +
                    (trine_opt->count() ? 1 : 0) + (ppm_opt->count() ? 1 : 0);
        if (ppm_opt->count() && ka_opt->count() && !kb_opt->count()) --modes;
        if (modes != 1) throw UsageError("give exactly one of --ka/--kb, --psk, --trine, --ppm");
        symseq_complex a{}, b{};
        if (psk_opt->count()) {
            check(symseq_psk_overlap(psk[0], &a));
            check(symseq_psk_overlap(psk[1], &b));
        } else if (trine_opt->count()) {
            check(symseq_lifted_trine_overlap(trine, &a));
            b = a;
        } else if (ppm_opt->count()) {
            check(symseq_ppm_overlap({ppm[0], ppm[1]}, {ppm[2], ppm[3]}, &b));
            a = ka_opt->count() ? symseq_complex{ka[0], ka[1]} : b;
        } else {
            if (!ka_opt->count() || !kb_opt->count()) throw UsageError("--ka and --kb must be given together");
            a = {ka[0], ka[1]};
            b = {kb[0], kb[1]};
        }
        return {a, b};
    }

    static void check(symseq_status s) {
        if (s != SYMSEQ_OK) throw UsageError(symseq_last_error());
    }
};

int report_failure(symseq_status s) {
    std::cerr << "error: " << symseq_status_name(s) << ": " << symseq_last_error() << "\n";
    switch (s) {
        case SYMSEQ_ERR_PARSE:
        case SYMSEQ_ERR_IO: return kExitData;
        case SYMSEQ_ERR_INVALID_ARGUMENT: return kExitUsage;
        default: return kExitInternal;
    }
}

int cmd_check(const OverlapInputs &in) {
    auto [a, b] = in.resolve();
    symseq_report *r = nullptr;
    if (symseq_status s = symseq_check(a, b, &r); s != SYMSEQ_OK) return report_failure(s);
    char *json = nullptr;
    symseq_status s = symseq_report_json(r, &json);
    int verdict = symseq_report_verdict(r);
    symseq_report_free(r);
    if (s != SYMSEQ_OK) return report_failure(s);
    std::cout << json << "\n";
    symseq_string_free(json);
    return verdict ? kExitTrue : kExitFalse;
}

int cmd_construct(const OverlapInputs &in, const std::string &out) {
    auto [a, b] = in.resolve();
    symseq_measurement *m = nullptr;
    symseq_status s = symseq_construct(a, b, &m);
    if (s == SYMSEQ_ERR_NOT_GLOBALLY_OPTIMAL) {
        std::cerr << "no globally optimal sequential measurement\n";
        return kExitFalse;
    }
    if (s != SYMSEQ_OK) return report_failure(s);
    s = symseq_measurement_write_json(m, out.c_str());
    if (s == SYMSEQ_OK && out != "-") {
        std::cerr << "wrote " << out << " (branch " << symseq_measurement_branch(m) << ", success "
                  << symseq_measurement_success(m) << ")\n";
    }
    symseq_measurement_free(m);
    return s == SYMSEQ_OK ? kExitTrue : report_failure(s);
}

int cmd_verify(const std::string &path, const std::vector<double> &ka, const std::vector<double> &kb) {
    if (ka.empty() != kb.empty()) throw UsageError("--ka and --kb must be given together");
    symseq_povm *p = nullptr;
    if (symseq_status s = symseq_povm_load(path.c_str(), &p); s != SYMSEQ_OK) return report_failure(s);
    symseq_complex a{}, b{};
    bool explicit_k = !ka.empty();
    if (explicit_k) {
        a = {ka[0], ka[1]};
        b = {kb[0], kb[1]};
    }
    symseq_verify_result res{};
    char *json = nullptr;
    symseq_status s = symseq_verify(p, explicit_k ? &a : nullptr, explicit_k ? &b : nullptr, &res, &json);
    symseq_povm_free(p);
    if (s != SYMSEQ_OK) return report_failure(s);
    std::cout << json << "\n";
    symseq_string_free(json);
    if (!res.passed) {
        std::cerr << "verification failed: " << symseq_last_error() << "\n";
        return kExitFalse;
    }
    return kExitTrue;
}

int cmd_simulate(const std::string &path, int state, long long shots, unsigned long long seed) {
    if (shots < 1) throw UsageError("--shots must be >= 1");
    if (state < 0 || state > 2) throw UsageError("--state must be 0, 1 or 2");
    symseq_povm *p = nullptr;
    if (symseq_status s = symseq_povm_load(path.c_str(), &p); s != SYMSEQ_OK) return report_failure(s);
    std::size_t n = symseq_povm_outcome_count(p);
    std::vector<std::uint64_t> counts(n);
    std::vector<double> probs(n);
    symseq_status s =
        symseq_simulate(p, state, static_cast<std::uint64_t>(shots), seed, counts.data(), probs.data());
    symseq_povm_free(p);
    if (s != SYMSEQ_OK) return report_failure(s);
    nlohmann::json j;
    j["state"] = state;
    j["shots"] = shots;
    j["seed"] = seed;
    j["counts"] = counts;
    j["probabilities"] = probs;
    std::cout << j.dump(2) << "\n";
    return kExitTrue;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Optimal sequential unambiguous discrimination of symmetric ternary states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", symseq_version());

    OverlapInputs check_in;
    auto *check = app.add_subcommand("check", "decide whether a sequential measurement is globally optimal");
    check_in.attach(check);

    OverlapInputs construct_in;
    std::string construct_out = "-";
    auto *construct = app.add_subcommand("construct", "build the optimal sequential measurement as POVM JSON");
    construct_in.attach(construct);
    construct->add_option("-o,--out", construct_out, "output path, - for stdout");

    std::string verify_path;
    std::vector<double> verify_ka, verify_kb;
    auto *verify = app.add_subcommand("verify", "check a POVM file against the optimality certificate");
    verify->add_option("file", verify_path, "POVM JSON file")->required();
    verify->add_option("--ka", verify_ka, "override K_A (RE IM)")->expected(2);
    verify->add_option("--kb", verify_kb, "override K_B (RE IM)")->expected(2);

    std::string scan_mode;
    symseq_scan_spec spec{};
    std::vector<double> x_range, y_range;
    std::vector<int> n_range;
    std::string scan_out = "-";
    auto *scan = app.add_subcommand("scan", "region scan as CSV");
    scan->add_option("mode", scan_mode, "complex-k, psk-grid or copies")
        ->required()
        ->check(CLI::IsMember({"complex-k", "psk-grid", "copies"}));
    int resolution = 101;
    scan->add_option("-r,--resolution", resolution, "grid points per axis (>= 2)");
    scan->add_option("--x-range", x_range, "first axis range (re, S_A or S_total)")->expected(2);
    scan->add_option("--y-range", y_range, "second axis range (im or S_B)")->expected(2);
    scan->add_option("--n-range", n_range, "copies: inclusive N range")->expected(2);
    scan->add_option("-o,--out", scan_out, "output path, - for stdout");

    std::string curve_mode;
    double s_max = 3.0, step = 0.01;
    std::string curve_out = "-";
    auto *curve = app.add_subcommand("curve", "global optimum along the PSK line as CSV");
    curve->add_option("mode", curve_mode, "psk-global")->required()->check(CLI::IsMember({"psk-global"}));
    curve->add_option("--s-max", s_max, "largest photon number");
    curve->add_option("--step", step, "photon number step (> 0)");
    curve->add_option("-o,--out", curve_out, "output path, - for stdout");

    std::string sim_path;
    int sim_state = 0;
    long long shots = 100000;
    unsigned long long seed = 1;
    auto *simulate = app.add_subcommand("simulate", "Born-rule sampling of a POVM file");
    simulate->add_option("file", sim_path, "POVM JSON file")->required();
    simulate->add_option("--state", sim_state, "input state index 0, 1 or 2");
    simulate->add_option("--shots", shots, "number of shots (>= 1)");
    simulate->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(check_in);
        if (construct->parsed()) return cmd_construct(construct_in, construct_out);
        if (verify->parsed()) return cmd_verify(verify_path, verify_ka, verify_kb);
        if (scan->parsed()) {
            symseq_scan_mode mode = scan_mode == "complex-k" ? SYMSEQ_SCAN_COMPLEX_K
                                    : scan_mode == "psk-grid" ? SYMSEQ_SCAN_PSK_GRID
                                                              : SYMSEQ_SCAN_COPIES;
            symseq_scan_defaults(mode, &spec);
            spec.resolution = resolution;
            if (!x_range.empty()) spec.x_min = x_range[0], spec.x_max = x_range[1];
            if (!y_range.empty()) spec.y_min = y_range[0], spec.y_max = y_range[1];
            if (!n_range.empty()) spec.n_min = n_range[0], spec.n_max = n_range[1];
            symseq_status s = symseq_scan(&spec, scan_out.c_str());
            if (s == SYMSEQ_ERR_DOMAIN) throw UsageError(symseq_last_error());
            return s == SYMSEQ_OK ? kExitTrue : report_failure(s);
        }
        if (curve->parsed()) {
            symseq_status s = symseq_curve_psk_global(s_max, step, curve_out.c_str());
            if (s == SYMSEQ_ERR_DOMAIN) throw UsageError(symseq_last_error());
            return s == SYMSEQ_OK ? kExitTrue : report_failure(s);
        }
        if (simulate->parsed()) return cmd_simulate(sim_path, sim_state, shots, seed);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
