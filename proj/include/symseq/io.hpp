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

// CSV scans and the POVM JSON interchange format.

#include <iosfwd>
#include <optional>
#include <string>

#include "symseq/multipartite.hpp"
#include "symseq/povm.hpp"

namespace symseq {

/// 17 significant digits, shortest "%.17g" form.
std::string format_double(double v);

enum class ScanMode { ComplexK, PskGrid, Copies };

struct ScanSpec {
    ScanMode mode = ScanMode::ComplexK;
    int resolution = 101;
    /// complex-k: re range; psk-grid: S_A range; copies: S_total range.
    double x_min = -0.5, x_max = 1.0;
    /// complex-k: im range; psk-grid: S_B range. Unused for copies.
    double y_min = -0.8660254037844386, y_max = 0.8660254037844386;
    /// copies: inclusive N range.
    int n_min = 2, n_max = 20;
};

/// Throws DomainError on a bad specification.
void validate_scan(const ScanSpec &spec);

/// Row-major: the second coordinate is the outer loop.
void write_scan_csv(const ScanSpec &spec, std::ostream &out);

/// S = step, 2 step, ... <= s_max with ka = kb = psk_overlap(S).
void write_psk_curve_csv(double s_max, double step, std::ostream &out);

/// JSON text of a decision report.
std::string report_json(const OptimalityReport &report, Complex ka, Complex kb);

/// Flattened POVM plus the sequential description and metadata.
std::string measurement_json(const SequentialMeasurement &seq, Complex ka, Complex kb);

struct LoadedPovm {
    Povm9 flattened;
    std::optional<SequentialMeasurement> sequential;  // alice/bob/kappa/branch only; pair is not filled
    std::optional<Complex> ka;
    std::optional<Complex> kb;
    std::string branch;
};

/// Throws ParseError for malformed JSON, schema violations and dimension mismatches.
LoadedPovm parse_povm_json(const std::string &text);

struct VerifyOutcome {
    CertificateReport certificate;
    PovmResiduals<9> residuals;
    bool passed = false;
    std::string failure;
};

/// Canonical pair (or raw amplitudes for orthogonal inputs) the file's labels refer to.
CanonicalPair reference_pair(const Overlap &ka, const Overlap &kb);

/// Runs the POVM, unambiguity and certificate checks for (ka, kb).
VerifyOutcome verify_loaded(const LoadedPovm &file, const Overlap &ka, const Overlap &kb);

std::string verify_json(const VerifyOutcome &v);

}  // namespace symseq
