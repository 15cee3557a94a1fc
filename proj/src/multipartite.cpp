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

#include "symseq/multipartite.hpp"

namespace symseq {

namespace {

Complex clamp_modulus(Complex k) {
    double m = std::abs(k);
    double cap = 1.0 - 1e-12;
    if (m >= cap) k *= (cap - 1e-15) / m;
    return k;
}

template <typename SuffixFn>
MultipartiteResult run_levels(const std::vector<Complex> &overlaps, SuffixFn suffix) {
    if (overlaps.size() < 2) throw Error(ErrorCode::DomainError, "check_multipartite: need at least two parties");
    MultipartiteResult res;
    for (std::size_t n = 0; n + 1 < overlaps.size(); ++n) {
        OptimalityReport rep = check_global_optimality(Overlap(overlaps[n]), Overlap(suffix(n)));
        if (!rep.verdict) {
            res.sufficient = false;
            res.failing_level = static_cast<int>(n);
            return res;
        }
    }
    return res;
}

}  // namespace

MultipartiteResult check_multipartite(const std::vector<Complex> &overlaps) {
    std::vector<Complex> suffix(overlaps.size(), Complex(1.0));
    for (std::size_t n = overlaps.size(); n-- > 1;) {
        Complex next = n + 1 < overlaps.size() ? suffix[n + 1] : Complex(1.0);
        suffix[n] = clamp_modulus(overlaps[n] * next);
    }
    return run_levels(overlaps, [&](std::size_t n) { return suffix[n + 1]; });
}

MultipartiteResult check_copies_psk(double s_total, int n) {
    if (!(s_total > 0.0) || !std::isfinite(s_total)) throw Error(ErrorCode::DomainError, "check_copies_psk: S must be > 0");
    if (n < 2) throw Error(ErrorCode::DomainError, "check_copies_psk: N must be >= 2");
    double per = s_total / n;
    std::vector<Complex> overlaps(static_cast<std::size_t>(n), psk_overlap(per).value());
    return run_levels(overlaps, [&](std::size_t level) {
        double rest = static_cast<double>(n - static_cast<int>(level) - 1) * s_total / n;
        return psk_overlap(rest).value();
    });
}

}  // namespace symseq
