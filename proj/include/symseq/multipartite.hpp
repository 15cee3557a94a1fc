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

// Sufficient condition for N parties: party n measures first against the
// tensor product of all later parties, level by level.

#include <optional>
#include <vector>

#include "symseq/optimality.hpp"

namespace symseq {

struct MultipartiteResult {
    bool sufficient = true;
    std::optional<int> failing_level;
};

/// Requires at least two overlaps. For two parties the result is also necessary.
MultipartiteResult check_multipartite(const std::vector<Complex> &overlaps);

/// N copies of psk_overlap(s_total / N). Suffix overlaps use the closed form.
MultipartiteResult check_copies_psk(double s_total, int n);

}  // namespace symseq
