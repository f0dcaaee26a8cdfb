// SPDX-License-Identifier: Apache-2.0
//
// afcest: partial-sparse channel estimation for AF relay links
// Copyright (C) 2026 The afcest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AFCEST_CSDIAG_HPP
#define AFCEST_CSDIAG_HPP

#include "afcest/types.hpp"

#include <cstddef>
#include <cstdint>

namespace afcest {

struct RicReport {
    std::size_t order = 0;
    /// Raw estimate; may exceed 1 for badly conditioned inputs.
    double delta = 0.0;
    /// True when every support of size <= order was visited, in which case
    /// delta is exact. Otherwise it is a lower bound.
    bool exhaustive = false;
    std::uint64_t subsets_checked = 0;
    /// l2 norms of the input columns, divided out before evaluation.
    RVector column_norms;
};

/// Number of supports with 1 <= |S| <= order among n columns, saturating at
/// UINT64_MAX.
std::uint64_t support_count(std::size_t n, std::size_t order);

/// Restricted isometry constant of the column-normalised U:
///   max over |S| <= order of max(sigma_max^2(U_S) - 1, 1 - sigma_min^2(U_S)).
/// Enumerates every support when support_count(n, order) <= budget, otherwise
/// draws budget supports of size exactly order uniformly at random.
RicReport ric_estimate(const CMatrix& U, std::size_t order, std::uint64_t budget, std::uint64_t seed = 0);

} // namespace afcest

#endif // AFCEST_CSDIAG_HPP
