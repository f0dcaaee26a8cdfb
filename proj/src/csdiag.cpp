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

#include "afcest/csdiag.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace afcest {

namespace {

double isometry_defect(const CMatrix& u, const std::vector<Eigen::Index>& cols) {
    const auto k = static_cast<Eigen::Index>(cols.size());
    CMatrix sub(u.rows(), k);
    for (Eigen::Index j = 0; j < k; ++j) sub.col(j) = u.col(cols[static_cast<std::size_t>(j)]);
    const CMatrix gram = sub.adjoint() * sub;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues(); // ascending
    return std::max(ev[k - 1] - 1.0, 1.0 - ev[0]);
}

// Advances cols to the next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<Eigen::Index>& cols, Eigen::Index n) {
    const auto k = static_cast<Eigen::Index>(cols.size());
    for (Eigen::Index i = k - 1; i >= 0; --i) {
        auto& c = cols[static_cast<std::size_t>(i)];
        if (c < n - k + i) {
            ++c;
            for (Eigen::Index j = i + 1; j < k; ++j)
                cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::uint64_t support_count(std::size_t n, std::size_t order) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t c = 1; // C(n, k) built incrementally
    for (std::size_t k = 1; k <= order && k <= n; ++k) {
        // C(n, k) = C(n, k-1) * (n - k + 1) / k; the product is exact when it fits.
        const std::uint64_t mul = n - k + 1;
        if (c > cap / mul) return cap;
        c = c * mul / k;
        if (total > cap - c) return cap;
        total += c;
    }
    return total;
}

RicReport ric_estimate(const CMatrix& U, std::size_t order, std::uint64_t budget, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(U.cols());
    detail::require(order >= 1, "RIC order must be at least 1");
    detail::require(order <= n, "RIC order " + std::to_string(order) + " exceeds column count " + std::to_string(n));

    RicReport r;
    r.order = order;
    r.column_norms = U.colwise().norm().transpose();
    CMatrix u = U;
    for (Eigen::Index j = 0; j < u.cols(); ++j)
        if (r.column_norms[j] > 0.0) u.col(j) /= r.column_norms[j];

    const std::uint64_t total = support_count(n, order);
    if (total <= budget) {
        r.exhaustive = true;
        for (std::size_t k = 1; k <= order; ++k) {
            std::vector<Eigen::Index> cols(k);
            std::iota(cols.begin(), cols.end(), Eigen::Index{0});
            do {
                r.delta = std::max(r.delta, isometry_defect(u, cols));
                ++r.subsets_checked;
            } while (next_combination(cols, static_cast<Eigen::Index>(n)));
        }
        return r;
    }

    // Largest supports dominate by eigenvalue interlacing, so sample size = order.
    Rng rng(seed);
    std::vector<Eigen::Index> pool(n);
    std::iota(pool.begin(), pool.end(), Eigen::Index{0});
    std::vector<Eigen::Index> cols(order);
    for (std::uint64_t s = 0; s < budget; ++s) {
        for (std::size_t i = 0; i < order; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(pool[i], pool[pick(rng)]);
            cols[i] = pool[i];
        }
        r.delta = std::max(r.delta, isometry_defect(u, cols));
        ++r.subsets_checked;
    }
    return r;
}

} // namespace afcest
