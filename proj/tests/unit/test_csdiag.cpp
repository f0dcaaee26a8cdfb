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

#include "afcest/afsim.hpp"
#include "afcest/csdiag.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace afcest;

namespace {

CMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = complex_gaussian(rng, 1.0);
    return m;
}

} // namespace

TEST_SUITE("csdiag") {

TEST_CASE("support counting") {
    CHECK(support_count(12, 3) == 12 + 66 + 220);
    CHECK(support_count(5, 5) == 31);
    CHECK(support_count(63, 2) == 63 + 1953);
    CHECK(support_count(200, 100) == UINT64_MAX);
}

TEST_CASE("identity has zero RIC") {
    for (std::size_t k : {1u, 2u, 3u}) {
        const auto r = ric_estimate(CMatrix::Identity(6, 6), k, 1000);
        CHECK(r.exhaustive);
        CHECK(r.delta < 1e-15);
        CHECK(r.subsets_checked == support_count(6, k));
    }
}

TEST_CASE("duplicate columns give delta 1") {
    CMatrix u = CMatrix::Identity(4, 4);
    u.col(2) = u.col(0);
    CHECK(ric_estimate(u, 2, 1000).delta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalisation is applied and reported") {
    CMatrix u = 3.0 * CMatrix::Identity(5, 5);
    const auto r = ric_estimate(u, 2, 1000);
    CHECK(r.delta < 1e-15);
    CHECK((r.column_norms.array() - 3.0).abs().maxCoeff() < 1e-15);
}

TEST_CASE("exhaustive RIC matches the SVD oracle") {
    Rng rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        const CMatrix u = random_matrix(rng, 8, 12);
        for (int k = 1; k <= 3; ++k) {
            const auto r = ric_estimate(u, static_cast<std::size_t>(k), 1u << 20);
            REQUIRE(r.exhaustive);
            CHECK(std::abs(r.delta - oracle::ric_svd(u, k)) < 1e-10);
        }
    }
}

TEST_CASE("RIC is monotone in the order") {
    Rng rng(4);
    const CMatrix u = random_matrix(rng, 8, 10);
    double prev = 0.0;
    for (std::size_t k = 1; k <= 4; ++k) {
        const double d = ric_estimate(u, k, 1u << 20).delta;
        CHECK(d >= prev);
        prev = d;
    }
}

TEST_CASE("sampled estimate is a lower bound") {
    Rng rng(5);
    const CMatrix u = random_matrix(rng, 8, 12);
    const auto exact = ric_estimate(u, 3, 1u << 20);
    const auto sampled = ric_estimate(u, 3, 40, 77);
    CHECK_FALSE(sampled.exhaustive);
    CHECK(sampled.subsets_checked == 40);
    CHECK(sampled.delta <= exact.delta + 1e-15);
    CHECK(sampled.delta > 0.0);
}

TEST_CASE("order beyond the column count is rejected") {
    CHECK_THROWS_AS(ric_estimate(CMatrix::Identity(3, 3), 4, 100), PreconditionError);
    CHECK_THROWS_AS(ric_estimate(CMatrix::Identity(3, 3), 0, 100), PreconditionError);
}

TEST_CASE("equivalent training matrix") {
    Rng rng(6);
    const auto x = gen_training(36, 1.0, rng);
    const auto r = ric_estimate(build_measurement_matrix(x, 32), 2, 100000);
    CHECK(r.exhaustive);
    CHECK(r.subsets_checked == 63 + 1953);
    CHECK(r.delta >= 0.0);
    CHECK((r.column_norms.array() - 6.0).abs().maxCoeff() < 1e-9);
}

}
