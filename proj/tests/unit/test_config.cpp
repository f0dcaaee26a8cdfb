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

#include "afcest/config.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace afcest;

TEST_SUITE("config") {

TEST_CASE("defaults are valid") { CHECK_NOTHROW(ExperimentConfig{}.validate()); }

TEST_CASE("parse basic keys, comments and lists") {
    const auto c = parse_config(R"(
# desk-scale run
N = 36
L = 32          # direct link
K_list = 2, 4
snr_db_list = 0, 12.5, inf
trials = 7
master_seed = 99
estimators = LS, pel
lambda_rule = fixed
pel_coef = 0.75
training = gaussian
beta_rule = signal_power
output_path = out/run.csv
)");
    CHECK(c.n == 36);
    CHECK(c.l == 32);
    CHECK(c.k_list == std::vector<std::size_t>{2, 4});
    REQUIRE(c.snr_db_list.size() == 3);
    CHECK(c.snr_db_list[1] == 12.5);
    CHECK(std::isinf(c.snr_db_list[2]));
    CHECK(c.trials == 7);
    CHECK(c.master_seed == 99);
    CHECK(c.estimators == std::vector<EstimatorKind>{EstimatorKind::ls, EstimatorKind::pel});
    CHECK(c.lambda_rule == LambdaRule::fixed);
    CHECK(c.pel_coef.pel == 0.75);
    CHECK(c.training == TrainingKind::gaussian);
    CHECK(c.beta_rule == BetaRule::signal_power);
    CHECK(c.output_path == "out/run.csv");
}

TEST_CASE("text round trip is exact") {
    ExperimentConfig c;
    c.snr_db_list = {0.1, 1.0 / 3.0, INFINITY};
    c.iel_coef = {0.30000000000000004, 2.75};
    c.tol = 1e-9;
    c.master_seed = 18446744073709551615ULL;
    const auto back = parse_config(to_config_text(c));
    CHECK(to_config_text(back) == to_config_text(c));
    CHECK(back.snr_db_list[1] == c.snr_db_list[1]);
    CHECK(back.iel_coef.sel == c.iel_coef.sel);
    CHECK(back.master_seed == c.master_seed);
}

TEST_CASE("errors name the line") {
    auto msg = [](const char* text) {
        try {
            parse_config(text);
        } catch (const PreconditionError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(msg("N = 36\nbogus = 1\n").find("line 2") != std::string::npos);
    CHECK(msg("N = 36\nN = 40\n").find("repeated") != std::string::npos);
    CHECK(msg("trials = -3\n").find("trials") != std::string::npos);
    CHECK(msg("no equals sign\n").find("line 1") != std::string::npos);
    CHECK(msg("L = 33\n").find("even") != std::string::npos);
    CHECK(msg("N = 30\n").find("exceed") != std::string::npos);
    CHECK(msg("K_list = 2, 40\n").find("K") != std::string::npos);
    CHECK(msg("estimators = LS, OMP\n").find("OMP") != std::string::npos);
}

TEST_CASE("missing file") {
    try {
        load_config("/nonexistent/dir/x.cfg");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/dir/x.cfg") != std::string::npos);
    }
}

TEST_CASE("number formatting is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(5.0) == "5");
    CHECK(format_double(INFINITY) == "inf");
    CHECK(parse_double("inf") == INFINITY);
    CHECK(parse_double("+inf") == INFINITY);
    CHECK(parse_double("1e-8") == 1e-8);
    CHECK_THROWS_AS(parse_double("1.0x"), PreconditionError);
    CHECK_THROWS_AS(parse_double(""), PreconditionError);
    for (double v : {1.0 / 3.0, 2.0 / 7.0, 1e-300, 123456.789e10})
        CHECK(parse_double(format_double(v)) == v);
}

}
