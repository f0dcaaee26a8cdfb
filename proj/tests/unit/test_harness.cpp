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

#include "afcest/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace afcest;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.trials = 20;
    c.k_list = {2};
    c.snr_db_list = {10.0};
    c.threads = 1;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

CompositeChannel some_channel(std::uint64_t seed) {
    Rng rng(seed);
    const auto d = gen_channel(ChannelSpec::sparse(32, 2), rng);
    return compose(d, cascade(gen_channel(ChannelSpec::dense(16), rng), gen_channel(ChannelSpec::dense(16), rng)));
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("average MSE") {
    const auto h = some_channel(1);
    CHECK(average_mse(h, h.stacked, 32) == 0.0);

    CVector e = CVector::Zero(63);
    e[0] = std::sqrt(63.0);
    CHECK(average_mse(h, CVector(h.stacked + e), 32) == doctest::Approx(1.0).epsilon(1e-14));

    const auto g = some_channel(2);
    double naive = 0.0;
    for (Eigen::Index i = 0; i < 63; ++i) {
        const double dr = h.stacked[i].real() - g.stacked[i].real();
        const double di = h.stacked[i].imag() - g.stacked[i].imag();
        naive += dr * dr + di * di;
    }
    CHECK(std::abs(average_mse(h, g.stacked, 32) - naive / 63.0) < 1e-12);
    CHECK_THROWS_AS(average_mse(h, CVector::Zero(62), 32), PreconditionError);
}

TEST_CASE("support recovery") {
    const auto h = some_channel(3);
    CHECK(support_recovery(h, h.stacked, 0.1) == 1.0);
    CHECK(support_recovery(h, CVector::Zero(63), 0.1) == 0.0);
    CVector half = CVector::Zero(63);
    half[static_cast<Eigen::Index>(h.direct.support()[0])] = 1.0;
    CHECK(support_recovery(h, half, 0.1) == 0.5);
    CHECK_THROWS_AS(support_recovery(h, h.stacked, 0.0), PreconditionError);
}

TEST_CASE("noiseless PEL recovers the dominant taps") {
    ExperimentConfig c = small_config();
    c.estimators = {EstimatorKind::pel};
    c.lambda_rule = LambdaRule::fixed;
    c.pel_coef.pel = 1e-3;
    for (std::size_t t = 0; t < 5; ++t) {
        const auto r = run_trial(c, 2, INFINITY, t);
        CHECK(r.outcomes[0].recovery == 1.0);
    }
}

TEST_CASE("noise variance from SNR") {
    CHECK(noise_var_from_snr(10.0, 36, 1.0) == doctest::Approx(3.6));
    CHECK(noise_var_from_snr(0.0, 36, 1.0) == 36.0);
    CHECK(noise_var_from_snr(INFINITY, 36, 1.0) == 0.0);
}

TEST_CASE("seed derivation") {
    CHECK(common_seed(1, 10.0, 3) == common_seed(1, 10.0, 3));
    CHECK(common_seed(1, 10.0, 3) != common_seed(1, 10.0, 4));
    CHECK(common_seed(1, 10.0, 3) != common_seed(1, 15.0, 3));
    CHECK(common_seed(1, 10.0, 3) != common_seed(2, 10.0, 3));
    CHECK(direct_seed(1, 2, 10.0, 3) != direct_seed(1, 4, 10.0, 3));
    CHECK(common_seed(1, 0.0, 0) == common_seed(1, -0.0, 0));
}

TEST_CASE("instances share training and relay links across K") {
    const ExperimentConfig c = small_config();
    const auto a = make_instance(c, 2, 10.0, 5);
    const auto b = make_instance(c, 8, 10.0, 5);
    CHECK(a.x.samples == b.x.samples);
    CHECK(a.h.cascaded.taps() == b.h.cascaded.taps());
    CHECK(a.h.direct.support().size() == 2);
    CHECK(b.h.direct.support().size() == 8);
}

TEST_CASE("run_trial is deterministic") {
    const ExperimentConfig c = small_config();
    const auto a = run_trial(c, 2, 10.0, 7);
    const auto b = run_trial(c, 2, 10.0, 7);
    REQUIRE(a.outcomes.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a.outcomes[i].kind == b.outcomes[i].kind);
        CHECK(a.outcomes[i].error_energy == b.outcomes[i].error_energy);
        CHECK(a.outcomes[i].recovery == b.outcomes[i].recovery);
        CHECK(a.outcomes[i].recovered == b.outcomes[i].recovered);
        CHECK(a.outcomes[i].error_energy >= 0.0);
    }
    CHECK(a.seed == b.seed);
}

TEST_CASE("noiseless trial: LS exact and every estimator collapses to LS") {
    const ExperimentConfig c = small_config();
    for (std::size_t t = 0; t < 3; ++t) {
        const auto r = run_trial(c, 2, INFINITY, t);
        const double ls = r.outcomes[0].error_energy;
        CHECK(ls < 1e-12);
        for (const auto& o : r.outcomes) CHECK(std::sqrt(o.error_energy) < 1e-6);
    }
    const auto inst = make_instance(c, 2, INFINITY, 0);
    for (auto k : c.estimators) {
        const auto s = resolve_estimator(c, k, inst.measurement.noise_var);
        CHECK(s.lambda_sel == 0.0);
        CHECK(s.lambda_pel == 0.0);
    }
}

TEST_CASE("resolve_estimator applies the lambda rule") {
    ExperimentConfig c;
    c.sel_coef.sel = 2.0;
    c.iel_coef = {0.5, 1.5};
    const auto sel = resolve_estimator(c, EstimatorKind::sel, 4.0);
    CHECK(sel.lambda_sel == doctest::Approx(2.0 * 2.0 * std::log(36.0)));
    CHECK(sel.lambda_pel == 0.0);
    const auto iel = resolve_estimator(c, EstimatorKind::iel, 4.0);
    CHECK(iel.lambda_sel == doctest::Approx(0.5 * 2.0 * std::log(36.0)));
    CHECK(iel.lambda_pel == doctest::Approx(1.5 * 2.0 * std::log(36.0)));
    c.lambda_rule = LambdaRule::fixed;
    CHECK(resolve_estimator(c, EstimatorKind::sel, 4.0).lambda_sel == 2.0);
}

TEST_CASE("single-trial sweep equals the trial report") {
    ExperimentConfig c = small_config();
    c.trials = 1;
    const auto rep = snr_sweep(c);
    const auto tr = run_trial(c, 2, 10.0, 0);
    REQUIRE(rep.rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rep.rows[i].estimator == tr.outcomes[i].kind);
        CHECK(rep.rows[i].avg_mse == tr.outcomes[i].error_energy / 63.0);
        CHECK(rep.rows[i].recovery_prob == tr.outcomes[i].recovery);
        CHECK(rep.rows[i].std_err == 0.0);
        CHECK(rep.rows[i].trials == 1);
    }
}

TEST_CASE("sweep output does not depend on the worker count") {
    ExperimentConfig c = small_config();
    c.k_list = {2, 4};
    c.snr_db_list = {5.0, 20.0};
    c.trials = 12;
    c.threads = 1;
    const auto one = report_csv(snr_sweep(c));
    c.threads = 3;
    CHECK(report_csv(snr_sweep(c)) == one);
}

TEST_CASE("sweep rows are sane") {
    ExperimentConfig c = small_config();
    c.k_list = {2};
    c.snr_db_list = {0.0, 10.0, 20.0, 30.0};
    c.trials = 100;
    const auto rep = snr_sweep(c);
    CHECK(rep.rows.size() == 16);
    for (const auto& r : rep.rows) {
        CHECK(r.avg_mse >= 0.0);
        CHECK(r.recovery_prob >= 0.0);
        CHECK(r.recovery_prob <= 1.0);
        CHECK(r.trials == 100);
    }
    // Non-increasing in SNR, allowing one standard error.
    for (auto e : c.estimators) {
        for (std::size_t i = 1; i < c.snr_db_list.size(); ++i) {
            const auto& lo = rep.at(2, c.snr_db_list[i - 1], e);
            const auto& hi = rep.at(2, c.snr_db_list[i], e);
            CHECK(hi.avg_mse <= lo.avg_mse + hi.std_err + lo.std_err);
        }
    }
    CHECK_THROWS_AS(rep.at(3, 0.0, EstimatorKind::ls), std::out_of_range);
}

TEST_CASE("trial failures carry cell context") {
    ExperimentConfig c = small_config();
    try {
        run_trial(c, 40, 10.0, 3);
        FAIL("expected failure");
    } catch (const PreconditionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("trial 3") != std::string::npos);
        CHECK(msg.find("K=40") != std::string::npos);
    }
}

TEST_CASE("calibration") {
    ExperimentConfig c = small_config();
    c.calibration_trials = 10;

    SUBCASE("single grid value") {
        const auto r = calibrate_lambda(c, {1.25});
        REQUIRE(r.chosen.size() == 3);
        for (const auto& p : r.chosen) {
            if (p.kind != EstimatorKind::pel) CHECK(p.coef.sel == 1.25);
            if (p.kind != EstimatorKind::sel) CHECK(p.coef.pel == 1.25);
        }
        CHECK(r.calibrated.sel_coef.sel == 1.25);
        CHECK(r.calibrated.iel_coef.pel == 1.25);
    }
    SUBCASE("zero grid collapses to LS") {
        const auto r = calibrate_lambda(c, {0.0});
        double ls = 0.0;
        for (std::size_t t = 0; t < 10; ++t) ls += run_trial(c, 2, 10.0, t).outcomes[0].error_energy;
        ls /= 10.0 * 63.0;
        for (const auto& p : r.chosen) CHECK(std::abs(p.avg_mse / ls - 1.0) < 1e-6);
    }
    SUBCASE("rerun is reproducible") {
        const std::vector<double> grid{0.5, 1.0, 2.0};
        const auto a = calibrate_lambda(c, grid);
        const auto b = calibrate_lambda(c, grid);
        CHECK(a.table.size() == 3 + 3 + 9);
        for (std::size_t i = 0; i < a.chosen.size(); ++i) {
            CHECK(a.chosen[i].coef.sel == b.chosen[i].coef.sel);
            CHECK(a.chosen[i].coef.pel == b.chosen[i].coef.pel);
            CHECK(a.chosen[i].avg_mse == b.chosen[i].avg_mse);
        }
        // The chosen point is the minimum of its estimator's table.
        for (const auto& ch : a.chosen)
            for (const auto& p : a.table)
                if (p.kind == ch.kind) CHECK(ch.avg_mse <= p.avg_mse);
    }
    CHECK_THROWS_AS(calibrate_lambda(c, {}), PreconditionError);
}

TEST_CASE("report emission") {
    const auto dir = std::filesystem::temp_directory_path() / "afcest_harness_test";
    std::filesystem::create_directories(dir);
    ExperimentConfig c = small_config();

    SweepReport empty;
    emit_report(empty, dir / "empty.csv", c);
    CHECK(slurp(dir / "empty.csv") == std::string(csv_header) + "\n");
    CHECK(std::filesystem::exists(dir / "empty.csv.manifest.json"));
    CHECK(slurp(dir / "empty.csv.manifest.json").find("\"master_seed\"") != std::string::npos);

    SweepReport one;
    one.rows.push_back({2, 10.0, EstimatorKind::iel, 1.0 / 3.0, 0.1, 0.5, 500});
    const auto text = report_csv(one);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);

    c.trials = 5;
    c.snr_db_list = {5.0, INFINITY};
    const auto rep = snr_sweep(c);
    emit_report(rep, dir / "rt.csv", c);
    const auto back = parse_report_csv(slurp(dir / "rt.csv"));
    REQUIRE(back.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(back.rows[i].k == rep.rows[i].k);
        CHECK(back.rows[i].snr_db == rep.rows[i].snr_db);
        CHECK(back.rows[i].estimator == rep.rows[i].estimator);
        CHECK(back.rows[i].avg_mse == rep.rows[i].avg_mse);
        CHECK(back.rows[i].std_err == rep.rows[i].std_err);
        CHECK(back.rows[i].recovery_prob == rep.rows[i].recovery_prob);
        CHECK(back.rows[i].trials == rep.rows[i].trials);
    }

    try {
        emit_report(rep, dir / "missing_dir" / "x.csv", c);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("missing_dir") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

}
