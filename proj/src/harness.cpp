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

#include "afcest/afsim.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cerrno>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <cstring>
#include <thread>

namespace afcest {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. If any call
// throws, the exception of the smallest failing index is rethrown.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::vector<std::exception_ptr> errors(count);
    auto work = [&](std::atomic<std::size_t>& next) {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::atomic<std::size_t> next{0};
    if (threads <= 1) {
        work(next);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back([&] { work(next); });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
    try {
        throw;
    } catch (const PreconditionError& e) {
        throw PreconditionError(context + ": " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }
}

std::string cell_name(std::size_t k, double snr_db) {
    return "K=" + std::to_string(k) + " snr_db=" + format_double(snr_db);
}

double lambda_from_coef(const ExperimentConfig& cfg, double coef, double noise_var) {
    if (cfg.lambda_rule == LambdaRule::fixed) return coef;
    if (coef == 0.0 || noise_var == 0.0) return 0.0;
    return lambda_default(std::sqrt(noise_var), cfg.n, coef);
}

EstimatorSpec spec_from_coef(const ExperimentConfig& cfg, EstimatorKind kind, const LambdaCoefficients& c,
                             double noise_var) {
    EstimatorSpec s;
    s.kind = kind;
    s.tol = cfg.tol;
    s.max_iter = cfg.max_iter;
    if (kind == EstimatorKind::sel || kind == EstimatorKind::iel) s.lambda_sel = lambda_from_coef(cfg, c.sel, noise_var);
    if (kind == EstimatorKind::pel || kind == EstimatorKind::iel) s.lambda_pel = lambda_from_coef(cfg, c.pel, noise_var);
    return s;
}

std::uint64_t snr_bits(double snr_db) { return std::bit_cast<std::uint64_t>(snr_db + 0.0); }

} // namespace

double average_mse(const CompositeChannel& h, const CVector& h_hat, std::size_t direct_length) {
    const auto p = static_cast<Eigen::Index>(2 * direct_length - 1);
    detail::require(h.stacked.size() == p && h_hat.size() == p, "average_mse: vectors must have length 2L-1");
    return (h.stacked - h_hat).squaredNorm() / static_cast<double>(p);
}

std::vector<std::size_t> recovered_support(const CVector& h_hat, std::size_t direct_length, double threshold) {
    detail::require(threshold > 0.0, "support threshold must be positive");
    detail::require(static_cast<std::size_t>(h_hat.size()) >= direct_length, "estimate shorter than the direct link");
    const auto l = static_cast<Eigen::Index>(direct_length);
    const double peak = h_hat.head(l).cwiseAbs().maxCoeff();
    std::vector<std::size_t> out;
    if (peak == 0.0) return out;
    for (Eigen::Index i = 0; i < l; ++i)
        if (std::abs(h_hat[i]) >= threshold * peak) out.push_back(static_cast<std::size_t>(i));
    return out;
}

double support_recovery(const CompositeChannel& h, const CVector& h_hat, double threshold) {
    const auto& truth = h.direct.support();
    const auto found = recovered_support(h_hat, h.direct_length(), threshold);
    if (truth.empty()) return 1.0;
    std::size_t hits = 0;
    for (auto i : truth)
        if (std::binary_search(found.begin(), found.end(), i)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double noise_var_from_snr(double snr_db, std::size_t n, double unit_power) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    return static_cast<double>(n) * unit_power / std::pow(10.0, snr_db / 10.0);
}

EstimatorSpec resolve_estimator(const ExperimentConfig& cfg, EstimatorKind kind, double noise_var) {
    return spec_from_coef(cfg, kind, cfg.coefficients(kind), noise_var);
}

std::uint64_t common_seed(std::uint64_t master_seed, double snr_db, std::size_t trial_index) {
    return mix64(mix64(mix64(master_seed) ^ snr_bits(snr_db)) ^ static_cast<std::uint64_t>(trial_index));
}

std::uint64_t direct_seed(std::uint64_t master_seed, std::size_t k, double snr_db, std::size_t trial_index) {
    return mix64(common_seed(master_seed, snr_db, trial_index) ^ mix64(0xd1ec7ULL + static_cast<std::uint64_t>(k)));
}

TrialInstance make_instance(const ExperimentConfig& cfg, std::size_t k, double snr_db, std::size_t trial_index) {
    detail::require(k >= 1 && k <= cfg.l, "K must lie in [1, L]");
    Rng common(common_seed(cfg.master_seed, snr_db, trial_index));
    Rng direct(direct_seed(cfg.master_seed, k, snr_db, trial_index));

    const std::size_t l = cfg.l;
    Channel h_sd = gen_channel(ChannelSpec::sparse(l, k), direct);
    Channel h_sr = gen_channel(ChannelSpec::dense(l / 2), common);
    Channel h_rd = gen_channel(ChannelSpec::dense(l / 2), common);
    TrainingSequence x = gen_training(cfg.n, cfg.unit_power, common, cfg.training);

    const double noise_var = noise_var_from_snr(snr_db, cfg.n, cfg.unit_power);
    const double ps = static_cast<double>(cfg.n) * cfg.unit_power;
    // The printed gain is undefined without noise; fall back to its noiseless limit.
    const BetaRule rule = noise_var > 0.0 ? cfg.beta_rule : BetaRule::signal_power;
    const double beta = amplification_factor(ps, ps, noise_var, rule);

    SlotObservations obs = simulate_two_slot(h_sd, h_sr, h_rd, x, noise_var, beta, common);
    Measurement m = to_frequency_model(obs, x, l);
    CompositeChannel h = compose(h_sd, cascade(h_sr, h_rd));
    return TrialInstance{std::move(h), std::move(h_sr), std::move(h_rd), std::move(x), std::move(obs), std::move(m)};
}

TrialReport run_trial(const ExperimentConfig& cfg, std::size_t k, double snr_db, std::size_t trial_index) {
    try {
        TrialInstance inst = make_instance(cfg, k, snr_db, trial_index);
        const LassoProblem problem(inst.measurement);
        TrialReport r;
        r.k = k;
        r.snr_db = snr_db;
        r.trial_index = trial_index;
        r.seed = common_seed(cfg.master_seed, snr_db, trial_index);
        for (auto kind : cfg.estimators) {
            const Estimate est = estimate(problem, resolve_estimator(cfg, kind, inst.measurement.noise_var));
            EstimatorOutcome o;
            o.kind = kind;
            o.error_energy = (inst.h.stacked - est.h_hat).squaredNorm();
            o.recovered = recovered_support(est.h_hat, cfg.l, cfg.support_threshold);
            o.recovery = support_recovery(inst.h, est.h_hat, cfg.support_threshold);
            o.iterations = est.iterations;
            o.converged = est.converged;
            r.outcomes.push_back(std::move(o));
        }
        return r;
    } catch (...) {
        rethrow_with_context("trial " + std::to_string(trial_index) + " at " + cell_name(k, snr_db));
    }
}

const SweepRow& SweepReport::at(std::size_t k, double snr_db, EstimatorKind e) const {
    for (const auto& r : rows)
        if (r.k == k && r.snr_db == snr_db && r.estimator == e) return r;
    throw std::out_of_range("no sweep row for " + cell_name(k, snr_db) + " estimator " + std::string(to_string(e)));
}

std::vector<SweepRow> aggregate_cell(const std::vector<TrialReport>& trials, std::size_t direct_length) {
    std::vector<SweepRow> rows;
    if (trials.empty()) return rows;
    const double p = static_cast<double>(2 * direct_length - 1);
    const std::size_t t = trials.size();
    for (std::size_t e = 0; e < trials.front().outcomes.size(); ++e) {
        double sum = 0.0, rec = 0.0;
        for (const auto& tr : trials) {
            sum += tr.outcomes[e].error_energy / p;
            rec += tr.outcomes[e].recovery;
        }
        const double mean = sum / static_cast<double>(t);
        double ss = 0.0;
        for (const auto& tr : trials) {
            const double d = tr.outcomes[e].error_energy / p - mean;
            ss += d * d;
        }
        SweepRow row;
        row.k = trials.front().k;
        row.snr_db = trials.front().snr_db;
        row.estimator = trials.front().outcomes[e].kind;
        row.avg_mse = mean;
        row.std_err = t > 1 ? std::sqrt(ss / static_cast<double>(t - 1) / static_cast<double>(t)) : 0.0;
        row.recovery_prob = rec / static_cast<double>(t);
        row.trials = t;
        rows.push_back(row);
    }
    return rows;
}

SweepReport snr_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepReport report;
    for (auto k : cfg.k_list) {
        for (auto snr : cfg.snr_db_list) {
            std::vector<TrialReport> trials(cfg.trials);
            try {
                parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) { trials[i] = run_trial(cfg, k, snr, i); });
            } catch (...) {
                rethrow_with_context("sweep aborted in cell " + cell_name(k, snr));
            }
            auto rows = aggregate_cell(trials, cfg.l);
            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        }
    }
    return report;
}

CalibrationResult calibrate_lambda(const ExperimentConfig& cfg, const std::vector<double>& grid) {
    cfg.validate();
    detail::require(!grid.empty(), "calibration grid must not be empty");
    for (auto g : grid) detail::require(g >= 0.0, "calibration grid values must be nonnegative");

    std::vector<CalibrationPoint> points;
    for (auto kind : cfg.estimators) {
        switch (kind) {
        case EstimatorKind::ls: break;
        case EstimatorKind::sel:
            for (auto g : grid) points.push_back({kind, {g, 0.0}, 0.0});
            break;
        case EstimatorKind::pel:
            for (auto g : grid) points.push_back({kind, {0.0, g}, 0.0});
            break;
        case EstimatorKind::iel:
            for (auto gs : grid)
                for (auto gp : grid) points.push_back({kind, {gs, gp}, 0.0});
            break;
        }
    }

    const std::size_t trials = cfg.calibration_trials ? cfg.calibration_trials : cfg.trials;
    const std::size_t k = cfg.calibration_k;
    const double snr = cfg.calibration_snr_db;
    std::vector<std::vector<double>> err(trials, std::vector<double>(points.size()));
    try {
        parallel_for(trials, cfg.threads, [&](std::size_t t) {
            const TrialInstance inst = make_instance(cfg, k, snr, t);
            const LassoProblem problem(inst.measurement);
            for (std::size_t j = 0; j < points.size(); ++j) {
                const auto spec = spec_from_coef(cfg, points[j].kind, points[j].coef, inst.measurement.noise_var);
                err[t][j] = (inst.h.stacked - estimate(problem, spec).h_hat).squaredNorm();
            }
        });
    } catch (...) {
        rethrow_with_context("calibration at " + cell_name(k, snr));
    }

    const double p = static_cast<double>(2 * cfg.l - 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < trials; ++t) s += err[t][j];
        points[j].avg_mse = s / static_cast<double>(trials) / p;
    }

    CalibrationResult out;
    out.calibrated = cfg;
    for (auto kind : cfg.estimators) {
        const CalibrationPoint* best = nullptr;
        for (const auto& pt : points)
            if (pt.kind == kind && (!best || pt.avg_mse < best->avg_mse)) best = &pt;
        if (!best) continue;
        out.chosen.push_back(*best);
        auto& c = out.calibrated.coefficients(kind);
        if (kind != EstimatorKind::pel) c.sel = best->coef.sel;
        if (kind != EstimatorKind::sel) c.pel = best->coef.pel;
    }
    out.table = std::move(points);
    return out;
}

std::string report_csv(const SweepReport& report) {
    std::string out = std::string(csv_header) + "\n";
    for (const auto& r : report.rows) {
        out += std::to_string(r.k) + ',' + format_double(r.snr_db) + ',' + std::string(to_string(r.estimator)) + ',' +
               format_double(r.avg_mse) + ',' + format_double(r.std_err) + ',' + format_double(r.recovery_prob) + ',' +
               std::to_string(r.trials) + '\n';
    }
    return out;
}

SweepReport parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header) throw PreconditionError("CSV: missing or unexpected header");
    SweepReport report;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
        if (f.size() != 7) throw PreconditionError("CSV line " + std::to_string(line_no) + ": expected 7 fields");
        SweepRow r;
        r.k = static_cast<std::size_t>(std::stoull(f[0]));
        r.snr_db = parse_double(f[1]);
        r.estimator = parse_estimator(f[2]);
        r.avg_mse = parse_double(f[3]);
        r.std_err = parse_double(f[4]);
        r.recovery_prob = parse_double(f[5]);
        r.trials = static_cast<std::size_t>(std::stoull(f[6]));
        report.rows.push_back(r);
    }
    return report;
}

std::string run_manifest(const ExperimentConfig& cfg) {
    nlohmann::ordered_json config;
    std::istringstream in(to_config_text(cfg));
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) config[line.substr(0, eq)] = line.substr(eq + 3);
    }
    nlohmann::ordered_json j;
    j["tool"] = "afcest";
    j["version"] = version_string;
    j["master_seed"] = cfg.master_seed;
    j["seed_derivation"] = "splitmix64(master_seed, snr_db bits, trial) shared; direct link additionally keyed by K";
    j["config"] = config;
    j["csv_header"] = csv_header;
    j["versions"] = {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"compiler", __VERSION__},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    return j.dump(2) + "\n";
}

void emit_report(const SweepReport& report, const std::filesystem::path& path, const ExperimentConfig& cfg) {
    auto write = [](const std::filesystem::path& p, const std::string& body) {
        std::ofstream f(p, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + p.string() + "' for writing: " + std::strerror(errno));
        f << body;
        f.flush();
        if (!f) throw IoError("write failed for '" + p.string() + "': " + std::strerror(errno));
    };
    write(path, report_csv(report));
    write(std::filesystem::path(path.string() + ".manifest.json"), run_manifest(cfg));
}

} // namespace afcest
