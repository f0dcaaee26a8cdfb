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

#ifndef AFCEST_HARNESS_HPP
#define AFCEST_HARNESS_HPP

#include "afcest/channel.hpp"
#include "afcest/config.hpp"
#include "afcest/solvers.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace afcest {

/// ||h - h_hat||^2 / (2L - 1).
double average_mse(const CompositeChannel& h, const CVector& h_hat, std::size_t direct_length);

/// Indices i < L with |h_hat_i| > 0 and |h_hat_i| >= threshold * max_{j<L} |h_hat_j|.
std::vector<std::size_t> recovered_support(const CVector& h_hat, std::size_t direct_length, double threshold);

/// Fraction of the true direct-link taps that appear in recovered_support.
/// A direct link without taps counts as fully recovered.
double support_recovery(const CompositeChannel& h, const CVector& h_hat, double threshold);

/// sigma_n^2 = N P / 10^(snr/10); +inf maps to 0.
double noise_var_from_snr(double snr_db, std::size_t n, double unit_power);

/// Regularisation parameters for one estimator under the config's rule.
EstimatorSpec resolve_estimator(const ExperimentConfig& cfg, EstimatorKind kind, double noise_var);

/// Seed for the stream shared by every K at one (SNR, trial) cell: training,
/// relay links and noise.
std::uint64_t common_seed(std::uint64_t master_seed, double snr_db, std::size_t trial_index);
/// Seed for the direct link, which also depends on K.
std::uint64_t direct_seed(std::uint64_t master_seed, std::size_t k, double snr_db, std::size_t trial_index);

/// One synthesised cell instance: channels, training, and the measurement.
struct TrialInstance {
    CompositeChannel h;
    Channel h_sr;
    Channel h_rd;
    TrainingSequence x;
    SlotObservations obs;
    Measurement measurement;
};

TrialInstance make_instance(const ExperimentConfig& cfg, std::size_t k, double snr_db, std::size_t trial_index);

struct EstimatorOutcome {
    EstimatorKind kind = EstimatorKind::ls;
    double error_energy = 0.0; // ||h - h_hat||^2
    double recovery = 0.0;
    std::vector<std::size_t> recovered;
    int iterations = 0;
    bool converged = true;
};

struct TrialReport {
    std::size_t k = 0;
    double snr_db = 0.0;
    std::size_t trial_index = 0;
    std::uint64_t seed = 0; // common_seed of the cell
    std::vector<EstimatorOutcome> outcomes;
};

/// Deterministic in (cfg, k, snr_db, trial_index).
TrialReport run_trial(const ExperimentConfig& cfg, std::size_t k, double snr_db, std::size_t trial_index);

struct SweepRow {
    std::size_t k = 0;
    double snr_db = 0.0;
    EstimatorKind estimator = EstimatorKind::ls;
    double avg_mse = 0.0;
    double std_err = 0.0;
    double recovery_prob = 0.0;
    std::size_t trials = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;

    /// Throws std::out_of_range when the cell is absent.
    const SweepRow& at(std::size_t k, double snr_db, EstimatorKind e) const;
};

/// Aggregates per-trial reports of one cell in trial order.
std::vector<SweepRow> aggregate_cell(const std::vector<TrialReport>& trials, std::size_t direct_length);

/// Every (K, SNR) cell, trials run on cfg.threads workers. Output does not
/// depend on the worker count.
SweepReport snr_sweep(const ExperimentConfig& cfg);

struct CalibrationPoint {
    EstimatorKind kind = EstimatorKind::sel;
    LambdaCoefficients coef;
    double avg_mse = 0.0;
};

struct CalibrationResult {
    std::vector<CalibrationPoint> table;  // every evaluated point
    std::vector<CalibrationPoint> chosen; // best point per estimator
    ExperimentConfig calibrated;          // input config with chosen coefficients
};

/// Grid search of the lambda coefficients at (calibration_K,
/// calibration_snr_db). SEL and PEL search the grid; IEL searches the grid
/// squared. Ties keep the earliest grid point.
CalibrationResult calibrate_lambda(const ExperimentConfig& cfg, const std::vector<double>& grid);

/// Writes the CSV to path and a JSON manifest to path + ".manifest.json".
void emit_report(const SweepReport& report, const std::filesystem::path& path, const ExperimentConfig& cfg);

std::string report_csv(const SweepReport& report);
SweepReport parse_report_csv(const std::string& text);
std::string run_manifest(const ExperimentConfig& cfg);

inline constexpr const char* csv_header = "K,snr_db,estimator,avg_mse,std_err,recovery_prob,trials";
inline constexpr const char* version_string = "0.1.0";

} // namespace afcest

#endif // AFCEST_HARNESS_HPP
