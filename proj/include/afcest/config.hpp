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

#ifndef AFCEST_CONFIG_HPP
#define AFCEST_CONFIG_HPP

#include "afcest/afsim.hpp"
#include "afcest/solvers.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace afcest {

/// How per-trial regularisation parameters are derived from the configured
/// coefficients. fixed: the coefficient is lambda. theorem1: lambda =
/// coefficient * sigma_n * ln(N).
enum class LambdaRule { fixed, theorem1 };

/// Coefficients for one estimator; interpretation depends on LambdaRule.
struct LambdaCoefficients {
    double sel = 0.0;
    double pel = 0.0;
};

struct ExperimentConfig {
    std::size_t n = 36;
    std::size_t l = 32;
    std::vector<std::size_t> k_list{2, 4, 8};
    std::vector<double> snr_db_list{5.0, 10.0, 15.0, 20.0};
    std::size_t trials = 500;
    std::uint64_t master_seed = 20120506;
    std::vector<EstimatorKind> estimators{EstimatorKind::ls, EstimatorKind::sel, EstimatorKind::pel,
                                          EstimatorKind::iel};
    LambdaRule lambda_rule = LambdaRule::theorem1;
    LambdaCoefficients sel_coef{2.5, 0.0};
    LambdaCoefficients pel_coef{0.0, 2.5};
    LambdaCoefficients iel_coef{2.0, 0.25};
    TrainingKind training = TrainingKind::qpsk;
    double unit_power = 1.0;
    BetaRule beta_rule = BetaRule::as_printed;
    double support_threshold = 0.1;
    double tol = 1e-8;
    int max_iter = 10000;
    std::size_t threads = 0; // 0: hardware concurrency
    std::string output_path = "sweep.csv";

    std::size_t calibration_k = 2;
    double calibration_snr_db = 10.0;
    std::size_t calibration_trials = 0; // 0: same as trials
    std::vector<double> calibration_grid{0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};

    std::size_t ric_order = 2;
    std::uint64_t ric_budget = 100000;

    /// Throws PreconditionError naming the offending field.
    void validate() const;

    /// Coefficients configured for one estimator (zero for LS).
    LambdaCoefficients& coefficients(EstimatorKind kind);
    const LambdaCoefficients& coefficients(EstimatorKind kind) const;
};

/// Parses the flat "key = value" format. Lines are trimmed; '#' starts a
/// comment; lists are comma separated. Unknown or repeated keys are errors.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws IoError naming the path if unreadable.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Emits every key in the canonical order, so parse_config(to_config_text(c))
/// reproduces c exactly.
std::string to_config_text(const ExperimentConfig& cfg);

/// Shortest decimal string that parses back to exactly x ("inf" for +inf).
std::string format_double(double x);
/// Strict parse of a whole string; accepts "inf"/"+inf".
double parse_double(std::string_view s);

} // namespace afcest

#endif // AFCEST_CONFIG_HPP
