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

#ifndef AFCEST_SOLVERS_HPP
#define AFCEST_SOLVERS_HPP

#include "afcest/afsim.hpp"
#include "afcest/types.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace afcest {

enum class EstimatorKind { ls, sel, pel, iel };

std::string_view to_string(EstimatorKind kind);
/// Accepts LS/SEL/PEL/IEL in any case.
EstimatorKind parse_estimator(std::string_view name);

struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::ls;
    double lambda_sel = 0.0;
    double lambda_pel = 0.0;
    double tol = 1e-8;
    int max_iter = 10000;

    void validate() const;
};

struct Estimate {
    CVector h_hat;
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;
};

/// Per-coordinate l1 weights for a composite channel with direct length L.
///   SEL: lambda_sel everywhere
///   PEL: lambda_pel on [0, L), zero on the cascaded block
///   IEL: lambda_sel + lambda_pel on [0, L), lambda_sel on the cascaded block
/// LS yields all zeros.
RVector penalty_weights(EstimatorKind kind, double lambda_sel, double lambda_pel, std::size_t direct_length);

/// Complex soft threshold: shrinks the modulus by t, keeps the phase.
inline cplx soft_threshold(cplx z, double t) {
    const double a = std::abs(z);
    if (a <= t) return {0.0, 0.0};
    return z * ((a - t) / a);
}

/// 0.5 ||y - X h||^2 + sum_i lambda_i |h_i|
double lasso_objective(const CMatrix& X, const CVector& y, const CVector& h, const RVector& lambda);
inline double lasso_objective(const Measurement& m, const CVector& h, const RVector& lambda) {
    return lasso_objective(m.X, m.y, h, lambda);
}

struct LassoOptions {
    double tol = 1e-8;
    int max_iter = 10000;
    /// Starting point; zero when empty. The minimiser does not depend on it
    /// when X has full column rank.
    CVector start;
    /// When set, receives the objective after every sweep (index 0 = start).
    std::vector<double>* objective_trace = nullptr;
};

/// Caches the Gram matrix, X^H y and a QR factorisation so that several
/// estimators can share one measurement.
class LassoProblem {
public:
    explicit LassoProblem(Measurement m);

    const Measurement& measurement() const noexcept { return m_; }

    /// Least-squares solution through column-pivoted Householder QR.
    /// Throws PreconditionError when X is rank deficient.
    Estimate least_squares() const;

    /// Cyclic coordinate descent on the weighted-l1 objective. Zero columns are
    /// pinned at zero; negative weights are rejected.
    Estimate solve(const RVector& lambda, const LassoOptions& opts = {}) const;

private:
    Measurement m_;
    CMatrix gram_;
    CVector xty_;
};

Estimate ls_estimate(const Measurement& m);
Estimate weighted_lasso(const Measurement& m, const RVector& lambda_eff, double tol = 1e-8, int max_iter = 10000);
Estimate sel_estimate(const Measurement& m, double lambda_sel, double tol = 1e-8, int max_iter = 10000);
Estimate pel_estimate(const Measurement& m, double lambda_pel, double tol = 1e-8, int max_iter = 10000);
Estimate iel_estimate(const Measurement& m, double lambda_sel, double lambda_pel, double tol = 1e-8,
                      int max_iter = 10000);

/// Dispatch on spec.kind.
Estimate estimate(const Measurement& m, const EstimatorSpec& spec);
Estimate estimate(const LassoProblem& p, const EstimatorSpec& spec, const CVector& start = {});

/// c0 * sigma_n * ln(N).
double lambda_default(double noise_std, std::size_t n, double c0);

/// Max violation of the weighted-l1 optimality conditions at est.h_hat:
/// |g_i + lambda_i h_i/|h_i|| on the support, max(|g_i| - lambda_i, 0) off it,
/// with g = X^H (X h - y). Zero iff h is a minimiser.
double kkt_residual(const Measurement& m, const Estimate& est, const RVector& lambda_eff);

} // namespace afcest

#endif // AFCEST_SOLVERS_HPP
