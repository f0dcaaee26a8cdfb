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

#include "afcest/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace afcest {

std::string_view to_string(EstimatorKind kind) {
    switch (kind) {
    case EstimatorKind::ls: return "LS";
    case EstimatorKind::sel: return "SEL";
    case EstimatorKind::pel: return "PEL";
    case EstimatorKind::iel: return "IEL";
    }
    return "?";
}

EstimatorKind parse_estimator(std::string_view name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "LS") return EstimatorKind::ls;
    if (up == "SEL") return EstimatorKind::sel;
    if (up == "PEL") return EstimatorKind::pel;
    if (up == "IEL") return EstimatorKind::iel;
    throw PreconditionError("unknown estimator '" + std::string(name) + "' (expected LS, SEL, PEL or IEL)");
}

void EstimatorSpec::validate() const {
    detail::require(lambda_sel >= 0.0 && lambda_pel >= 0.0, "regularisation parameters must be nonnegative");
    detail::require(tol > 0.0, "tolerance must be positive");
    detail::require(max_iter >= 1, "max_iter must be at least 1");
}

RVector penalty_weights(EstimatorKind kind, double lambda_sel, double lambda_pel, std::size_t direct_length) {
    detail::require(direct_length >= 1, "direct length must be positive");
    const auto l = static_cast<Eigen::Index>(direct_length);
    RVector w = RVector::Zero(2 * l - 1);
    switch (kind) {
    case EstimatorKind::ls: break;
    case EstimatorKind::sel: w.setConstant(lambda_sel); break;
    case EstimatorKind::pel: w.head(l).setConstant(lambda_pel); break;
    case EstimatorKind::iel:
        w.setConstant(lambda_sel);
        w.head(l).array() += lambda_pel;
        break;
    }
    return w;
}

double lasso_objective(const CMatrix& X, const CVector& y, const CVector& h, const RVector& lambda) {
    detail::require(h.size() == X.cols() && lambda.size() == X.cols() && y.size() == X.rows(),
                    "objective: dimension mismatch");
    return 0.5 * (y - X * h).squaredNorm() + lambda.dot(h.cwiseAbs());
}

LassoProblem::LassoProblem(Measurement m) : m_(std::move(m)) {
    detail::require(m_.y.size() == m_.X.rows(), "measurement: y length must equal the row count of X");
    gram_ = m_.X.adjoint() * m_.X;
    xty_ = m_.X.adjoint() * m_.y;
}

Estimate LassoProblem::least_squares() const {
    Eigen::ColPivHouseholderQR<CMatrix> qr(m_.X);
    const auto cols = m_.X.cols();
    if (qr.rank() < cols)
        throw PreconditionError("least squares: X is rank deficient (rank " + std::to_string(qr.rank()) + " < " +
                                std::to_string(cols) + " columns)");
    Estimate e;
    e.h_hat = qr.solve(m_.y);
    e.converged = true;
    e.objective = 0.5 * (m_.y - m_.X * e.h_hat).squaredNorm();
    return e;
}

Estimate LassoProblem::solve(const RVector& lambda, const LassoOptions& opts) const {
    const Eigen::Index p = m_.X.cols();
    detail::require(lambda.size() == p, "penalty vector length must equal the column count of X");
    detail::require((lambda.array() >= 0.0).all(), "penalty weights must be nonnegative");
    detail::require(opts.tol > 0.0, "tolerance must be positive");
    detail::require(opts.max_iter >= 1, "max_iter must be at least 1");

    CVector h = CVector::Zero(p);
    if (opts.start.size() != 0) {
        detail::require(opts.start.size() == p, "start vector has the wrong length");
        h = opts.start;
    }
    // q = X^H (y - X h); coordinate i sees rho_i = q_i + G_ii h_i.
    CVector q = xty_ - gram_ * h;

    auto record = [&] {
        if (opts.objective_trace) opts.objective_trace->push_back(lasso_objective(m_.X, m_.y, h, lambda));
    };
    if (opts.objective_trace) opts.objective_trace->clear();
    record();

    Estimate e;
    for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index i = 0; i < p; ++i) {
            const double gii = gram_(i, i).real();
            const cplx old = h[i];
            cplx next{0.0, 0.0};
            if (gii > 0.0) next = soft_threshold(q[i] + gii * old, lambda[i]) / gii;
            const cplx delta = next - old;
            if (delta == cplx(0.0, 0.0)) continue;
            h[i] = next;
            q.noalias() -= gram_.col(i) * delta;
            max_change = std::max(max_change, std::abs(delta));
        }
        e.iterations = sweep;
        record();
        if (max_change < opts.tol) {
            e.converged = true;
            break;
        }
    }
    e.h_hat = std::move(h);
    e.objective = lasso_objective(m_.X, m_.y, e.h_hat, lambda);
    return e;
}

Estimate ls_estimate(const Measurement& m) { return LassoProblem(m).least_squares(); }

Estimate weighted_lasso(const Measurement& m, const RVector& lambda_eff, double tol, int max_iter) {
    LassoOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    return LassoProblem(m).solve(lambda_eff, o);
}

Estimate sel_estimate(const Measurement& m, double lambda_sel, double tol, int max_iter) {
    return estimate(m, EstimatorSpec{EstimatorKind::sel, lambda_sel, 0.0, tol, max_iter});
}

Estimate pel_estimate(const Measurement& m, double lambda_pel, double tol, int max_iter) {
    return estimate(m, EstimatorSpec{EstimatorKind::pel, 0.0, lambda_pel, tol, max_iter});
}

Estimate iel_estimate(const Measurement& m, double lambda_sel, double lambda_pel, double tol, int max_iter) {
    return estimate(m, EstimatorSpec{EstimatorKind::iel, lambda_sel, lambda_pel, tol, max_iter});
}

Estimate estimate(const Measurement& m, const EstimatorSpec& spec) { return estimate(LassoProblem(m), spec); }

Estimate estimate(const LassoProblem& p, const EstimatorSpec& spec, const CVector& start) {
    spec.validate();
    if (spec.kind == EstimatorKind::ls) return p.least_squares();
    LassoOptions o;
    o.tol = spec.tol;
    o.max_iter = spec.max_iter;
    o.start = start;
    return p.solve(penalty_weights(spec.kind, spec.lambda_sel, spec.lambda_pel, p.measurement().direct_length()), o);
}

double lambda_default(double noise_std, std::size_t n, double c0) {
    detail::require(noise_std >= 0.0, "noise standard deviation must be nonnegative");
    detail::require(n >= 2, "training length must be at least 2");
    detail::require(c0 > 0.0, "c0 must be positive");
    return c0 * noise_std * std::log(static_cast<double>(n));
}

double kkt_residual(const Measurement& m, const Estimate& est, const RVector& lambda_eff) {
    const auto& h = est.h_hat;
    detail::require(h.size() == m.X.cols() && lambda_eff.size() == m.X.cols(), "kkt: dimension mismatch");
    const CVector g = m.X.adjoint() * (m.X * h - m.y);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        const double a = std::abs(h[i]);
        const double v = a > 0.0 ? std::abs(g[i] + lambda_eff[i] * h[i] / a) : std::max(std::abs(g[i]) - lambda_eff[i], 0.0);
        worst = std::max(worst, v);
    }
    return worst;
}

} // namespace afcest
