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

#include <cmath>
#include <numbers>
#include <string>

namespace afcest {

namespace {

cplx twiddle(std::size_t k, std::size_t n) {
    // Reduce k mod n first so the angle stays small and exact for integer k.
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
    return std::polar(1.0, angle);
}

CVector add_noise(CVector v, double noise_var, Rng& rng) {
    if (noise_var > 0.0)
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += complex_gaussian(rng, noise_var);
    return v;
}

} // namespace

TrainingSequence gen_training(std::size_t n, double unit_power, Rng& rng, TrainingKind kind) {
    detail::require(n >= 1, "training length must be at least 1");
    detail::require(unit_power > 0.0, "training unit power must be positive");
    CVector s(static_cast<Eigen::Index>(n));
    if (kind == TrainingKind::qpsk) {
        const double a = std::sqrt(unit_power / 2.0);
        std::uniform_int_distribution<int> bit(0, 1);
        for (auto& v : s) {
            const int b0 = bit(rng);
            const int b1 = bit(rng);
            v = cplx(b0 ? a : -a, b1 ? a : -a);
        }
    } else {
        for (auto& v : s) v = complex_gaussian(rng, unit_power);
    }
    return TrainingSequence{std::move(s), unit_power};
}

CMatrix unitary_dft(std::size_t n) {
    detail::require(n >= 1, "DFT size must be at least 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k)
            f(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = scale * twiddle(m * k, n);
    return f;
}

CVector circulant_apply(const CVector& h, const CVector& x) {
    const Eigen::Index n = x.size();
    detail::require(h.size() >= 1, "channel must have at least one tap");
    detail::require(h.size() <= n, "channel length " + std::to_string(h.size()) + " exceeds block length " +
                                       std::to_string(n));
    CVector out = CVector::Zero(n);
    for (Eigen::Index l = 0; l < h.size(); ++l) {
        const cplx hl = h[l];
        if (hl == cplx(0.0, 0.0)) continue;
        for (Eigen::Index i = 0; i < n; ++i) out[(i + l) % n] += hl * x[i];
    }
    return out;
}

CVector circulant_apply(const Channel& h, const CVector& x) { return circulant_apply(h.taps(), x); }

CVector frequency_response(const Channel& h, std::size_t n) {
    detail::require(h.size() <= n, "channel longer than DFT size");
    CVector r = CVector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < h.size(); ++l)
            r[static_cast<Eigen::Index>(k)] += h.taps()[static_cast<Eigen::Index>(l)] * twiddle(k * l, n);
    return r;
}

double amplification_factor(double relay_power, double source_power, double noise_var, BetaRule rule) {
    detail::require(relay_power > 0.0, "relay power must be positive");
    detail::require(source_power > 0.0, "source power must be positive");
    detail::require(noise_var >= 0.0, "noise variance must be nonnegative");
    const double denom = rule == BetaRule::as_printed ? noise_var * source_power + noise_var : source_power + noise_var;
    detail::require(denom > 0.0, "amplification factor denominator is zero (noise_var = 0 with the printed rule)");
    return std::sqrt(relay_power / denom);
}

SlotObservations simulate_two_slot(const Channel& h_sd, const Channel& h_sr, const Channel& h_rd,
                                   const TrainingSequence& x, double noise_var, double beta, Rng& rng) {
    const std::size_t n = x.size();
    detail::require(n >= 1, "empty training sequence");
    detail::require(h_sd.size() <= n && h_sr.size() <= n && h_rd.size() <= n,
                    "every channel must be no longer than the training sequence");
    detail::require(h_sr.size() + h_rd.size() - 1 <= n, "cascaded channel longer than the training sequence");
    detail::require(noise_var >= 0.0, "noise variance must be nonnegative");
    detail::require(beta > 0.0, "amplification factor must be positive");

    SlotObservations obs;
    obs.beta = beta;
    obs.noise_var = noise_var;
    obs.y_d1 = add_noise(circulant_apply(h_sd, x.samples), noise_var, rng);
    const CVector y_r1 = add_noise(circulant_apply(h_sr, x.samples), noise_var, rng);
    obs.y_d2 = add_noise(beta * circulant_apply(h_rd, y_r1), noise_var, rng);
    return obs;
}

CMatrix build_measurement_matrix(const TrainingSequence& x, std::size_t direct_length) {
    const std::size_t n = x.size();
    const std::size_t l = direct_length;
    detail::require(l >= 2 && l % 2 == 0, "direct-link length must be even and at least 2");
    detail::require(l <= n, "direct-link length " + std::to_string(l) + " exceeds training length " +
                                std::to_string(n));

    const CMatrix f = unitary_dft(n);
    const CVector fx = f * x.samples;
    const double root_n = std::sqrt(static_cast<double>(n));
    const auto ni = static_cast<Eigen::Index>(n);
    const auto li = static_cast<Eigen::Index>(l);

    CMatrix out = CMatrix::Zero(2 * ni, 2 * li - 1);
    const CMatrix top = (root_n * fx).asDiagonal() * f.leftCols(li);
    out.topLeftCorner(ni, li) = top;
    out.bottomRightCorner(ni, li - 1) = top.leftCols(li - 1);
    return out;
}

Measurement to_frequency_model(const SlotObservations& obs, const TrainingSequence& x, std::size_t direct_length) {
    const auto n = static_cast<Eigen::Index>(x.size());
    detail::require(obs.y_d1.size() == n && obs.y_d2.size() == n,
                    "slot observations must have the training length");
    const CMatrix f = unitary_dft(x.size());
    Measurement m;
    m.X = build_measurement_matrix(x, direct_length);
    m.X.bottomRows(n) *= obs.beta;
    m.y.resize(2 * n);
    m.y << f * obs.y_d1, f * obs.y_d2;
    m.noise_var = obs.noise_var;
    return m;
}

} // namespace afcest
