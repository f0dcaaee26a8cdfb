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

#ifndef AFCEST_AFSIM_HPP
#define AFCEST_AFSIM_HPP

#include "afcest/channel.hpp"
#include "afcest/types.hpp"

#include <cstddef>

namespace afcest {

enum class TrainingKind { qpsk, gaussian };

struct TrainingSequence {
    CVector samples;
    double unit_power = 1.0;

    std::size_t size() const noexcept { return static_cast<std::size_t>(samples.size()); }
};

/// N i.i.d. training symbols with per-symbol energy P. QPSK symbols have
/// constant modulus sqrt(P); Gaussian symbols are CN(0, P).
TrainingSequence gen_training(std::size_t n, double unit_power, Rng& rng, TrainingKind kind = TrainingKind::qpsk);

/// Unitary DFT, entry (m, n) = exp(-j 2 pi m n / N) / sqrt(N) with 0-based m, n.
CMatrix unitary_dft(std::size_t n);

/// H x for the N x N circulant H whose first column is [h; 0].
CVector circulant_apply(const CVector& h, const CVector& x);
CVector circulant_apply(const Channel& h, const CVector& x);

/// Length-N frequency response sum_l h(l) exp(-j 2 pi n l / N); the diagonal
/// of F H F^H. Diagnostic only.
CVector frequency_response(const Channel& h, std::size_t n);

/// Relay gain denominators. as_printed: noise_var * P_S + noise_var.
/// signal_power: P_S + noise_var (unit channel power times P_S plus noise).
enum class BetaRule { as_printed, signal_power };

double amplification_factor(double relay_power, double source_power, double noise_var,
                            BetaRule rule = BetaRule::as_printed);

struct SlotObservations {
    CVector y_d1;
    CVector y_d2;
    double beta = 1.0;
    double noise_var = 0.0;
};

/// Time-domain two-slot AF exchange. The relay forwards its own noisy copy, so
/// the slot-2 noise is coloured by beta * H_RD exactly as the physical link
/// would colour it.
SlotObservations simulate_two_slot(const Channel& h_sd, const Channel& h_sr, const Channel& h_rd,
                                   const TrainingSequence& x, double noise_var, double beta, Rng& rng);

/// 2N x (2L-1) equivalent training matrix without the relay gain:
///   [ diag(F x) sqrt(N) F_SD          0               ]
///   [        0               diag(F x) sqrt(N) F_SRD  ]
/// with F_SD, F_SRD the first L and L-1 columns of the unitary DFT. Each block
/// equals F C(x) restricted to its leading columns, C(x) the circulant of x.
CMatrix build_measurement_matrix(const TrainingSequence& x, std::size_t direct_length);

/// Frequency-domain linear model y = X h + z.
struct Measurement {
    CVector y;
    CMatrix X;
    double noise_var = 0.0;

    /// L, recovered from the column count 2L-1.
    std::size_t direct_length() const noexcept { return static_cast<std::size_t>((X.cols() + 1) / 2); }
};

/// y = [F y_d1; F y_d2]; X from build_measurement_matrix with the lower block
/// scaled by beta so that h is the physical composite channel.
Measurement to_frequency_model(const SlotObservations& obs, const TrainingSequence& x, std::size_t direct_length);

} // namespace afcest

#endif // AFCEST_AFSIM_HPP
