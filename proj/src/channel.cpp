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

#include "afcest/channel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace afcest {

void ChannelSpec::validate() const {
    detail::require(length >= 1, "channel length must be at least 1");
    detail::require(dominant_taps >= 1 && dominant_taps <= length,
                    "dominant taps must lie in [1, length], got " + std::to_string(dominant_taps) + " for length " +
                        std::to_string(length));
    if (kind == ChannelKind::dense)
        detail::require(dominant_taps == length, "dense channel must have dominant_taps == length");
}

Channel::Channel(CVector taps) : taps_(std::move(taps)) {
    detail::require(taps_.size() >= 1, "channel must have at least one tap");
    for (Eigen::Index l = 0; l < taps_.size(); ++l)
        if (taps_[l] != cplx(0.0, 0.0)) support_.push_back(static_cast<std::size_t>(l));
}

Channel gen_channel(const ChannelSpec& spec, Rng& rng) {
    spec.validate();
    const std::size_t n = spec.length;
    const std::size_t k = spec.dominant_taps;

    // Partial Fisher-Yates: the first k entries form a uniform k-subset.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }

    CVector taps = CVector::Zero(static_cast<Eigen::Index>(n));
    const double var = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
        cplx g = complex_gaussian(rng, var);
        // A zero draw has probability zero but would break |support| == K.
        while (g == cplx(0.0, 0.0)) g = complex_gaussian(rng, var);
        taps[static_cast<Eigen::Index>(idx[i])] = g;
    }
    return Channel(std::move(taps));
}

Channel cascade(const Channel& a, const Channel& b) {
    const Eigen::Index na = a.taps().size();
    const Eigen::Index nb = b.taps().size();
    CVector out = CVector::Zero(na + nb - 1);
    for (Eigen::Index i = 0; i < na; ++i) {
        const cplx ai = a.taps()[i];
        if (ai == cplx(0.0, 0.0)) continue;
        for (Eigen::Index j = 0; j < nb; ++j) out[i + j] += ai * b.taps()[j];
    }
    return Channel(std::move(out));
}

CompositeChannel compose(const Channel& direct, const Channel& cascaded) {
    detail::require(direct.size() >= 2, "direct link needs at least two taps");
    detail::require(cascaded.size() + 1 == direct.size(),
                    "cascaded length must be direct length - 1 (got " + std::to_string(cascaded.size()) + " vs " +
                        std::to_string(direct.size()) + ")");
    CVector stacked(static_cast<Eigen::Index>(direct.size() + cascaded.size()));
    stacked << direct.taps(), cascaded.taps();
    return CompositeChannel{direct, cascaded, std::move(stacked)};
}

} // namespace afcest
