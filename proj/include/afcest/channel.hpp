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

#ifndef AFCEST_CHANNEL_HPP
#define AFCEST_CHANNEL_HPP

#include "afcest/types.hpp"

#include <cstddef>
#include <vector>

namespace afcest {

enum class ChannelKind { sparse, dense };

/// Shape of one link: tap count and number of nonzero (dominant) taps.
struct ChannelSpec {
    std::size_t length = 1;
    std::size_t dominant_taps = 1;
    ChannelKind kind = ChannelKind::dense;

    static ChannelSpec sparse(std::size_t length, std::size_t k) { return {length, k, ChannelKind::sparse}; }
    static ChannelSpec dense(std::size_t length) { return {length, length, ChannelKind::dense}; }

    /// Throws PreconditionError when the spec is inconsistent.
    void validate() const;
};

/// Symbol-spaced impulse response. The support is always recomputed from the
/// taps, so it lists exactly the indices holding a nonzero gain.
class Channel {
public:
    explicit Channel(CVector taps);

    const CVector& taps() const noexcept { return taps_; }
    const std::vector<std::size_t>& support() const noexcept { return support_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(taps_.size()); }

private:
    CVector taps_;
    std::vector<std::size_t> support_;
};

/// Stacked estimation target h = [direct; cascaded], direct part first.
struct CompositeChannel {
    Channel direct;
    Channel cascaded;
    CVector stacked;

    std::size_t direct_length() const noexcept { return direct.size(); }
};

/// Draws spec.dominant_taps positions uniformly without replacement and fills
/// them with CN(0, 1/K) gains, so the expected total power is one.
Channel gen_channel(const ChannelSpec& spec, Rng& rng);

/// Full linear convolution, length len(a) + len(b) - 1.
Channel cascade(const Channel& a, const Channel& b);

/// Requires len(cascaded) == len(direct) - 1.
CompositeChannel compose(const Channel& direct, const Channel& cascaded);

} // namespace afcest

#endif // AFCEST_CHANNEL_HPP
