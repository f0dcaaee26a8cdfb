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

// Convenience header pulling in the whole public API.

#ifndef AFCEST_AFCEST_HPP
#define AFCEST_AFCEST_HPP

#include "afcest/afsim.hpp"
#include "afcest/channel.hpp"
#include "afcest/cli.hpp"
#include "afcest/config.hpp"
#include "afcest/csdiag.hpp"
#include "afcest/harness.hpp"
#include "afcest/solvers.hpp"
#include "afcest/types.hpp"

#endif // AFCEST_AFCEST_HPP
