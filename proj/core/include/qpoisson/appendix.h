// Copyright 2026 The qpoisson Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPOISSON_APPENDIX_H
#define QPOISSON_APPENDIX_H

#include <string_view>
#include <vector>

#include "qpoisson/gates.h"
#include "qpoisson/sim.h"

namespace qpoisson {

/// A hand-written solver listing for n = 2 or n = 3, compiled into the
/// library, together with where its registers live.
struct AppendixListing {
    std::size_t n;
    std::string_view name;
    std::string_view source;
    /// Register B, least significant qubit first.
    std::vector<Qubit> b_register;
    /// Qubit values marking the success branch.
    std::vector<QubitCondition> success;
};

/// Throws std::invalid_argument unless n is 2 or 3.
const AppendixListing &appendix_listing(std::size_t n);

/// Parsed listing, measurements included.
Circuit appendix_circuit(std::size_t n);

/// Joint probabilities of the success branch and B = j, for j in [0, 2^n).
PostSelection appendix_post_select(const StateVector &state, const AppendixListing &listing);
PostSelection appendix_post_select(const DensityMatrix &rho, const AppendixListing &listing);

}  // namespace qpoisson

#endif
