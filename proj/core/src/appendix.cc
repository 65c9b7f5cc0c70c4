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

#include "qpoisson/appendix.h"

#include <stdexcept>
#include <string>

#include "appendix_sources.h"
#include "qpoisson/qasm.h"

namespace qpoisson {

const AppendixListing &appendix_listing(std::size_t n) {
    static const AppendixListing kN2{2, "appendix_n2", kAppendixN2Source, {1, 3}, {{0, true}, {2, true}}};
    static const AppendixListing kN3{3, "appendix_n3", kAppendixN3Source, {3, 5, 7}, {{0, true}}};
    if (n == 2) {
        return kN2;
    }
    if (n == 3) {
        return kN3;
    }
    throw std::invalid_argument("There is no built-in listing for n = " + std::to_string(n) + ".");
}

Circuit appendix_circuit(std::size_t n) {
    return parse_qasm(appendix_listing(n).source);
}

PostSelection appendix_post_select(const StateVector &state, const AppendixListing &listing) {
    return post_select(state, listing.success, listing.b_register);
}

PostSelection appendix_post_select(const DensityMatrix &rho, const AppendixListing &listing) {
    return post_select(rho, listing.success, listing.b_register);
}

}  // namespace qpoisson
