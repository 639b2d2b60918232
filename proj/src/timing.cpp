// Copyright 2026 The islr-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <algorithm>
#include <cmath>
#include <string>

#include "islr/solvers.hpp"

namespace islr {

double estimate_sample_time(Index num_vars) {
    if (num_vars < 1) throw DomainError("variable count must be positive, got " + std::to_string(num_vars));
    using namespace timing;
    const double t = std::clamp((std::log(static_cast<double>(num_vars)) - std::log(kLowVars)) /
                                        (std::log(kHighVars) - std::log(kLowVars)),
                                0.0, 1.0);
    const double anneal = kAnnealLowUs + t * (kAnnealHighUs - kAnnealLowUs);
    const double readout = kReadoutLowUs + t * (kReadoutHighUs - kReadoutLowUs);
    return kDelayUs + anneal + readout;
}

}  // namespace islr
