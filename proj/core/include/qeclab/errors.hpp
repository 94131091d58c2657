// Copyright 2026 The qeclab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qeclab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input values (wrong sizes, non-finite data, ...).
struct InvalidInput : Error {
    using Error::Error;
};

/// Parameters outside their documented domain (even distance, T2 > 2*T1, ...).
struct InvalidParameters : Error {
    using Error::Error;
};

/// A computation refused up front because it would exceed a configured
/// memory or combinatorial budget.
struct ResourceLimit : Error {
    using Error::Error;
};

/// An iterative numerical procedure failed to reach its tolerance.
struct NumericalFailure : Error {
    using Error::Error;
};

/// Rejection sampling failed to produce an accepted draw.
struct SamplingFailure : Error {
    using Error::Error;
};

}  // namespace qeclab
