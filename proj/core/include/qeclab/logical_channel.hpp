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

#include "qeclab/code.hpp"
#include "qeclab/numerics.hpp"

namespace qeclab {

/// Syndrome-conditioned logical channel: the normalized 4x4 Pauli transfer
/// matrix of R_s o N on the encoded qubit (identity channel with the trivial
/// syndrome gives the identity matrix) plus the syndrome probability
/// p_s = ptm(0,0) under the maximally-mixed-encoded-state convention.
struct LogicalChannel {
    Matrix4d ptm = Matrix4d::Identity();
    double p_s = 1.0;
    Syndrome syndrome;
    double truncation_weight = 0.0;
};

}  // namespace qeclab
