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

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qeclab/numerics.hpp"

namespace qeclab {

/// Single-qubit CPTP map stored as its 4x4 chi matrix in the Pauli basis.
struct Channel {
    Matrix4cd chi = Matrix4cd::Zero();
    std::string label;

    /// Diagonal of chi has negligible off-diagonal support.
    bool is_pauli(double tol = 1e-14) const;
    /// Normalized Pauli transfer matrix of the channel.
    Matrix4d ptm() const { return chi_to_ptm(chi); }

    static Channel identity();
};

/// Validates hermiticity, complete positivity and trace preservation at the
/// given tolerances; throws InvalidParameters on violation.
void validate_channel(const Channel& c, const NumericsSettings& st = default_numerics_settings());

struct RotationParams {
    double theta = 0.0;           // radians in [0, 2pi)
    double axis[3] = {0, 0, 1};   // unit vector
};

struct ApdParams {
    double t1 = 1.0;
    double t2 = 1.0;
    double t = 1.0;  // elapsed time
};

struct BiasedPauliParams {
    double p = 0.0;    // total error probability
    double eta = 0.5;  // bias p_Y / (p_X + p_Z); 0.5 is depolarizing
    double p_x() const { return p / (2.0 * (1.0 + eta)); }
    double p_y() const { return p * eta / (1.0 + eta); }
    double p_z() const { return p_x(); }
};

/// Amplitude-phase damping: gamma = 1 - exp(-t/T1), and
/// sqrt((1-gamma)(1-lambda)) = exp(-t/T2). Requires 0 < T2 <= 2*T1.
Channel apd_channel(const ApdParams& params);

/// Unitary conjugation by exp(i theta r.sigma / 2); rank-1 chi.
Channel rotation_channel(const RotationParams& params);

/// Diagonal chi = diag(1-p, p_x, p_y, p_z) with the eta split.
Channel biased_pauli_channel(const BiasedPauliParams& params);

Channel depolarizing_channel(double p);

/// Projection onto Pauli channels: zeroes the off-diagonal chi entries.
Channel pauli_twirl(const Channel& c);

/// Perturbed decoder noise model chi' = (chi + delta*(I + P_i)) / A with A
/// chosen so the Choi trace is 1 (unit total trace). P_i indexes the fixed
/// Pauli-pair order II, IX, ..., ZZ. The residual trace-preservation defect
/// of the result is reported in `trace_defect`.
struct PerturbedChannel {
    Channel channel;
    double trace_defect = 0.0;
};
PerturbedChannel perturbed_channel(const Channel& c, int i, double delta);

/// Draws T1 and T2 independently from Gaussian(mean, rel_std*mean), rejecting
/// until T1 > 0, T2 > 0 and T2 <= 2*T1.
ApdParams sample_t1_t2(double mean, double rel_std, std::mt19937_64& rng);

/// Per-qubit noise assignment for a code with `size()` qubits.
struct NoiseAssignment {
    std::vector<Channel> channels;

    int size() const { return static_cast<int>(channels.size()); }
    const Channel& qubit(int q) const { return channels.at(q); }
    bool all_pauli(double tol = 1e-14) const;

    static NoiseAssignment uniform(const Channel& c, int n_qubits);
};

/// Kind-tagged serialized form of a noise model, used by experiment configs.
/// See experiments.hpp for the JSON schema.
struct NoiseDesc {
    std::string kind;               // "apd" | "rotation" | "biased-pauli" | "depolarizing"
    ApdParams apd;                  // kind == "apd"
    RotationParams rotation;        // kind == "rotation"
    BiasedPauliParams biased;       // kind == "biased-pauli" / "depolarizing"

    Channel build() const;
    std::string summary() const;
};

}  // namespace qeclab
