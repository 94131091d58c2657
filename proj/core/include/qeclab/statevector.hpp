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

#include <random>
#include <vector>

#include "qeclab/channels.hpp"
#include "qeclab/code.hpp"
#include "qeclab/numerics.hpp"

namespace qeclab::sv {

/// Dense n-qubit density matrix. Qubit q corresponds to bit q of the basis
/// index. Trace may be below one after projective syndrome selection.
struct DensityState {
    int n = 0;
    Eigen::MatrixXcd m;

    static DensityState zero_state(int n_qubits);
    double trace() const { return m.trace().real(); }
    void validate(double tol = 1e-10) const;
};

// Kernels on raw density matrices (dim 2^n). These are shared by the
// extraction circuit and by the brute-force test oracles.

/// rho' = sum_ij chi_ij P_i rho P_j on qubit q.
void apply_1q_chi(Eigen::MatrixXcd& rho, int n, int q, const Matrix4cd& chi);

/// rho' = u rho u^dagger on qubit q.
void apply_1q_unitary(Eigen::MatrixXcd& rho, int n, int q, const Matrix2cd& u);

/// rho' = U rho U^dagger for a two-qubit unitary; basis |q_hi q_lo> with
/// `q_hi` the first listed qubit.
void apply_2q_unitary(Eigen::MatrixXcd& rho, int n, int q_hi, int q_lo, const Matrix4cd& u);

/// Two-qubit Pauli channel sum_P p_P (P rho P); probs indexed II..ZZ.
void apply_2q_pauli_channel(Eigen::MatrixXcd& rho, int n, int q_hi, int q_lo,
                            const std::array<double, 16>& probs);

/// Left/right multiplication by an n-qubit Pauli (rho -> P rho P^dagger).
void conjugate_pauli(Eigen::MatrixXcd& rho, const PauliOp& p);

/// Projects onto the (-1)^outcome eigenspace of a Pauli check: rho -> Pi rho Pi.
void project_check(Eigen::MatrixXcd& rho, const PauliOp& check, int outcome);

/// Code projector Pi = prod (1 + check)/2 of a d=3-scale code, as a dense
/// matrix (2^n x 2^n).
Eigen::MatrixXcd code_projector(const SurfaceCode& code);

/// Dense matrix of an n-qubit Pauli operator.
Eigen::MatrixXcd pauli_dense(const PauliOp& p);

/// exp(-i t H) with H = |0><0| (x) I + |1><1| (x) X; equals CNOT up to a
/// global phase at t = pi/2.
Matrix4cd noisy_cnot_unitary(double t);

/// Pauli-twirl probabilities of the timed CNOT channel (16 entries, II..ZZ).
std::array<double, 16> cnot_twirl_probs(double t);

/// How entangling gates in the extraction circuit are realized.
enum class CnotKind { perfect, timed, twirled };

/// Noise attached to one round of syndrome extraction.
struct CircuitNoiseModel {
    /// Per data qubit, applied before every round; empty = none.
    std::vector<Channel> data_noise;
    /// Per check (ancilla), applied after each ancilla initialization; empty = none.
    std::vector<Channel> ancilla_noise;
    CnotKind cnot = CnotKind::perfect;
    double cnot_time = 0.0;  // used by timed / twirled kinds
};

/// Fixed extraction schedule: checks processed sequentially (all X checks
/// row-major, then all Z checks row-major), one ancilla slot, the check's
/// data qubits visited in row-major order, K rounds.
struct ExtractionSchedule {
    int rounds = 1;
};

struct ExtractionResult {
    std::vector<Syndrome> syndromes;  // K noisy rounds
    DensityState state;               // unnormalized post-selection state
    double probability = 1.0;         // weight of the sampled record
};

/// Runs K noisy extraction rounds on an encoded maximally mixed state and
/// samples all ancilla measurements. d = 3 only (memory).
ExtractionResult run_extraction(const SurfaceCode& code, const ExtractionSchedule& schedule,
                                const CircuitNoiseModel& noise, std::mt19937_64& rng);

/// Full record of one sampled trajectory: K noisy syndromes, the final
/// noiseless syndrome, and every ancilla outcome in schedule order.
struct CircuitRecord {
    std::vector<Syndrome> noisy;          // K rounds
    Syndrome final_syndrome;              // noiseless round driving the recovery
    std::vector<uint8_t> ancilla_outcomes;  // flattened measurement stream
    double probability = 1.0;

    /// Outcome stream in the order the schedule consumes it.
    std::vector<uint8_t> flat_outcomes() const {
        std::vector<uint8_t> flat = ancilla_outcomes;
        flat.insert(flat.end(), final_syndrome.bits.begin(), final_syndrome.bits.end());
        return flat;
    }
};

struct CircuitSample {
    CircuitRecord record;
    Matrix4d ptm;   // normalized PTM of the K-round logical channel
    double p_weight = 1.0;
};

/// Samples a trajectory under `noise` and returns the logical channel of the
/// composite map (Eq. of the K-round process matrix), computed by propagating
/// the four logical initial operators through the sampled record.
CircuitSample sample_circuit_channel(const SurfaceCode& code, const ExtractionSchedule& schedule,
                                     const CircuitNoiseModel& noise, std::mt19937_64& rng);

/// Logical channel of the same measurement record under a different (decoder)
/// noise model: outcomes are forced rather than sampled.
Matrix4d circuit_channel_for_record(const SurfaceCode& code, const ExtractionSchedule& schedule,
                                    const CircuitNoiseModel& noise, const CircuitRecord& record);

/// Convenience: n_samples sampled trajectories.
std::vector<CircuitSample> logical_ptm_circuit(const SurfaceCode& code,
                                               const ExtractionSchedule& schedule,
                                               const CircuitNoiseModel& noise, std::mt19937_64& rng,
                                               int n_samples);

}  // namespace qeclab::sv
