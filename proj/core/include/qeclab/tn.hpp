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

#include <memory>
#include <random>
#include <utility>

#include "qeclab/channels.hpp"
#include "qeclab/code.hpp"
#include "qeclab/logical_channel.hpp"
#include "qeclab/tensor.hpp"

namespace qeclab::tn {

struct ContractionConfig {
    enum class Mode { exact, boundary_mps };
    Mode mode = Mode::boundary_mps;
    int chi_max = 16;
    double svd_abs_tol = 1e-14;
    /// 0 = take QECLAB_MEM_CAP_BYTES from the environment, default 8 GiB.
    size_t mem_cap_bytes = 0;
};

size_t effective_mem_cap(const ContractionConfig& cfg);

struct ContractionResult {
    cd value{0.0, 0.0};
    /// Accumulated relative discarded weight of all SVD truncations
    /// (zero in exact mode).
    double truncation_weight = 0.0;
};

/// Contracts a scalar-valued network. Exact mode merges rows into a transfer
/// vector (memory exponential in the lattice width only); boundary-MPS mode
/// sweeps columns left to right, truncating to chi_max after each column.
ContractionResult contract(const PepsNetwork& network, const ContractionConfig& cfg);

/// Bond-dimension-2 PEPS of the surface-code encoded states. Every site has
/// an open physical leg (dim 2, the qubit basis); the bottom-left site
/// carries an extra open logical leg selecting |0>_L / |1>_L (its physical
/// dim is 4 = qubit x logical).
PepsNetwork build_code_peps(const SurfaceCode& code);

/// Amplitude <bits | k_logical> of the (unnormalized) encoded state described
/// by build_code_peps; bits are row-major qubit values.
cd peps_amplitude(const SurfaceCode& code, const PepsNetwork& peps,
                  const std::vector<int>& bits, int logical_k);

/// Scalar network whose contraction equals the raw Pauli-transfer element
/// C_ij = Tr(L_i (R_s o N)(L_j Pi)) of the syndrome-conditioned logical
/// channel (raw convention: identity noise, trivial syndrome, i=j=I gives 2).
PepsNetwork build_ptm_network(const SurfaceCode& code, const NoiseAssignment& noise,
                              const Syndrome& s, int i, int j);

/// Normalized logical channel of R_s o N computed with shared right
/// environments across the 16 transfer-matrix entries.
LogicalChannel logical_ptm(const SurfaceCode& code, const NoiseAssignment& noise,
                           const Syndrome& s, const ContractionConfig& cfg);

/// Chain-rule syndrome sampler. Builds per-noise right environments once and
/// reuses them across samples.
class SyndromeSampler {
  public:
    SyndromeSampler(const SurfaceCode& code, const NoiseAssignment& noise,
                    const ContractionConfig& cfg);
    ~SyndromeSampler();
    SyndromeSampler(SyndromeSampler&&) noexcept;

    /// Draws a syndrome from p_s; returns the syndrome and the product of the
    /// sampled conditional probabilities (the realized probability weight).
    std::pair<Syndrome, double> sample(std::mt19937_64& rng) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience around SyndromeSampler.
std::pair<Syndrome, double> sample_syndrome(const SurfaceCode& code, const NoiseAssignment& noise,
                                            std::mt19937_64& rng, const ContractionConfig& cfg);

/// Logical channel for purely Pauli noise via the exact diagonal-chi path
/// (stabilizer coset probabilities contracted as a transfer vector over the
/// lattice rows). Exact regardless of cfg.mode; feasible to d around 25.
LogicalChannel pauli_logical_ptm(const SurfaceCode& code, const NoiseAssignment& noise,
                                 const Syndrome& s, const ContractionConfig& cfg);

/// The four coset probabilities behind pauli_logical_ptm, normalized so they
/// sum to p_s: probabilities that the residual logical operator after the
/// fiducial correction is I, X, Y, Z.
std::array<double, 4> pauli_coset_probabilities(const SurfaceCode& code,
                                                const NoiseAssignment& noise, const Syndrome& s,
                                                const ContractionConfig& cfg);

}  // namespace qeclab::tn
