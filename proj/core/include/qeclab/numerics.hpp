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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qeclab/errors.hpp"

namespace qeclab {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Matrix2cd = Eigen::Matrix2cd;
using Matrix4cd = Eigen::Matrix4cd;
using Matrix4d = Eigen::Matrix4d;

/// Fixed single-qubit Pauli ordering: index 0 -> I, 1 -> X, 2 -> Y, 3 -> Z.
/// Every chi matrix and Pauli transfer matrix in the library indexes against
/// this ordering.
namespace pauli {

enum Index { I = 0, X = 1, Y = 2, Z = 3 };

const Matrix2cd& matrix(int idx);
const char* label(int idx);

/// Product sigma_a * sigma_b = phase * sigma_c with phase in {1, i, -1, -i}.
struct Product {
    int index;
    cd phase;
};
Product product(int a, int b);

/// The 16 two-index Pauli labels P_i = A (x) B in the order
/// II, IX, IY, IZ, XI, ..., ZZ used by the generic perturbation family.
/// These are plain 4x4 matrices, not operators on two qubits.
Matrix4cd pair_matrix(int i);
const char* pair_label(int i);

}  // namespace pauli

/// Tolerances and the multi-start schedule shared by the numerics routines.
struct NumericsSettings {
    double hermiticity_tol = 1e-12;
    double positivity_slack = 1e-10;
    int diamond_restarts = 32;
    int diamond_max_iters = 2000;
    double diamond_tol = 1e-9;
    /// When true, exactly diagonal (Pauli) and orthogonal (unitary) transfer
    /// matrices are handled by their closed forms instead of the iterative
    /// solver. Tests that validate the solver against those same closed
    /// forms turn this off.
    bool allow_closed_forms = true;
};

const NumericsSettings& default_numerics_settings();

bool is_hermitian(const CMatrix& m, double tol = 1e-12);
bool is_finite(const CMatrix& m);

/// Truncated singular value decomposition. Keeps at most `max_rank` singular
/// values and additionally drops any value below `abs_tol`. Returns U, the
/// kept singular values (non-increasing), V^dagger, and the discarded weight
/// (sum of squares of the dropped values).
struct SvdTruncation {
    CMatrix u;
    std::vector<double> singular_values;
    CMatrix v_dagger;
    double discarded_weight = 0.0;
};
SvdTruncation svd_truncate(const CMatrix& m, int max_rank, double abs_tol);

/// Normalized Pauli transfer matrix of the channel with chi matrix `chi`:
/// M_ab = (1/2) Tr(P_a sum_ij chi_ij P_i P_b P_j). The identity channel maps
/// to the identity matrix.
Matrix4d chi_to_ptm(const CMatrix& chi, double hermiticity_tol = 1e-12);

/// Inverse of chi_to_ptm.
Matrix4cd ptm_to_chi(const Matrix4d& ptm);

/// Choi operator of the channel, normalized so the identity channel gives the
/// rank-1 projector onto the maximally entangled state (trace 1). The map is
/// completely positive iff the result is PSD and trace preserving iff the
/// partial trace over the output factor equals I/2.
Matrix4cd choi_matrix(const CMatrix& chi);

/// Smallest eigenvalue of the Choi operator and the trace-preservation
/// residual max|Tr_out(Choi) - I/2|, used by channel validation.
struct CptpReport {
    double choi_min_eigenvalue;
    double trace_residual;
};
CptpReport cptp_report(const CMatrix& chi);

/// Diamond-norm distance || (1/normalization) L - Id ||_diamond of a
/// single-qubit map given as a normalized Pauli transfer matrix, computed by
/// multi-start alternating ascent over pure states on system + qubit ancilla.
/// Deterministic for a fixed schedule in `settings`.
double diamond_distance_to_identity(const Matrix4d& ptm, double normalization,
                                    const NumericsSettings& settings = default_numerics_settings());

/// Exposed for tests: single ascent run from a given pure state (unit vector
/// in C^4). Returns the reached objective value.
double diamond_ascent_from(const Matrix4d& delta_ptm, const Eigen::Vector4cd& start,
                           const NumericsSettings& settings);

}  // namespace qeclab
