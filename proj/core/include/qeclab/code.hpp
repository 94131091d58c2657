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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qeclab/errors.hpp"

namespace qeclab {

/// N-qubit Pauli operator in symplectic form: i^phase * X^{x} Z^{z} with the
/// X and Z supports stored as bit vectors. The phase is tracked mod 4 but
/// ignored by syndrome and logical-class computations.
struct PauliOp {
    int n = 0;
    std::vector<uint64_t> x_bits;
    std::vector<uint64_t> z_bits;
    uint8_t phase = 0;  // power of i

    explicit PauliOp(int n_qubits = 0);

    bool x(int q) const { return (x_bits[q >> 6] >> (q & 63)) & 1; }
    bool z(int q) const { return (z_bits[q >> 6] >> (q & 63)) & 1; }
    void set_x(int q, bool v);
    void set_z(int q, bool v);

    int weight() const;
    bool is_identity() const;

    /// Symplectic product: 0 if the operators commute, 1 otherwise.
    int symplectic(const PauliOp& other) const;

    /// In-place product (phase tracked mod 4 using the X^x Z^z convention).
    PauliOp& operator*=(const PauliOp& other);
    friend PauliOp operator*(PauliOp a, const PauliOp& b) { return a *= b; }
    bool equal_up_to_phase(const PauliOp& other) const;

    std::string to_string() const;  // e.g. "+XIZY..."
};

/// One face of the lattice; a check operator acts on its `qubits`.
struct Face {
    int fr = 0, fc = 0;      // face coordinates; boundary faces use -1 / d-1
    bool is_x = false;       // X-type (grey) or Z-type (white)
    std::vector<int> qubits; // row-major qubit indices
};

struct Syndrome {
    std::vector<uint8_t> bits;  // all X checks row-major, then all Z checks

    int size() const { return static_cast<int>(bits.size()); }
    bool any() const;
    bool operator==(const Syndrome& o) const { return bits == o.bits; }
    std::string to_string() const;
};

/// Distance-d surface code on a d x d vertex lattice with open boundaries;
/// weight-2 checks on the boundary, one encoded qubit.
class SurfaceCode {
  public:
    explicit SurfaceCode(int distance);

    int distance() const { return d_; }
    int n_qubits() const { return d_ * d_; }
    int n_checks() const { return static_cast<int>(x_checks_.size() + z_checks_.size()); }

    int qubit_index(int row, int col) const { return row * d_ + col; }
    int qubit_row(int q) const { return q / d_; }
    int qubit_col(int q) const { return q % d_; }

    const std::vector<Face>& x_checks() const { return x_checks_; }
    const std::vector<Face>& z_checks() const { return z_checks_; }
    /// Check operator as a PauliOp (index into the syndrome ordering).
    const PauliOp& check_operator(int k) const { return check_ops_.at(k); }

    const PauliOp& logical_x() const { return logical_x_; }
    const PauliOp& logical_z() const { return logical_z_; }

    /// Face lookup by coordinates; -1 when the face is absent.
    int z_check_at(int fr, int fc) const;
    int x_check_at(int fr, int fc) const;

    std::string dump_layout() const;

  private:
    int d_;
    std::vector<Face> x_checks_;
    std::vector<Face> z_checks_;
    std::vector<PauliOp> check_ops_;  // X checks then Z checks
    PauliOp logical_x_{0};
    PauliOp logical_z_{0};
};

SurfaceCode build_code(int distance);

Syndrome syndrome_of(const SurfaceCode& code, const PauliOp& err);

/// Deterministic Pauli with syndrome s: every flipped Z check is connected to
/// the left boundary by a horizontal string of X, every flipped X check to
/// the top boundary by a vertical string of Z.
PauliOp fiducial_correction(const SurfaceCode& code, const Syndrome& s);

enum class LogicalClass { I = 0, X = 1, Y = 2, Z = 3 };
const char* to_string(LogicalClass c);

/// Class of an undetected Pauli by its commutation with the logical pair.
LogicalClass logical_class(const SurfaceCode& code, const PauliOp& p);

/// All 2^(n_checks) stabilizer elements. Gated: d = 3 by default; d = 5
/// (2^24 elements) requires `allow_large`; anything larger is refused.
std::vector<PauliOp> enumerate_stabilizer_group(const SurfaceCode& code, bool allow_large = false);

/// Streaming Gray-code walk over the stabilizer group: visit(element) is
/// called once per element with a scratch PauliOp that is mutated in place.
/// The walk order is deterministic.
void for_each_stabilizer(const SurfaceCode& code, bool allow_large,
                         const std::function<void(const PauliOp&, int flipped_generator)>& visit);

}  // namespace qeclab
