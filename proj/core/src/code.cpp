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

#include "qeclab/code.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qeclab {

PauliOp::PauliOp(int n_qubits) : n(n_qubits) {
    int words = (n + 63) / 64;
    x_bits.assign(words, 0);
    z_bits.assign(words, 0);
}

void PauliOp::set_x(int q, bool v) {
    uint64_t mask = uint64_t(1) << (q & 63);
    if (v)
        x_bits[q >> 6] |= mask;
    else
        x_bits[q >> 6] &= ~mask;
}

void PauliOp::set_z(int q, bool v) {
    uint64_t mask = uint64_t(1) << (q & 63);
    if (v)
        z_bits[q >> 6] |= mask;
    else
        z_bits[q >> 6] &= ~mask;
}

int PauliOp::weight() const {
    int w = 0;
    for (size_t k = 0; k < x_bits.size(); ++k) w += std::popcount(x_bits[k] | z_bits[k]);
    return w;
}

bool PauliOp::is_identity() const {
    for (size_t k = 0; k < x_bits.size(); ++k)
        if (x_bits[k] | z_bits[k]) return false;
    return true;
}

int PauliOp::symplectic(const PauliOp& other) const {
    if (n != other.n) throw InvalidInput("PauliOp::symplectic: length mismatch");
    int acc = 0;
    for (size_t k = 0; k < x_bits.size(); ++k) {
        acc ^= std::popcount(x_bits[k] & other.z_bits[k]) & 1;
        acc ^= std::popcount(z_bits[k] & other.x_bits[k]) & 1;
    }
    return acc;
}

PauliOp& PauliOp::operator*=(const PauliOp& other) {
    if (n != other.n) throw InvalidInput("PauliOp::operator*: length mismatch");
    // (X^a Z^b)(X^c Z^d) = (-1)^(b.c) X^(a+c) Z^(b+d)
    int sign = 0;
    for (size_t k = 0; k < x_bits.size(); ++k) sign ^= std::popcount(z_bits[k] & other.x_bits[k]) & 1;
    phase = static_cast<uint8_t>((phase + other.phase + (sign ? 2 : 0)) & 3);
    for (size_t k = 0; k < x_bits.size(); ++k) {
        x_bits[k] ^= other.x_bits[k];
        z_bits[k] ^= other.z_bits[k];
    }
    return *this;
}

bool PauliOp::equal_up_to_phase(const PauliOp& other) const {
    return n == other.n && x_bits == other.x_bits && z_bits == other.z_bits;
}

std::string PauliOp::to_string() const {
    static const char* ph[4] = {"+", "+i", "-", "-i"};
    std::string s = ph[phase & 3];
    for (int q = 0; q < n; ++q) {
        int code = (x(q) ? 1 : 0) | (z(q) ? 2 : 0);
        s += "IXZY"[code];
    }
    return s;
}

bool Syndrome::any() const {
    return std::any_of(bits.begin(), bits.end(), [](uint8_t b) { return b != 0; });
}

std::string Syndrome::to_string() const {
    std::string s;
    for (uint8_t b : bits) s += b ? '1' : '0';
    return s;
}

const char* to_string(LogicalClass c) {
    static const char* names[4] = {"I", "X", "Y", "Z"};
    return names[static_cast<int>(c)];
}

namespace {

// Faces colored on the extended grid: X-type (grey) iff fr+fc is odd.
bool face_is_x(int fr, int fc) { return ((fr + fc) & 1) != 0; }

bool face_exists(int d, int fr, int fc) {
    bool row_in = fr >= 0 && fr <= d - 2;
    bool col_in = fc >= 0 && fc <= d - 2;
    if (row_in && col_in) return true;
    if ((fr == -1 || fr == d - 1) && col_in) return !face_is_x(fr, fc);  // top/bottom: Z only
    if ((fc == -1 || fc == d - 1) && row_in) return face_is_x(fr, fc);   // left/right: X only
    return false;
}

}  // namespace

SurfaceCode::SurfaceCode(int distance) : d_(distance) {
    if (d_ < 3 || d_ % 2 == 0) throw InvalidParameters("SurfaceCode: distance must be odd and >= 3");

    for (int fr = -1; fr <= d_ - 1; ++fr) {
        for (int fc = -1; fc <= d_ - 1; ++fc) {
            if (!face_exists(d_, fr, fc)) continue;
            Face f;
            f.fr = fr;
            f.fc = fc;
            f.is_x = face_is_x(fr, fc);
            for (int r = std::max(fr, 0); r <= std::min(fr + 1, d_ - 1); ++r)
                for (int c = std::max(fc, 0); c <= std::min(fc + 1, d_ - 1); ++c)
                    f.qubits.push_back(qubit_index(r, c));
            (f.is_x ? x_checks_ : z_checks_).push_back(f);
        }
    }
    auto by_coord = [](const Face& a, const Face& b) {
        return a.fr != b.fr ? a.fr < b.fr : a.fc < b.fc;
    };
    std::sort(x_checks_.begin(), x_checks_.end(), by_coord);
    std::sort(z_checks_.begin(), z_checks_.end(), by_coord);

    for (const Face& f : x_checks_) {
        PauliOp op(n_qubits());
        for (int q : f.qubits) op.set_x(q, true);
        check_ops_.push_back(op);
    }
    for (const Face& f : z_checks_) {
        PauliOp op(n_qubits());
        for (int q : f.qubits) op.set_z(q, true);
        check_ops_.push_back(op);
    }

    logical_x_ = PauliOp(n_qubits());
    for (int c = 0; c < d_; ++c) logical_x_.set_x(qubit_index(0, c), true);  // top row
    logical_z_ = PauliOp(n_qubits());
    for (int r = 0; r < d_; ++r) logical_z_.set_z(qubit_index(r, 0), true);  // left column
}

int SurfaceCode::z_check_at(int fr, int fc) const {
    for (size_t k = 0; k < z_checks_.size(); ++k)
        if (z_checks_[k].fr == fr && z_checks_[k].fc == fc) return static_cast<int>(k);
    return -1;
}

int SurfaceCode::x_check_at(int fr, int fc) const {
    for (size_t k = 0; k < x_checks_.size(); ++k)
        if (x_checks_[k].fr == fr && x_checks_[k].fc == fc) return static_cast<int>(k);
    return -1;
}

std::string SurfaceCode::dump_layout() const {
    std::ostringstream os;
    os << "surface code d=" << d_ << " qubits=" << n_qubits() << " checks=" << n_checks() << "\n";
    os << "qubit (row,col) on a " << d_ << "x" << d_ << " vertex lattice, index = row*d + col\n";
    auto dump = [&](const char* name, const std::vector<Face>& faces) {
        for (size_t k = 0; k < faces.size(); ++k) {
            os << name << k << " face(" << faces[k].fr << "," << faces[k].fc << ") qubits";
            for (int q : faces[k].qubits) os << " (" << qubit_row(q) << "," << qubit_col(q) << ")";
            os << "\n";
        }
    };
    dump("X", x_checks_);
    dump("Z", z_checks_);
    os << "logical X: top row; logical Z: left column\n";
    return os.str();
}

SurfaceCode build_code(int distance) { return SurfaceCode(distance); }

Syndrome syndrome_of(const SurfaceCode& code, const PauliOp& err) {
    if (err.n != code.n_qubits()) throw InvalidInput("syndrome_of: operator length mismatch");
    Syndrome s;
    s.bits.resize(code.n_checks());
    for (int k = 0; k < code.n_checks(); ++k)
        s.bits[k] = static_cast<uint8_t>(code.check_operator(k).symplectic(err));
    return s;
}

PauliOp fiducial_correction(const SurfaceCode& code, const Syndrome& s) {
    if (s.size() != code.n_checks()) throw InvalidInput("fiducial_correction: syndrome length mismatch");
    const int d = code.distance();
    PauliOp f(code.n_qubits());
    int nx = static_cast<int>(code.x_checks().size());
    // Flipped Z check at face (fr,fc): horizontal X string from the left
    // boundary, on row fr+1 (row fr for bottom-boundary checks, where the
    // face below the string is absent). The adjacent face on the other side
    // of the string end is X-colored, so exactly the target check flips.
    for (size_t k = 0; k < code.z_checks().size(); ++k) {
        if (!s.bits[nx + k]) continue;
        const Face& face = code.z_checks()[k];
        int row = std::min(face.fr + 1, d - 1);
        for (int c = 0; c <= face.fc; ++c) {
            int q = code.qubit_index(row, c);
            f.set_x(q, !f.x(q));
        }
    }
    // Flipped X check at face (fr,fc): vertical Z string from the top
    // boundary, on column fc+1 (column fc for right-boundary checks).
    for (size_t k = 0; k < code.x_checks().size(); ++k) {
        if (!s.bits[k]) continue;
        const Face& face = code.x_checks()[k];
        int col = std::min(face.fc + 1, d - 1);
        for (int r = 0; r <= face.fr; ++r) {
            int q = code.qubit_index(r, col);
            f.set_z(q, !f.z(q));
        }
    }
    return f;
}

LogicalClass logical_class(const SurfaceCode& code, const PauliOp& p) {
    Syndrome s = syndrome_of(code, p);
    if (s.any()) throw InvalidInput("logical_class: operator has nonzero syndrome");
    int anti_z = p.symplectic(code.logical_z());  // 1 => acts as logical X (or Y)
    int anti_x = p.symplectic(code.logical_x());  // 1 => acts as logical Z (or Y)
    if (anti_z && anti_x) return LogicalClass::Y;
    if (anti_z) return LogicalClass::X;
    if (anti_x) return LogicalClass::Z;
    return LogicalClass::I;
}

void for_each_stabilizer(const SurfaceCode& code, bool allow_large,
                         const std::function<void(const PauliOp&, int)>& visit) {
    int g = code.n_checks();
    if (code.distance() > 5 || (code.distance() == 5 && !allow_large))
        throw ResourceLimit("stabilizer enumeration limited to d=3 (d=5 behind allow_large)");
    PauliOp cur(code.n_qubits());
    visit(cur, -1);
    uint64_t total = uint64_t(1) << g;
    for (uint64_t i = 1; i < total; ++i) {
        int flip = std::countr_zero(i);  // Gray code: flip the lowest set bit position
        cur *= code.check_operator(flip);
        visit(cur, flip);
    }
}

std::vector<PauliOp> enumerate_stabilizer_group(const SurfaceCode& code, bool allow_large) {
    if (code.distance() > 5 || (code.distance() == 5 && !allow_large))
        throw ResourceLimit("stabilizer enumeration limited to d=3 (d=5 behind allow_large)");
    std::vector<PauliOp> out;
    out.reserve(size_t(1) << code.n_checks());
    for_each_stabilizer(code, allow_large, [&](const PauliOp& p, int) { out.push_back(p); });
    return out;
}

}  // namespace qeclab
