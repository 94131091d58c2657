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

#include "qeclab/statevector.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace qeclab::sv {

namespace {

using Eigen::MatrixXcd;

inline long bit_of(long idx, int q) { return (idx >> q) & 1; }

// 4x4 superoperator of a chi matrix on (r,r') index pairs (row = 2r + r').
Matrix4cd chi_superop(const Matrix4cd& chi) {
    Matrix4cd s = Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (chi(i, j) == cd(0.0)) continue;
            const Matrix2cd& pi = pauli::matrix(i);
            const Matrix2cd& pj = pauli::matrix(j);
            for (int r = 0; r < 2; ++r)
                for (int rp = 0; rp < 2; ++rp)
                    for (int ss = 0; ss < 2; ++ss)
                        for (int sp = 0; sp < 2; ++sp)
                            s(2 * r + rp, 2 * ss + sp) += chi(i, j) * pi(r, ss) * pj(sp, rp);
        }
    return s;
}

}  // namespace

DensityState DensityState::zero_state(int n_qubits) {
    DensityState st;
    st.n = n_qubits;
    long dim = 1L << n_qubits;
    st.m = MatrixXcd::Zero(dim, dim);
    st.m(0, 0) = 1.0;
    return st;
}

void DensityState::validate(double tol) const {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw InvalidInput("DensityState: not hermitian");
    double tr = trace();
    if (!(tr > 0.0) || tr > 1.0 + tol) throw InvalidInput("DensityState: trace out of range");
}

void apply_1q_chi(MatrixXcd& rho, int n, int q, const Matrix4cd& chi) {
    Matrix4cd s = chi_superop(chi);
    long dim = 1L << n;
    long stride = 1L << q;
    cd v[4], w[4];
    for (long chi_idx = 0; chi_idx < dim / 2; ++chi_idx) {
        long c0 = ((chi_idx & ~(stride - 1)) << 1) | (chi_idx & (stride - 1));
        long c1 = c0 | stride;
        for (long rho_idx = 0; rho_idx < dim / 2; ++rho_idx) {
            long r0 = ((rho_idx & ~(stride - 1)) << 1) | (rho_idx & (stride - 1));
            long r1 = r0 | stride;
            v[0] = rho(r0, c0);
            v[1] = rho(r0, c1);
            v[2] = rho(r1, c0);
            v[3] = rho(r1, c1);
            for (int a = 0; a < 4; ++a) {
                // packing: row index of superop is 2*r + r' with r the ket bit.
                w[a] = s(a, 0) * v[0] + s(a, 1) * v[1] + s(a, 2) * v[2] + s(a, 3) * v[3];
            }
            rho(r0, c0) = w[0];
            rho(r0, c1) = w[1];
            rho(r1, c0) = w[2];
            rho(r1, c1) = w[3];
        }
    }
}

namespace {

// Iterates base indices with zeros at the two bit positions.
template <typename F>
inline void for_each_base2(long dim, long s_hi, long s_lo, F&& f) {
    long lo_mask = std::min(s_hi, s_lo);
    long hi_mask = std::max(s_hi, s_lo);
    for (long a = 0; a < dim; a += 2 * hi_mask)
        for (long b = 0; b < hi_mask; b += 2 * lo_mask)
            for (long c = 0; c < lo_mask; ++c) f(a + b + c);
}

}  // namespace

void apply_1q_unitary(MatrixXcd& rho, int n, int q, const Matrix2cd& u) {
    long dim = 1L << n;
    long s = 1L << q;
    Matrix2cd ud = u.adjoint();
    for (long c = 0; c < dim; ++c) {
        for (long a = 0; a < dim; a += 2 * s)
            for (long b = 0; b < s; ++b) {
                long r0 = a + b, r1 = r0 | s;
                cd v0 = rho(r0, c), v1 = rho(r1, c);
                rho(r0, c) = u(0, 0) * v0 + u(0, 1) * v1;
                rho(r1, c) = u(1, 0) * v0 + u(1, 1) * v1;
            }
    }
    for (long a = 0; a < dim; a += 2 * s)
        for (long b = 0; b < s; ++b) {
            cd* c0 = rho.data() + (a + b) * dim;
            cd* c1 = rho.data() + ((a + b) | s) * dim;
            for (long r = 0; r < dim; ++r) {
                cd v0 = c0[r], v1 = c1[r];
                c0[r] = v0 * ud(0, 0) + v1 * ud(1, 0);
                c1[r] = v0 * ud(0, 1) + v1 * ud(1, 1);
            }
        }
}

void apply_2q_unitary(MatrixXcd& rho, int n, int q_hi, int q_lo, const Matrix4cd& u) {
    long dim = 1L << n;
    long s_hi = 1L << q_hi, s_lo = 1L << q_lo;
    cd v[4], w[4];
    // rho <- U rho
    for (long c = 0; c < dim; ++c) {
        for_each_base2(dim, s_hi, s_lo, [&](long base) {
            long idx[4] = {base, base | s_lo, base | s_hi, base | s_hi | s_lo};
            for (int a = 0; a < 4; ++a) v[a] = rho(idx[a], c);
            for (int a = 0; a < 4; ++a)
                w[a] = u(a, 0) * v[0] + u(a, 1) * v[1] + u(a, 2) * v[2] + u(a, 3) * v[3];
            for (int a = 0; a < 4; ++a) rho(idx[a], c) = w[a];
        });
    }
    // rho <- rho U^dagger, walking the four affected columns in parallel
    Matrix4cd ud = u.adjoint();
    for_each_base2(dim, s_hi, s_lo, [&](long base) {
        cd* col[4];
        col[0] = rho.data() + base * dim;
        col[1] = rho.data() + (base | s_lo) * dim;
        col[2] = rho.data() + (base | s_hi) * dim;
        col[3] = rho.data() + (base | s_hi | s_lo) * dim;
        for (long r = 0; r < dim; ++r) {
            for (int a = 0; a < 4; ++a) v[a] = col[a][r];
            for (int a = 0; a < 4; ++a)
                w[a] = v[0] * ud(0, a) + v[1] * ud(1, a) + v[2] * ud(2, a) + v[3] * ud(3, a);
            for (int a = 0; a < 4; ++a) col[a][r] = w[a];
        }
    });
}

void apply_2q_pauli_channel(MatrixXcd& rho, int n, int q_hi, int q_lo,
                            const std::array<double, 16>& probs) {
    long dim = 1L << n;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    for (int p = 0; p < 16; ++p) {
        if (probs[p] < 1e-300) continue;
        int a = p / 4, b = p % 4;  // sigma_a on q_hi, sigma_b on q_lo
        long xmask = 0;
        long zmask = 0;
        if (a == pauli::X || a == pauli::Y) xmask |= 1L << q_hi;
        if (a == pauli::Z || a == pauli::Y) zmask |= 1L << q_hi;
        if (b == pauli::X || b == pauli::Y) xmask |= 1L << q_lo;
        if (b == pauli::Z || b == pauli::Y) zmask |= 1L << q_lo;
        // (P rho P)[r,c] = sgn(r) sgn(c) rho[r^x, c^x] with sgn from the Z part
        // (the i factors of Y cancel between the two sides).
        for (long c = 0; c < dim; ++c) {
            double sc = (std::popcount(static_cast<uint64_t>(c & zmask)) & 1) ? -1.0 : 1.0;
            for (long r = 0; r < dim; ++r) {
                double sr = (std::popcount(static_cast<uint64_t>(r & zmask)) & 1) ? -1.0 : 1.0;
                out(r, c) += probs[p] * sr * sc * rho(r ^ xmask, c ^ xmask);
            }
        }
    }
    rho.swap(out);
}

namespace {

// Bit masks of a PauliOp (codes up to 64 qubits here).
void masks_of(const PauliOp& p, long* xmask, long* zmask) {
    *xmask = static_cast<long>(p.x_bits[0]);
    *zmask = static_cast<long>(p.z_bits[0]);
}

// (P rho P^dagger) for P = i^ph X^x Z^z; the global phase cancels.
void conjugate_xz(MatrixXcd& rho, long xmask, long zmask) {
    long dim = rho.rows();
    MatrixXcd out(dim, dim);
    for (long c = 0; c < dim; ++c) {
        long cs = c ^ xmask;
        double sc = (std::popcount(static_cast<uint64_t>(zmask & cs)) & 1) ? -1.0 : 1.0;
        for (long r = 0; r < dim; ++r) {
            long rs = r ^ xmask;
            double sr = (std::popcount(static_cast<uint64_t>(zmask & rs)) & 1) ? -1.0 : 1.0;
            out(r, c) = sr * sc * rho(rs, cs);
        }
    }
    rho.swap(out);
}

// P rho for P = X^x Z^z (phase 0): (P rho)[r,c] = (-1)^{z.(r^x)} rho[r^x, c].
MatrixXcd left_mul_xz(const MatrixXcd& rho, long xmask, long zmask) {
    long dim = rho.rows();
    MatrixXcd out(dim, dim);
    for (long c = 0; c < dim; ++c)
        for (long r = 0; r < dim; ++r) {
            long rs = r ^ xmask;
            double s = (std::popcount(static_cast<uint64_t>(zmask & rs)) & 1) ? -1.0 : 1.0;
            out(r, c) = s * rho(rs, c);
        }
    return out;
}

}  // namespace

void conjugate_pauli(MatrixXcd& rho, const PauliOp& p) {
    long xm, zm;
    masks_of(p, &xm, &zm);
    conjugate_xz(rho, xm, zm);
}

void project_check(MatrixXcd& rho, const PauliOp& check, int outcome) {
    long xm, zm;
    masks_of(check, &xm, &zm);
    double sgn = outcome ? -1.0 : 1.0;
    long dim = rho.rows();
    if (xm == 0) {
        // Diagonal projector: keep indices with (-1)^{z.r} == sgn.
        for (long c = 0; c < dim; ++c) {
            bool keep_c = ((std::popcount(static_cast<uint64_t>(zm & c)) & 1) ? -1.0 : 1.0) == sgn;
            for (long r = 0; r < dim; ++r) {
                bool keep_r = ((std::popcount(static_cast<uint64_t>(zm & r)) & 1) ? -1.0 : 1.0) == sgn;
                if (!keep_c || !keep_r) rho(r, c) = 0.0;
            }
        }
        return;
    }
    // In-place over quadruples (r,c), (r^x,c), (r,c^x), (r^x,c^x):
    //   rho' = (rho + s P rho + s rho P + P rho P)/4 with
    //   (P rho)[r,c] = phi(r) rho[r^x, c], phi(r) = (-1)^{z.(r^x)},
    //   (rho P)[r,c] = psi(c) rho[r, c^x], psi(c) = (-1)^{z.c}.
    long low = xm & -xm;
    for (long c = 0; c < dim; ++c) {
        if (c & low) continue;
        long cb = c ^ xm;
        double psi_c = (std::popcount(static_cast<uint64_t>(zm & c)) & 1) ? -1.0 : 1.0;
        double psi_cb = (std::popcount(static_cast<uint64_t>(zm & cb)) & 1) ? -1.0 : 1.0;
        for (long r = 0; r < dim; ++r) {
            if (r & low) continue;
            long rb = r ^ xm;
            double phi_r = (std::popcount(static_cast<uint64_t>(zm & rb)) & 1) ? -1.0 : 1.0;
            double phi_rb = (std::popcount(static_cast<uint64_t>(zm & r)) & 1) ? -1.0 : 1.0;
            cd a = rho(r, c), b = rho(rb, c), e = rho(r, cb), f = rho(rb, cb);
            rho(r, c) = 0.25 * (a + sgn * (phi_r * b + psi_c * e) + phi_r * psi_c * f);
            rho(rb, c) = 0.25 * (b + sgn * (phi_rb * a + psi_c * f) + phi_rb * psi_c * e);
            rho(r, cb) = 0.25 * (e + sgn * (phi_r * f + psi_cb * a) + phi_r * psi_cb * b);
            rho(rb, cb) = 0.25 * (f + sgn * (phi_rb * e + psi_cb * b) + phi_rb * psi_cb * a);
        }
    }
}

Eigen::MatrixXcd pauli_dense(const PauliOp& p) {
    long xm, zm;
    masks_of(p, &xm, &zm);
    long dim = 1L << p.n;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    cd ph = std::pow(cd(0, 1), p.phase & 3);
    for (long c = 0; c < dim; ++c) {
        double s = (std::popcount(static_cast<uint64_t>(zm & c)) & 1) ? -1.0 : 1.0;
        out(c ^ xm, c) = ph * s;
    }
    return out;
}

Eigen::MatrixXcd code_projector(const SurfaceCode& code) {
    if (code.n_qubits() > 16) throw ResourceLimit("code_projector: too many qubits for dense form");
    long dim = 1L << code.n_qubits();
    MatrixXcd m = MatrixXcd::Identity(dim, dim);
    for (int k = 0; k < code.n_checks(); ++k) {
        long xm, zm;
        masks_of(code.check_operator(k), &xm, &zm);
        m = 0.5 * (m + left_mul_xz(m, xm, zm));
    }
    return m;
}

Matrix4cd noisy_cnot_unitary(double t) {
    if (!(t >= 0.0)) throw InvalidParameters("noisy_cnot_unitary: time must be nonnegative");
    Matrix4cd u = Matrix4cd::Zero();
    cd phase = std::exp(cd(0, -t));
    u(0, 0) = phase;
    u(1, 1) = phase;
    // control-1 block: exp(-i t X) = cos t I - i sin t X
    u(2, 2) = std::cos(t);
    u(3, 3) = std::cos(t);
    u(2, 3) = cd(0, -std::sin(t));
    u(3, 2) = cd(0, -std::sin(t));
    return u;
}

std::array<double, 16> cnot_twirl_probs(double t) {
    Matrix4cd u = noisy_cnot_unitary(t);
    std::array<double, 16> p{};
    for (int i = 0; i < 16; ++i) {
        cd overlap = (pauli::pair_matrix(i).adjoint() * u).trace() / 4.0;
        p[i] = std::norm(overlap);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Extraction circuit
// ---------------------------------------------------------------------------

namespace {

struct Propagator {
    const SurfaceCode& code;
    const CircuitNoiseModel& noise;
    int n_data;
    std::array<MatrixXcd, 4> ops;  // logical I, X, Y, Z initial operators (times Pi/2)
    std::mt19937_64* rng = nullptr;       // sampling mode
    std::vector<uint8_t> replay_stream;   // replay mode (set via set_record)
    CircuitRecord out_record;
    size_t replay_pos = 0;

    void set_record(const CircuitRecord& r) { replay_stream = r.flat_outcomes(); }

    explicit Propagator(const SurfaceCode& c, const CircuitNoiseModel& nm)
        : code(c), noise(nm), n_data(c.n_qubits()) {
        if (n_data != 9) throw ResourceLimit("extraction circuits support d=3 only");
        MatrixXcd pi = code_projector(code);
        PauliOp ly = code.logical_x() * code.logical_z();
        ly.phase = (ly.phase + 1) & 3;  // hermitian logical Y = i XZ
        ops[0] = 0.5 * pi;
        ops[1] = 0.5 * pauli_dense(code.logical_x()) * pi;
        ops[2] = 0.5 * pauli_dense(ly) * pi;
        ops[3] = 0.5 * pauli_dense(code.logical_z()) * pi;
    }

    int next_outcome(double p_zero) {
        if (rng) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            return u(*rng) < p_zero ? 0 : 1;
        }
        return replay_stream.at(replay_pos++);
    }

    // One ancilla-based check measurement; returns the syndrome bit.
    int measure_check(int check_index) {
        const Face& face = check_index < static_cast<int>(code.x_checks().size())
                               ? code.x_checks()[check_index]
                               : code.z_checks()[check_index - code.x_checks().size()];
        bool is_x = face.is_x;
        int anc = n_data;  // ancilla bit position
        long dim_d = 1L << n_data;

        if (noise.cnot == CnotKind::perfect && noise.ancilla_noise.empty()) {
            // Perfect gates and a clean ancilla realize the exact projective
            // measurement of the check; skip the ancilla entirely.
            const PauliOp& check = code.check_operator(check_index);
            MatrixXcd probe = ops[0];
            project_check(probe, check, 0);
            double tr = ops[0].trace().real();
            double p_zero = tr > 0 ? probe.trace().real() / tr : 1.0;
            p_zero = std::clamp(p_zero, 0.0, 1.0);
            int m = next_outcome(p_zero);
            out_record.ancilla_outcomes.push_back(static_cast<uint8_t>(m));
            out_record.probability *= m == 0 ? p_zero : (1.0 - p_zero);
            if (m == 0) {
                ops[0].swap(probe);
                for (int a = 1; a < 4; ++a) project_check(ops[a], check, 0);
            } else {
                for (auto& o : ops) project_check(o, check, 1);
            }
            return m;
        }

        // attach ancilla in |0>
        for (auto& o : ops) {
            MatrixXcd big = MatrixXcd::Zero(2 * dim_d, 2 * dim_d);
            big.topLeftCorner(dim_d, dim_d) = o;
            o.swap(big);
        }
        Matrix2cd h;
        h << 1, 1, 1, -1;
        h /= std::sqrt(2.0);
        if (is_x)
            for (auto& o : ops) apply_1q_unitary(o, n_data + 1, anc, h);
        if (!noise.ancilla_noise.empty()) {
            const Matrix4cd& chi = noise.ancilla_noise.at(check_index).chi;
            for (auto& o : ops) apply_1q_chi(o, n_data + 1, anc, chi);
        }

        // entangling gates, data qubits in stored (row-major) order
        for (int q : face.qubits) {
            int ctrl = is_x ? anc : q;
            int tgt = is_x ? q : anc;
            switch (noise.cnot) {
                case CnotKind::perfect: {
                    Matrix4cd u = Matrix4cd::Zero();
                    u(0, 0) = u(1, 1) = 1.0;
                    u(2, 3) = u(3, 2) = 1.0;
                    for (auto& o : ops) apply_2q_unitary(o, n_data + 1, ctrl, tgt, u);
                    break;
                }
                case CnotKind::timed: {
                    Matrix4cd u = noisy_cnot_unitary(noise.cnot_time);
                    for (auto& o : ops) apply_2q_unitary(o, n_data + 1, ctrl, tgt, u);
                    break;
                }
                case CnotKind::twirled: {
                    auto probs = cnot_twirl_probs(noise.cnot_time);
                    for (auto& o : ops) apply_2q_pauli_channel(o, n_data + 1, ctrl, tgt, probs);
                    break;
                }
            }
        }
        if (is_x)
            for (auto& o : ops) apply_1q_unitary(o, n_data + 1, anc, h);

        // measure ancilla in Z, conditioned on the trace of the I component
        double tr_total = ops[0].trace().real();
        double p0_num = ops[0].topLeftCorner(dim_d, dim_d).trace().real();
        double p_zero = tr_total > 0 ? p0_num / tr_total : 1.0;
        p_zero = std::clamp(p_zero, 0.0, 1.0);
        int m = next_outcome(p_zero);
        out_record.ancilla_outcomes.push_back(static_cast<uint8_t>(m));
        out_record.probability *= m == 0 ? p_zero : (1.0 - p_zero);

        // project and detach
        long off = static_cast<long>(m) * dim_d;
        for (auto& o : ops) {
            MatrixXcd small = o.block(off, off, dim_d, dim_d);
            o.swap(small);
        }
        return m;
    }

    void run(int rounds) {
        for (int k = 0; k < rounds; ++k) {
            if (!noise.data_noise.empty())
                for (int q = 0; q < n_data; ++q) {
                    const Matrix4cd& chi = noise.data_noise.at(q).chi;
                    for (auto& o : ops) apply_1q_chi(o, n_data, q, chi);
                }
            Syndrome s;
            s.bits.resize(code.n_checks());
            for (int c = 0; c < code.n_checks(); ++c)
                s.bits[c] = static_cast<uint8_t>(measure_check(c));
            out_record.noisy.push_back(std::move(s));
        }
        // final noiseless round, measured directly on the data qubits
        Syndrome fin;
        fin.bits.resize(code.n_checks());
        for (int c = 0; c < code.n_checks(); ++c) {
            // probability of outcome 0 from the trace of the projected I component
            MatrixXcd probe = ops[0];
            project_check(probe, code.check_operator(c), 0);
            double tr = ops[0].trace().real();
            double p_zero = tr > 0 ? probe.trace().real() / tr : 1.0;
            p_zero = std::clamp(p_zero, 0.0, 1.0);
            int m = next_outcome(p_zero);
            fin.bits[c] = static_cast<uint8_t>(m);
            out_record.probability *= m == 0 ? p_zero : (1.0 - p_zero);
            for (auto& o : ops) project_check(o, code.check_operator(c), m);
        }
        out_record.final_syndrome = fin;
        // noiseless recovery
        PauliOp f = fiducial_correction(code, fin);
        for (auto& o : ops) conjugate_pauli(o, f);
    }

    Matrix4d ptm() const {
        PauliOp ly = code.logical_x() * code.logical_z();
        ly.phase = (ly.phase + 1) & 3;
        std::array<PauliOp, 4> logicals = {PauliOp(code.n_qubits()), code.logical_x(), ly,
                                           code.logical_z()};
        Matrix4d c;
        for (int i = 0; i < 4; ++i) {
            long xm, zm;
            masks_of(logicals[i], &xm, &zm);
            cd ph = std::pow(cd(0, 1), logicals[i].phase & 3);
            for (int j = 0; j < 4; ++j) {
                // Tr(L_i ops_j): L_i has one entry per column.
                cd acc = 0.0;
                long dim = ops[j].rows();
                for (long r = 0; r < dim; ++r) {
                    long u = r ^ xm;
                    double s = (std::popcount(static_cast<uint64_t>(zm & u)) & 1) ? -1.0 : 1.0;
                    acc += ph * s * ops[j](u, r);
                }
                c(i, j) = acc.real();
            }
        }
        return c;
    }
};

}  // namespace

ExtractionResult run_extraction(const SurfaceCode& code, const ExtractionSchedule& schedule,
                                const CircuitNoiseModel& noise, std::mt19937_64& rng) {
    Propagator prop(code, noise);
    prop.rng = &rng;
    prop.run(schedule.rounds);
    ExtractionResult out;
    out.syndromes = prop.out_record.noisy;
    out.probability = prop.out_record.probability;
    out.state.n = code.n_qubits();
    out.state.m = prop.ops[0];
    return out;
}

CircuitSample sample_circuit_channel(const SurfaceCode& code, const ExtractionSchedule& schedule,
                                     const CircuitNoiseModel& noise, std::mt19937_64& rng) {
    Propagator prop(code, noise);
    prop.rng = &rng;
    prop.run(schedule.rounds);
    CircuitSample out;
    out.record = prop.out_record;
    out.ptm = prop.ptm();
    out.p_weight = prop.out_record.probability;
    return out;
}

Matrix4d circuit_channel_for_record(const SurfaceCode& code, const ExtractionSchedule& schedule,
                                    const CircuitNoiseModel& noise, const CircuitRecord& record) {
    Propagator prop(code, noise);
    prop.set_record(record);
    prop.run(schedule.rounds);
    return prop.ptm();
}

std::vector<CircuitSample> logical_ptm_circuit(const SurfaceCode& code,
                                               const ExtractionSchedule& schedule,
                                               const CircuitNoiseModel& noise, std::mt19937_64& rng,
                                               int n_samples) {
    std::vector<CircuitSample> out;
    out.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k)
        out.push_back(sample_circuit_channel(code, schedule, noise, rng));
    return out;
}

}  // namespace qeclab::sv
