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

#include "qeclab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <cstdint>

namespace qeclab {

namespace pauli {

namespace {
const std::array<Matrix2cd, 4> kPaulis = [] {
    std::array<Matrix2cd, 4> p;
    const cd i(0.0, 1.0);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
}();
const char* kLabels[4] = {"I", "X", "Y", "Z"};
}  // namespace

const Matrix2cd& matrix(int idx) { return kPaulis.at(idx); }
const char* label(int idx) { return kLabels[idx]; }

Product product(int a, int b) {
    // sigma_a sigma_b = phase * sigma_c, from the structure constants.
    static const std::array<std::array<Product, 4>, 4> table = [] {
        std::array<std::array<Product, 4>, 4> t;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                Matrix2cd m = kPaulis[a] * kPaulis[b];
                for (int c = 0; c < 4; ++c) {
                    cd overlap = (kPaulis[c].adjoint() * m).trace() / 2.0;
                    if (std::abs(overlap) > 0.5) {
                        t[a][b] = Product{c, overlap};
                        break;
                    }
                }
            }
        }
        return t;
    }();
    return table.at(a).at(b);
}

Matrix4cd pair_matrix(int i) {
    if (i < 0 || i > 15) throw InvalidInput("pauli pair index out of range");
    const Matrix2cd& a = kPaulis[i / 4];
    const Matrix2cd& b = kPaulis[i % 4];
    Matrix4cd out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    return out;
}

const char* pair_label(int i) {
    static const char* labels[16] = {"II", "IX", "IY", "IZ", "XI", "XX", "XY", "XZ",
                                     "YI", "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};
    return labels[i];
}

}  // namespace pauli

const NumericsSettings& default_numerics_settings() {
    static const NumericsSettings s{};
    return s;
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_finite(const CMatrix& m) { return m.allFinite(); }

SvdTruncation svd_truncate(const CMatrix& m, int max_rank, double abs_tol) {
    if (!is_finite(m)) throw InvalidInput("svd_truncate: non-finite input");
    if (max_rank < 1) throw InvalidInput("svd_truncate: max_rank must be positive");
    if (abs_tol < 0) throw InvalidInput("svd_truncate: abs_tol must be nonnegative");

    Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    int keep = 0;
    while (keep < sv.size() && keep < max_rank && sv(keep) >= abs_tol) ++keep;
    if (keep == 0 && sv.size() > 0) keep = 0;  // all dropped; empty factors below

    SvdTruncation out;
    out.singular_values.assign(sv.data(), sv.data() + keep);
    double w = 0.0;
    for (int k = keep; k < sv.size(); ++k) w += sv(k) * sv(k);
    out.discarded_weight = w;
    out.u = svd.matrixU().leftCols(keep);
    out.v_dagger = svd.matrixV().leftCols(keep).adjoint();
    return out;
}

Matrix4d chi_to_ptm(const CMatrix& chi, double hermiticity_tol) {
    if (chi.rows() != 4 || chi.cols() != 4) throw InvalidInput("chi_to_ptm: chi must be 4x4");
    if (!is_finite(chi)) throw InvalidInput("chi_to_ptm: non-finite chi");
    if (!is_hermitian(chi, hermiticity_tol)) throw InvalidInput("chi_to_ptm: chi not hermitian");

    Matrix4d ptm = Matrix4d::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            cd acc = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (chi(i, j) == cd(0.0)) continue;
                    acc += chi(i, j) *
                           (pauli::matrix(a) * pauli::matrix(i) * pauli::matrix(b) * pauli::matrix(j))
                               .trace();
                }
            ptm(a, b) = 0.5 * acc.real();
        }
    }
    return ptm;
}

namespace {

// 16x16 real matrix of the linear map vec(chi) -> vec(ptm) over the hermitian
// parametrization of chi. chi is encoded as the 16 real numbers
// (diag, re upper, im upper).
Eigen::MatrixXd chi_param_to_ptm_matrix() {
    Eigen::MatrixXd t(16, 16);
    int col = 0;
    auto basis_chi = [](int i, int j, bool imag_part) {
        Matrix4cd chi = Matrix4cd::Zero();
        if (i == j) {
            chi(i, i) = 1.0;
        } else if (!imag_part) {
            chi(i, j) = 1.0;
            chi(j, i) = 1.0;
        } else {
            chi(i, j) = cd(0.0, 1.0);
            chi(j, i) = cd(0.0, -1.0);
        }
        return chi;
    };
    auto push = [&](const Matrix4cd& chi) {
        Matrix4d m = chi_to_ptm(chi);
        for (int k = 0; k < 16; ++k) t(k, col) = m(k / 4, k % 4);
        ++col;
    };
    for (int i = 0; i < 4; ++i) push(basis_chi(i, i, false));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) push(basis_chi(i, j, false));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) push(basis_chi(i, j, true));
    return t;
}

}  // namespace

Matrix4cd ptm_to_chi(const Matrix4d& ptm) {
    if (!ptm.allFinite()) throw InvalidInput("ptm_to_chi: non-finite input");
    static const Eigen::PartialPivLU<Eigen::MatrixXd> lu(chi_param_to_ptm_matrix());
    Eigen::VectorXd rhs(16);
    for (int k = 0; k < 16; ++k) rhs(k) = ptm(k / 4, k % 4);
    Eigen::VectorXd x = lu.solve(rhs);

    Matrix4cd chi = Matrix4cd::Zero();
    int idx = 0;
    for (int i = 0; i < 4; ++i) chi(i, i) = x(idx++);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            chi(i, j) += x(idx);
            chi(j, i) += x(idx);
            ++idx;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            chi(i, j) += cd(0.0, x(idx));
            chi(j, i) += cd(0.0, -x(idx));
            ++idx;
        }
    return chi;
}

Matrix4cd choi_matrix(const CMatrix& chi) {
    if (chi.rows() != 4 || chi.cols() != 4) throw InvalidInput("choi_matrix: chi must be 4x4");
    // |Omega> = (|00> + |11>)/sqrt(2); J = sum_ij chi_ij (P_i x I)|Omega><Omega|(P_j x I).
    Eigen::Vector4cd omega;
    omega << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    std::array<Eigen::Vector4cd, 4> lifted;
    for (int i = 0; i < 4; ++i) {
        Matrix4cd pi_x_id = Matrix4cd::Zero();
        const Matrix2cd& p = pauli::matrix(i);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                pi_x_id(2 * r, 2 * c) = p(r, c);
                pi_x_id(2 * r + 1, 2 * c + 1) = p(r, c);
            }
        lifted[i] = pi_x_id * omega;
    }
    Matrix4cd j = Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) j += chi(i, k) * lifted[i] * lifted[k].adjoint();
    return j;
}

CptpReport cptp_report(const CMatrix& chi) {
    Matrix4cd j = choi_matrix(chi);
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(j, Eigen::EigenvaluesOnly);
    CptpReport r;
    r.choi_min_eigenvalue = es.eigenvalues().minCoeff();
    // Partial trace over the output (first) factor: (Tr_out J)_{a b} = sum_s J_{(s a),(s b)}.
    Matrix2cd tr_out = Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < 2; ++s) tr_out(a, b) += j(2 * s + a, 2 * s + b);
    Matrix2cd target = 0.5 * Matrix2cd::Identity();
    r.trace_residual = (tr_out - target).cwiseAbs().maxCoeff();
    return r;
}

// ---------------------------------------------------------------------------
// Diamond distance
// ---------------------------------------------------------------------------

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(uint64_t& state) {
    return (splitmix64(state) >> 11) * (1.0 / 9007199254740992.0);
}

// Superoperator of the map with normalized PTM `t` in the computational
// basis: S[(r,r'),(s,s')] such that Lambda(|s><s'|)_{r r'} = S[...]. Index
// packing: row = 2*r + r', col = 2*s + s'.
Matrix4cd ptm_to_superop(const Matrix4d& t) {
    Matrix4cd s = Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (t(a, b) == 0.0) continue;
            // Lambda(sigma_b) += t(a,b) sigma_a; sigma_b = sum_{s s'} (sigma_b)_{s s'} |s><s'|
            // => Lambda(|s><s'|) responds through the dual basis coefficient
            // (1/2)(sigma_b)_{s' s}.
            const Matrix2cd& pa = pauli::matrix(a);
            const Matrix2cd& pb = pauli::matrix(b);
            for (int r = 0; r < 2; ++r)
                for (int rp = 0; rp < 2; ++rp)
                    for (int ss = 0; ss < 2; ++ss)
                        for (int sp = 0; sp < 2; ++sp)
                            s(2 * r + rp, 2 * ss + sp) += t(a, b) * pa(r, rp) * 0.5 * pb(sp, ss);
        }
    return s;
}

struct DiamondProblem {
    // delta(|s><s'|) as 16 2x2 matrices, and the adjoint map.
    std::array<Matrix2cd, 4> delta;      // indexed by 2*s + s'
    std::array<Matrix2cd, 4> delta_adj;  // adjoint map applied to |r><r'|

    explicit DiamondProblem(const Matrix4cd& superop) {
        Matrix4cd adj = superop.adjoint();
        for (int k = 0; k < 4; ++k) {
            Matrix2cd d, da;
            for (int r = 0; r < 2; ++r)
                for (int rp = 0; rp < 2; ++rp) {
                    d(r, rp) = superop(2 * r + rp, k);
                    da(r, rp) = adj(2 * r + rp, k);
                }
            delta[k] = d;
            delta_adj[k] = da;
        }
    }

    // W = (delta (x) id)(|psi><psi|) for psi in C^2 (x) C^2, basis |s a>.
    Matrix4cd apply_extended(const Eigen::Vector4cd& psi, bool adjoint) const {
        const auto& maps = adjoint ? delta_adj : delta;
        Matrix4cd w = Matrix4cd::Zero();
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp) {
                const Matrix2cd& d = maps[2 * s + sp];
                for (int a = 0; a < 2; ++a)
                    for (int ap = 0; ap < 2; ++ap) {
                        cd rho = psi(2 * s + a) * std::conj(psi(2 * sp + ap));
                        if (rho == cd(0.0)) continue;
                        for (int r = 0; r < 2; ++r)
                            for (int rp = 0; rp < 2; ++rp)
                                w(2 * r + a, 2 * rp + ap) += d(r, rp) * rho;
                    }
            }
        return w;
    }

    // Same with a hermitian operator instead of a pure state (for the adjoint
    // step of the ascent).
    Matrix4cd apply_extended_op(const Matrix4cd& op, bool adjoint) const {
        const auto& maps = adjoint ? delta_adj : delta;
        Matrix4cd w = Matrix4cd::Zero();
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp) {
                const Matrix2cd& d = maps[2 * s + sp];
                for (int a = 0; a < 2; ++a)
                    for (int ap = 0; ap < 2; ++ap) {
                        cd rho = op(2 * s + a, 2 * sp + ap);
                        if (rho == cd(0.0)) continue;
                        for (int r = 0; r < 2; ++r)
                            for (int rp = 0; rp < 2; ++rp)
                                w(2 * r + a, 2 * rp + ap) += d(r, rp) * rho;
                    }
            }
        return w;
    }
};

double ascent(const DiamondProblem& prob, Eigen::Vector4cd psi, const NumericsSettings& st,
              bool* converged) {
    psi.normalize();
    double value = 0.0;
    *converged = false;
    for (int it = 0; it < st.diamond_max_iters; ++it) {
        Matrix4cd w = prob.apply_extended(psi, false);
        Eigen::SelfAdjointEigenSolver<Matrix4cd> es(w);
        double f = es.eigenvalues().cwiseAbs().sum();
        // sign(W)
        Matrix4cd sgn = Matrix4cd::Zero();
        for (int k = 0; k < 4; ++k) {
            double lam = es.eigenvalues()(k);
            double s = lam >= 0 ? 1.0 : -1.0;
            sgn += s * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        }
        // A = (delta^dagger (x) id)(sign); next iterate is its top eigenvector.
        Matrix4cd a = prob.apply_extended_op(sgn, true);
        Matrix4cd a_herm = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix4cd> ea(a_herm);
        psi = ea.eigenvectors().col(3);

        if (std::abs(f - value) < st.diamond_tol) {
            *converged = true;
            return f;
        }
        value = f;
    }
    return value;
}

bool try_pauli_closed_form(const Matrix4d& t, double* out) {
    const double tol = 1e-12;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(t(i, j)) > tol) return false;
    if (std::abs(t(0, 0) - 1.0) > 1e-9) return false;
    // Probabilities from the diagonal by the Walsh relations.
    double tx = t(1, 1), ty = t(2, 2), tz = t(3, 3);
    double p[4];
    p[0] = (1 + tx + ty + tz) / 4.0;
    p[1] = (1 + tx - ty - tz) / 4.0;
    p[2] = (1 - tx + ty - tz) / 4.0;
    p[3] = (1 - tx - ty + tz) / 4.0;
    double dist = 0.0;
    for (int i = 0; i < 4; ++i) dist += std::abs(p[i] - (i == 0 ? 1.0 : 0.0));
    *out = dist;
    return true;
}

bool try_unitary_closed_form(const Matrix4d& t, double* out) {
    const double tol = 1e-11;
    for (int k = 1; k < 4; ++k)
        if (std::abs(t(0, k)) > tol || std::abs(t(k, 0)) > tol) return false;
    if (std::abs(t(0, 0) - 1.0) > tol) return false;
    Eigen::Matrix3d r = t.block<3, 3>(1, 1);
    if ((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol) return false;
    if (r.determinant() < 0.0) return false;
    double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
    double theta = std::acos(c);
    *out = 2.0 * std::abs(std::sin(theta / 2.0));
    return true;
}

}  // namespace

double diamond_ascent_from(const Matrix4d& delta_ptm, const Eigen::Vector4cd& start,
                           const NumericsSettings& settings) {
    DiamondProblem prob(ptm_to_superop(delta_ptm));
    bool conv = false;
    return ascent(prob, start, settings, &conv);
}

double diamond_distance_to_identity(const Matrix4d& ptm, double normalization,
                                    const NumericsSettings& settings) {
    if (!ptm.allFinite()) throw InvalidInput("diamond_distance_to_identity: non-finite map");
    if (!(normalization > 0.0))
        throw InvalidInput("diamond_distance_to_identity: normalization must be positive");

    Matrix4d t = ptm / normalization;
    if (settings.allow_closed_forms) {
        double v;
        if (try_pauli_closed_form(t, &v)) return v;
        if (try_unitary_closed_form(t, &v)) return v;
    }

    Matrix4d delta = t - Matrix4d::Identity();
    DiamondProblem prob(ptm_to_superop(delta));

    uint64_t seed = 0x5eedc0de5eedc0deULL;
    double best = 0.0;
    int converged_runs = 0;
    for (int r = 0; r < settings.diamond_restarts; ++r) {
        Eigen::Vector4cd psi;
        if (r == 0) {
            // Maximally entangled start; optimal for unitary-like maps.
            psi << 1, 0, 0, 1;
        } else if (r == 1) {
            psi << 1, 0, 0, 0;
        } else {
            for (int k = 0; k < 4; ++k) {
                double re = 2.0 * uniform01(seed) - 1.0;
                double im = 2.0 * uniform01(seed) - 1.0;
                psi(k) = cd(re, im);
            }
        }
        if (psi.norm() < 1e-12) psi << 1, 0, 0, 0;
        bool conv = false;
        double v = ascent(prob, psi, settings, &conv);
        if (conv) ++converged_runs;
        best = std::max(best, v);
    }
    if (converged_runs == 0) {
        throw NumericalFailure("diamond_distance_to_identity: ascent did not converge; best lower bound " +
                               std::to_string(best));
    }
    return best;
}

}  // namespace qeclab
