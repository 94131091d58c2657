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

#include "qeclab/channels.hpp"

#include <cmath>
#include <sstream>

namespace qeclab {

bool Channel::is_pauli(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(chi(i, j)) > tol) return false;
    return true;
}

Channel Channel::identity() {
    Channel c;
    c.chi(0, 0) = 1.0;
    c.label = "identity";
    return c;
}

void validate_channel(const Channel& c, const NumericsSettings& st) {
    if (!is_hermitian(c.chi, st.hermiticity_tol))
        throw InvalidParameters("channel '" + c.label + "': chi not hermitian");
    CptpReport r = cptp_report(c.chi);
    if (r.choi_min_eigenvalue < -st.positivity_slack)
        throw InvalidParameters("channel '" + c.label + "': Choi operator not PSD (min eig " +
                                std::to_string(r.choi_min_eigenvalue) + ")");
    if (r.trace_residual > st.positivity_slack)
        throw InvalidParameters("channel '" + c.label + "': not trace preserving (residual " +
                                std::to_string(r.trace_residual) + ")");
}

namespace {

// chi matrix of the channel with the given Kraus operators.
Matrix4cd kraus_to_chi(const std::vector<Matrix2cd>& kraus) {
    Matrix4cd chi = Matrix4cd::Zero();
    for (const auto& k : kraus) {
        Eigen::Vector4cd a;
        for (int i = 0; i < 4; ++i) a(i) = (pauli::matrix(i).adjoint() * k).trace() / 2.0;
        chi += a * a.adjoint();
    }
    return chi;
}

}  // namespace

Channel apd_channel(const ApdParams& p) {
    if (!(p.t1 > 0.0) || !(p.t2 > 0.0)) throw InvalidParameters("apd_channel: T1, T2 must be positive");
    if (p.t2 > 2.0 * p.t1 * (1.0 + 1e-12)) throw InvalidParameters("apd_channel: requires T2 <= 2*T1");
    if (!(p.t > 0.0)) throw InvalidParameters("apd_channel: elapsed time must be positive");

    double gamma = 1.0 - std::exp(-p.t / p.t1);
    // sqrt((1-gamma)(1-lambda)) = exp(-t/T2)  =>  lambda = 1 - exp(t/T1 - 2t/T2).
    double lambda = 1.0 - std::exp(p.t / p.t1 - 2.0 * p.t / p.t2);
    lambda = std::max(lambda, 0.0);

    std::vector<Matrix2cd> kraus;
    Matrix2cd k;
    // amplitude damping after phase damping reproduces the matrix action
    // rho00 -> rho00 + gamma rho11, rho01 -> sqrt((1-gamma)(1-lambda)) rho01.
    Matrix2cd a0, a1, p0, p1;
    a0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    a1 << 0, std::sqrt(gamma), 0, 0;
    p0 << 1, 0, 0, std::sqrt(1.0 - lambda);
    p1 << 0, 0, 0, std::sqrt(lambda);
    kraus.push_back(a0 * p0);
    kraus.push_back(a0 * p1);
    kraus.push_back(a1 * p0);
    kraus.push_back(a1 * p1);

    Channel c;
    c.chi = kraus_to_chi(kraus);
    std::ostringstream os;
    os << "apd(T1=" << p.t1 << ",T2=" << p.t2 << ",t=" << p.t << ")";
    c.label = os.str();
    return c;
}

Channel rotation_channel(const RotationParams& p) {
    double norm = std::sqrt(p.axis[0] * p.axis[0] + p.axis[1] * p.axis[1] + p.axis[2] * p.axis[2]);
    if (std::abs(norm - 1.0) > 1e-9) throw InvalidParameters("rotation_channel: axis must be unit");

    // U = cos(theta/2) I + i sin(theta/2) (r . sigma): rank-1 chi = u u^dagger.
    Eigen::Vector4cd u;
    double c2 = std::cos(p.theta / 2.0), s2 = std::sin(p.theta / 2.0);
    u(0) = c2;
    for (int k = 0; k < 3; ++k) u(k + 1) = cd(0.0, s2 * p.axis[k]);

    Channel c;
    c.chi = u * u.adjoint();
    std::ostringstream os;
    os << "rotation(theta=" << p.theta << ",axis=[" << p.axis[0] << "," << p.axis[1] << ","
       << p.axis[2] << "])";
    c.label = os.str();
    return c;
}

Channel biased_pauli_channel(const BiasedPauliParams& p) {
    if (p.p < 0.0 || p.p > 1.0) throw InvalidParameters("biased_pauli_channel: p must be in [0,1]");
    if (!(p.eta > 0.0)) throw InvalidParameters("biased_pauli_channel: eta must be positive");
    Channel c;
    c.chi = Matrix4cd::Zero();
    c.chi(0, 0) = 1.0 - p.p;
    c.chi(1, 1) = p.p_x();
    c.chi(2, 2) = p.p_y();
    c.chi(3, 3) = p.p_z();
    std::ostringstream os;
    os << "biased-pauli(p=" << p.p << ",eta=" << p.eta << ")";
    c.label = os.str();
    return c;
}

Channel depolarizing_channel(double p) {
    Channel c = biased_pauli_channel({p, 0.5});
    std::ostringstream os;
    os << "depolarizing(p=" << p << ")";
    c.label = os.str();
    return c;
}

Channel pauli_twirl(const Channel& c) {
    Channel out;
    out.chi = Matrix4cd::Zero();
    out.chi.diagonal() = c.chi.diagonal();
    out.label = "twirl(" + c.label + ")";
    return out;
}

PerturbedChannel perturbed_channel(const Channel& c, int i, double delta) {
    if (i < 0 || i > 15) throw InvalidInput("perturbed_channel: index must be in 0..15");
    if (delta < 0.0) throw InvalidInput("perturbed_channel: delta must be nonnegative");

    Matrix4cd v = Matrix4cd::Identity() + pauli::pair_matrix(i);
    Matrix4cd chi = c.chi + delta * v;
    double a = chi.trace().real();  // Choi trace equals Tr(chi)
    chi /= a;

    PerturbedChannel out;
    out.channel.chi = chi;
    out.channel.label = c.label + "+" + std::to_string(delta) + "*V_" + pauli::pair_label(i);
    CptpReport rep = cptp_report(chi);
    if (rep.choi_min_eigenvalue < -1e-10)
        throw InvalidParameters("perturbed_channel: result not completely positive");
    out.trace_defect = rep.trace_residual;
    return out;
}

ApdParams sample_t1_t2(double mean, double rel_std, std::mt19937_64& rng) {
    if (!(mean > 0.0)) throw InvalidParameters("sample_t1_t2: mean must be positive");
    if (rel_std < 0.0) throw InvalidParameters("sample_t1_t2: rel_std must be nonnegative");
    if (rel_std == 0.0) return ApdParams{mean, mean, 1.0};

    std::normal_distribution<double> dist(mean, rel_std * mean);
    const long max_attempts = 1000000;  // acceptance below 1e-4 gives up well before this
    long attempts = 0;
    while (attempts < max_attempts) {
        ++attempts;
        double t1 = dist(rng);
        double t2 = dist(rng);
        if (t1 > 0.0 && t2 > 0.0 && t2 <= 2.0 * t1) return ApdParams{t1, t2, 1.0};
        if (attempts >= 10000 && attempts % 10000 == 0) {
            // Crude running acceptance estimate: no acceptance in `attempts` draws.
            throw SamplingFailure("sample_t1_t2: acceptance rate below 1e-4");
        }
    }
    throw SamplingFailure("sample_t1_t2: acceptance rate below 1e-4");
}

bool NoiseAssignment::all_pauli(double tol) const {
    for (const auto& c : channels)
        if (!c.is_pauli(tol)) return false;
    return true;
}

NoiseAssignment NoiseAssignment::uniform(const Channel& c, int n_qubits) {
    NoiseAssignment a;
    a.channels.assign(n_qubits, c);
    return a;
}

Channel NoiseDesc::build() const {
    if (kind == "apd") return apd_channel(apd);
    if (kind == "rotation") return rotation_channel(rotation);
    if (kind == "biased-pauli") return biased_pauli_channel(biased);
    if (kind == "depolarizing") return depolarizing_channel(biased.p);
    throw InvalidParameters("NoiseDesc: unknown kind '" + kind + "'");
}

std::string NoiseDesc::summary() const { return build().label; }

}  // namespace qeclab
