#include <qeclab/numerics.hpp>

#include <cmath>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace qeclab;

TEST_CASE("svd_truncate identity keeps everything") {
    CMatrix m = CMatrix::Identity(4, 4);
    auto r = svd_truncate(m, 4, 0.0);
    REQUIRE(r.singular_values.size() == 4);
    for (double s : r.singular_values) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.discarded_weight == doctest::Approx(0.0));
}

TEST_CASE("svd_truncate rank-1 outer product") {
    std::mt19937_64 rng(7);
    Eigen::VectorXcd u = oracles::random_complex(rng, 6, 1);
    Eigen::VectorXcd v = oracles::random_complex(rng, 5, 1);
    u.normalize();
    v.normalize();
    CMatrix m = u * v.adjoint();
    auto r = svd_truncate(m, 1, 0.0);
    REQUIRE(r.singular_values.size() == 1);
    CHECK(r.singular_values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.discarded_weight < 1e-20);
}

TEST_CASE("svd_truncate reconstructs a random matrix at full rank") {
    std::mt19937_64 rng(11);
    CMatrix m = oracles::random_complex(rng, 8, 8);
    auto r = svd_truncate(m, 8, 0.0);
    CMatrix s = CMatrix::Zero(r.singular_values.size(), r.singular_values.size());
    for (size_t k = 0; k < r.singular_values.size(); ++k) s(k, k) = r.singular_values[k];
    CMatrix rec = r.u * s * r.v_dagger;
    CHECK((rec - m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("svd_truncate drops below abs_tol and reports the weight") {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = 1.0;
    m(2, 2) = 0.25;
    auto r = svd_truncate(m, 3, 0.5);
    REQUIRE(r.singular_values.size() == 2);
    CHECK(r.discarded_weight == doctest::Approx(0.0625));
    auto r2 = svd_truncate(m, 1, 0.0);
    CHECK(r2.discarded_weight == doctest::Approx(1.0 + 0.0625));
}

TEST_CASE("svd_truncate rejects non-finite input") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd_truncate(m, 2, 0.0), InvalidInput);
}

TEST_CASE("chi_to_ptm on identity and X-flip channels") {
    Matrix4cd chi = Matrix4cd::Zero();
    chi(0, 0) = 1.0;
    CHECK((chi_to_ptm(chi) - Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    chi.setZero();
    chi(1, 1) = 1.0;  // pure X
    Matrix4d expect = Matrix4d::Identity();
    expect(2, 2) = -1.0;
    expect(3, 3) = -1.0;
    CHECK((chi_to_ptm(chi) - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("chi_to_ptm of a z rotation matches direct conjugation") {
    double theta = M_PI / 2.0;
    Matrix2cd u = std::cos(theta / 2) * pauli::matrix(0) +
                  cd(0, std::sin(theta / 2)) * pauli::matrix(3);
    Matrix4cd chi = oracles::chi_of_unitary(u);
    Matrix4d ptm = chi_to_ptm(chi);
    // rotation block on the X/Y sector: U X U^dag = cos(theta) X - sin(theta) Y
    CHECK(ptm(1, 1) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(ptm(1, 2) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
    CHECK(ptm(2, 1) == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    CHECK(ptm(2, 2) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    // full matrix against the dense oracle
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            CHECK(ptm(a, b) == doctest::Approx(oracles::ptm_entry(chi, a, b)).epsilon(1e-12));
}

TEST_CASE("chi_to_ptm rejects non-hermitian input") {
    Matrix4cd chi = Matrix4cd::Zero();
    chi(0, 1) = 1.0;
    CHECK_THROWS_AS(chi_to_ptm(chi), InvalidInput);
}

TEST_CASE("ptm_to_chi inverts chi_to_ptm") {
    Matrix4d id = Matrix4d::Identity();
    Matrix4cd chi = ptm_to_chi(id);
    CHECK(std::abs(chi(0, 0) - cd(1.0)) < 1e-12);
    CHECK(chi.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));

    Matrix4d flip = Matrix4d::Identity();
    flip(2, 2) = flip(3, 3) = -1.0;
    Matrix4cd chix = ptm_to_chi(flip);
    CHECK(std::abs(chix(1, 1) - cd(1.0)) < 1e-12);
}

TEST_CASE("chi <-> ptm round trip on random hermitian inputs") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 1000; ++it) {
        Matrix4cd chi = oracles::random_hermitian4(rng);
        Matrix4d ptm = chi_to_ptm(chi);
        Matrix4cd back = ptm_to_chi(ptm);
        CHECK((back - chi).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("choi of the identity channel is the Bell projector") {
    Matrix4cd chi = Matrix4cd::Zero();
    chi(0, 0) = 1.0;
    Matrix4cd j = choi_matrix(chi);
    CHECK(j.trace().real() == doctest::Approx(1.0));
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(j);
    CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));
    CHECK(es.eigenvalues()(2) < 1e-14);
}

TEST_CASE("choi of full depolarization is maximally mixed") {
    double p = 0.75;
    Matrix4cd chi = Matrix4cd::Zero();
    chi(0, 0) = 1 - p;
    chi(1, 1) = chi(2, 2) = chi(3, 3) = p / 3.0;
    Matrix4cd j = choi_matrix(chi);
    CHECK((j - 0.25 * Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("choi of amplitude damping stays PSD") {
    double gamma = 0.3;
    Matrix2cd k0, k1;
    k0 << 1, 0, 0, std::sqrt(1 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    Matrix4cd chi = oracles::chi_of_unitary(k0);  // rank-1 part of K0
    {
        Eigen::Vector4cd a;
        for (int i = 0; i < 4; ++i) a(i) = (pauli::matrix(i).adjoint() * k1).trace() / 2.0;
        chi += a * a.adjoint();
    }
    CptpReport r = cptp_report(chi);
    CHECK(r.choi_min_eigenvalue >= -1e-12);
    CHECK(r.trace_residual < 1e-12);
}

TEST_CASE("diamond distance of the identity is zero") {
    NumericsSettings st;
    st.allow_closed_forms = false;
    CHECK(diamond_distance_to_identity(Matrix4d::Identity(), 1.0, st) < 1e-8);
}

TEST_CASE("diamond distance of unitary rotations matches 2|sin(theta/2)|") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NumericsSettings solver;
    solver.allow_closed_forms = false;
    for (int it = 0; it < 50; ++it) {
        double theta = u(rng) * 2.0 * M_PI;
        double x = u(rng) - 0.5, y = u(rng) - 0.5, z = u(rng) - 0.5;
        double nn = std::sqrt(x * x + y * y + z * z);
        if (nn < 1e-9) continue;
        Matrix2cd rot = std::cos(theta / 2) * pauli::matrix(0) +
                        cd(0, std::sin(theta / 2)) *
                            (x / nn * pauli::matrix(1) + y / nn * pauli::matrix(2) +
                             z / nn * pauli::matrix(3));
        Matrix4d ptm = chi_to_ptm(oracles::chi_of_unitary(rot));
        double got = diamond_distance_to_identity(ptm, 1.0, solver);
        double expect = 2.0 * std::abs(std::sin(theta / 2.0));
        CHECK(std::abs(got - expect) < 1e-6);
        // the closed-form route agrees with the solver
        double fast = diamond_distance_to_identity(ptm, 1.0);
        CHECK(std::abs(fast - expect) < 1e-9);
    }
    // theta = pi gives distance 2
    Matrix2cd u_pi = cd(0, 1) * pauli::matrix(3);
    Matrix4d ptm = chi_to_ptm(oracles::chi_of_unitary(u_pi));
    CHECK(diamond_distance_to_identity(ptm, 1.0, solver) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("diamond distance of Pauli channels matches the L1 formula") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NumericsSettings solver;
    solver.allow_closed_forms = false;
    for (int it = 0; it < 50; ++it) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        double norm = a + b + c + d;
        double p[4] = {a / norm, b / norm, c / norm, d / norm};
        Matrix4cd chi = Matrix4cd::Zero();
        for (int k = 0; k < 4; ++k) chi(k, k) = p[k];
        Matrix4d ptm = chi_to_ptm(chi);
        double expect = 0.0;
        for (int k = 0; k < 4; ++k) expect += std::abs(p[k] - (k == 0 ? 1.0 : 0.0));
        double got = diamond_distance_to_identity(ptm, 1.0, solver);
        CHECK(std::abs(got - expect) < 1e-6);
        double fast = diamond_distance_to_identity(ptm, 1.0);
        CHECK(std::abs(fast - expect) < 1e-12);
    }
    // probabilities (1-p, p, 0, 0) with p = 0.1 -> 0.2
    Matrix4cd chi = Matrix4cd::Zero();
    chi(0, 0) = 0.9;
    chi(1, 1) = 0.1;
    CHECK(diamond_distance_to_identity(chi_to_ptm(chi), 1.0, solver) ==
          doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("diamond distance validates inputs") {
    CHECK_THROWS_AS(diamond_distance_to_identity(Matrix4d::Identity(), 0.0), InvalidInput);
    Matrix4d bad = Matrix4d::Identity();
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(diamond_distance_to_identity(bad, 1.0), InvalidInput);
}
