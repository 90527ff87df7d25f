#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lspec/model.hpp"
#include "lspec/spectrum.hpp"

#include <cmath>
#include <random>

using namespace lspec;

namespace {

ModelSpec ising(int L, double h_x, double h_z, double r_z = 0.0, std::uint64_t seed = 0) {
    ModelSpec m;
    m.L = L;
    m.h_x = h_x;
    m.h_z = h_z;
    m.r_z = r_z;
    m.seed = seed;
    return m;
}

ModelSpec random_spec(std::mt19937_64& rng, int L) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModelSpec m = ising(L, u(rng), 0.5 * u(rng), std::abs(u(rng)), rng());
    return m;
}

} // namespace

TEST_CASE("two-level spectrum by hand") {
    const Spectrum s = diagonalize(build_hamiltonian(ising(1, 0.3, 0.0)));
    CHECK(s.energies(0) == doctest::Approx(-0.15).epsilon(1e-14));
    CHECK(s.energies(1) == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("classical two-site spectrum is two degenerate pairs") {
    const Spectrum s = diagonalize(build_hamiltonian(ising(2, 0.0, 0.0)));
    CHECK(s.energies(0) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(s.energies(1) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(s.energies(2) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s.energies(3) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(s.has_degeneracies());
    CHECK(s.n_clusters == 2);
    CHECK(s.cluster[0] == s.cluster[1]);
    CHECK(s.cluster[2] == s.cluster[3]);
    CHECK(s.cluster[1] != s.cluster[2]);
}

TEST_CASE("trace, orthonormality and reconstruction across random specs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        const int L = 2 + trial % 7; // up to L=8
        const HermitianMatrix h = build_hamiltonian(random_spec(rng, L));
        const Spectrum s = diagonalize(h);

        CHECK(std::abs(s.energies.sum() - h.mat().trace().real()) <
              1e-10 * std::max(1.0, s.energies.cwiseAbs().maxCoeff()) * s.dim());
        for (int n = 1; n < s.dim(); ++n) CHECK(s.energies(n) >= s.energies(n - 1));

        const MatrixXcd gram = s.vectors.adjoint() * s.vectors;
        CHECK((gram - MatrixXcd::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() < 1e-10);

        const MatrixXcd rebuilt =
            s.vectors * s.energies.asDiagonal() * s.vectors.adjoint();
        const double scale = std::max(h.mat().cwiseAbs().maxCoeff(), 1e-12);
        CHECK((rebuilt - h.mat()).cwiseAbs().maxCoeff() < 1e-9 * scale);
    }
}

TEST_CASE("weights of a diagonal Hamiltonian form a permutation matrix") {
    const Spectrum s = diagonalize(build_hamiltonian(ising(3, 0.0, 0.2, 1.0, 8)));
    const WeightMatrix m = weights_matrix(s);
    for (int i = 0; i < m.dim(); ++i) {
        int ones = 0;
        for (int j = 0; j < m.dim(); ++j) {
            if (std::abs(m.m(i, j) - 1.0) < 1e-12) ++ones;
            else CHECK(m.m(i, j) < 1e-12);
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("single transverse spin has uniform weights 1/2") {
    const WeightMatrix m = weights_matrix(diagonalize(build_hamiltonian(ising(1, 0.3, 0.0))));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(m.m(i, j) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("weights are bistochastic and phase invariant") {
    std::mt19937_64 rng(12);
    const Spectrum s = diagonalize(build_hamiltonian(random_spec(rng, 6)));
    const WeightMatrix m = weights_matrix(s);
    for (int i = 0; i < m.dim(); ++i) {
        CHECK(std::abs(m.m.row(i).sum() - 1.0) < 1e-10);
        CHECK(std::abs(m.m.col(i).sum() - 1.0) < 1e-10);
        for (int j = 0; j < m.dim(); ++j) CHECK(m.m(i, j) >= 0.0);
    }

    Spectrum twisted = s;
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    for (int n = 0; n < twisted.dim(); n += 3)
        twisted.vectors.col(n) *= std::polar(1.0, angle(rng));
    const WeightMatrix m2 = weights_matrix(twisted);
    CHECK((m.m - m2.m).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("eigen expectations: identity, common eigenbasis, trace sum") {
    std::mt19937_64 rng(13);
    const int L = 5;
    const Spectrum s = diagonalize(build_hamiltonian(random_spec(rng, L)));
    const HermitianMatrix eye{MatrixXcd::Identity(s.dim(), s.dim())};
    const VectorXd ones = eigen_expectations(s, eye);
    for (int n = 0; n < s.dim(); ++n) CHECK(ones(n) == doctest::Approx(1.0).epsilon(1e-12));

    // h_x = 0: eigenstates are Fock states; A_n matches A's diagonal entry
    const Spectrum sd = diagonalize(build_hamiltonian(ising(L, 0.0, 0.15, 0.8, 3)));
    const HermitianMatrix a = build_observable_zz(L);
    const VectorXd a_n = eigen_expectations(sd, a);
    const WeightMatrix m = weights_matrix(sd);
    for (int n = 0; n < sd.dim(); ++n) {
        int sigma = 0;
        m.m.col(n).maxCoeff(&sigma);
        CHECK(a_n(n) == doctest::Approx(a.mat()(sigma, sigma).real()).epsilon(1e-10));
    }

    const VectorXd a_n2 = eigen_expectations(s, build_observable_zz(L));
    CHECK(a_n2.sum() == doctest::Approx(build_observable_zz(L).mat().trace().real())
                            .epsilon(1e-10));
}

TEST_CASE("diagonal observable expectation equals weighted Fock sum") {
    std::mt19937_64 rng(14);
    const Spectrum s = diagonalize(build_hamiltonian(random_spec(rng, 6)));
    const HermitianMatrix a = build_observable_zz(6);
    const VectorXd a_n = eigen_expectations(s, a);
    const WeightMatrix m = weights_matrix(s);
    for (int n = 0; n < s.dim(); ++n) {
        double acc = 0.0;
        for (int sigma = 0; sigma < s.dim(); ++sigma)
            acc += m.m(sigma, n) * a.mat()(sigma, sigma).real();
        CHECK(acc == doctest::Approx(a_n(n)).epsilon(1e-10));
    }
}

TEST_CASE("dimension mismatch raises") {
    const Spectrum s = diagonalize(build_hamiltonian(ising(2, 0.4, 0.0)));
    CHECK_THROWS_AS(eigen_expectations(s, build_observable_zz(3)), validation_error);
}

TEST_CASE("eigenvector phase convention is deterministic") {
    const ModelSpec m = ising(5, 0.6, 0.05, 1.2, 77);
    const Spectrum a = diagonalize(build_hamiltonian(m));
    const Spectrum b = diagonalize(build_hamiltonian(m));
    CHECK((a.vectors - b.vectors).cwiseAbs().maxCoeff() == 0.0);
    // largest component of every column is real positive
    for (int n = 0; n < a.dim(); ++n) {
        Eigen::Index imax = 0;
        a.vectors.col(n).cwiseAbs().maxCoeff(&imax);
        CHECK(a.vectors(imax, n).imag() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(a.vectors(imax, n).real() > 0.0);
    }
}
