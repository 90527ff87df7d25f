#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lspec/model.hpp"
#include "lspec/spectrum.hpp"

#include <bit>
#include <cmath>
#include <random>

using namespace lspec;

namespace {

ModelSpec ising(int L, double h_x, double h_z, double r_z = 0.0, std::uint64_t seed = 0) {
    ModelSpec m;
    m.kind = ModelKind::IsingZ;
    m.L = L;
    m.h_x = h_x;
    m.h_z = h_z;
    m.r_z = r_z;
    m.seed = seed;
    return m;
}

ModelSpec random_spec(std::mt19937_64& rng, int max_l = 8) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> li(1, max_l);
    ModelSpec m;
    m.L = li(rng);
    if (rng() % 3 == 0 && m.L >= 2) {
        m.kind = ModelKind::XXZ;
        m.j = u(rng);
        m.h_x = 0.0;
    } else {
        m.kind = ModelKind::IsingZ;
        m.h_x = u(rng);
    }
    m.j_z = 0.5 + 0.5 * (u(rng) + 1.0);
    m.h_z = 0.5 * u(rng);
    m.r_z = rng() % 2 ? 0.0 : std::abs(u(rng));
    m.seed = rng();
    return m;
}

} // namespace

TEST_CASE("single-site transverse field by hand") {
    const HermitianMatrix h = build_hamiltonian(ising(1, 0.3, 0.0));
    // H = -h_x S^x = -0.15 sigma_x
    CHECK(h.mat()(0, 0) == Complex(0.0));
    CHECK(h.mat()(1, 1) == Complex(0.0));
    CHECK(h.mat()(0, 1).real() == doctest::Approx(-0.15).epsilon(1e-15));
    CHECK(h.mat()(1, 0).real() == doctest::Approx(-0.15).epsilon(1e-15));
}

TEST_CASE("two-site classical Ising bond by hand") {
    const HermitianMatrix h = build_hamiltonian(ising(2, 0.0, 0.0));
    const double expected[] = {-0.25, 0.25, 0.25, -0.25}; // uu, du, ud, dd
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                CHECK(h.mat()(i, j).real() == doctest::Approx(expected[i]).epsilon(1e-15));
            else
                CHECK(std::abs(h.mat()(i, j)) == 0.0);
        }
    }
}

TEST_CASE("identical spec and seed give bit-identical matrices") {
    const ModelSpec m = ising(6, 0.7, 0.1, 2.0, 12345);
    const HermitianMatrix a = build_hamiltonian(m);
    const HermitianMatrix b = build_hamiltonian(m);
    CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(build_hamiltonian(ising(0, 0.0, 0.0)), validation_error);
    CHECK_THROWS_AS(build_hamiltonian(ising(17, 0.0, 0.0)), validation_error);
    ModelSpec bad = ising(2, 0.0, 0.0);
    bad.h_x = std::nan("");
    CHECK_THROWS_AS(build_hamiltonian(bad), validation_error);
    bad = ising(2, 0.0, 0.0);
    bad.r_z = -1.0;
    CHECK_THROWS_AS(build_hamiltonian(bad), validation_error);
    ModelSpec xxz;
    xxz.kind = ModelKind::XXZ;
    xxz.L = 3;
    xxz.j = 0.4;
    xxz.h_x = 0.1;
    CHECK_THROWS_AS(build_hamiltonian(xxz), validation_error);
    CHECK_THROWS_AS(build_observable_zz(1), validation_error);
}

TEST_CASE("zz observable diagonal values by hand") {
    const HermitianMatrix a2 = build_observable_zz(2);
    CHECK(a2.mat()(0, 0).real() == doctest::Approx(0.25).epsilon(1e-15));  // uu
    CHECK(a2.mat()(2, 2).real() == doctest::Approx(-0.25).epsilon(1e-15)); // ud (site1 down)

    // |u d u> -> (1/2)(s0 s1 + s1 s2) = (1/2)(-1/4 - 1/4) = -1/4
    const HermitianMatrix a3 = build_observable_zz(3);
    const FockState udu = FockState::from_pattern("udu");
    CHECK(a3.mat()(udu.index, udu.index).real() == doctest::Approx(-0.25).epsilon(1e-15));

    for (int L : {2, 3, 5}) {
        const HermitianMatrix a = build_observable_zz(L);
        for (int i = 0; i < a.dim(); ++i) {
            CHECK(a.mat()(i, i).real() <= 0.25 + 1e-15);
            CHECK(a.mat()(i, i).real() >= -0.25 - 1e-15);
        }
    }
}

TEST_CASE("disorder draw: range, determinism, zero width") {
    const auto zero = draw_disorder(0.0, 8, 99);
    for (double h : zero) CHECK(h == 0.0);

    const auto a = draw_disorder(5.0, 12, 4242);
    const auto b = draw_disorder(5.0, 12, 4242);
    CHECK(a == b);
    for (double h : a) {
        CHECK(h >= -2.5);
        CHECK(h <= 2.5);
    }
    CHECK(draw_disorder(5.0, 12, 4243) != a);
}

TEST_CASE("disorder draw: uniform mean over 1e5 samples") {
    const double r_z = 5.0;
    const int n = 100000;
    const auto h = draw_disorder(r_z, n, 7);
    double mean = 0.0;
    for (double v : h) mean += v;
    mean /= n;
    const double three_sigma = 3.0 * (r_z / std::sqrt(12.0)) / std::sqrt(double(n));
    CHECK(std::abs(mean) < three_sigma);
}

TEST_CASE("hermiticity and zero trace across random specs") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 40; ++trial) {
        ModelSpec m = random_spec(rng);
        const HermitianMatrix h = build_hamiltonian(m);
        CHECK(HermitianMatrix::hermiticity_defect(h.mat()) < 1e-12);
        // every term is traceless, longitudinal and disorder fields included
        const double scale = std::max(1.0, h.mat().cwiseAbs().maxCoeff());
        CHECK(std::abs(h.mat().trace()) < 1e-12 * scale * h.dim());
    }
}

TEST_CASE("XXZ conserves total S^z: no elements between popcount sectors") {
    ModelSpec m;
    m.kind = ModelKind::XXZ;
    m.L = 5;
    m.j_z = 0.8;
    m.j = 0.6;
    m.h_z = 0.2;
    m.r_z = 1.5;
    m.seed = 31;
    const HermitianMatrix h = build_hamiltonian(m);
    for (int a = 0; a < h.dim(); ++a)
        for (int b = 0; b < h.dim(); ++b)
            if (std::popcount(unsigned(a)) != std::popcount(unsigned(b)))
                CHECK(std::abs(h.mat()(a, b)) == 0.0);
}

TEST_CASE("zz observable commutes with the classical Ising Hamiltonian") {
    const HermitianMatrix h = build_hamiltonian(ising(4, 0.0, 0.3, 1.0, 5));
    const HermitianMatrix a = build_observable_zz(4);
    const MatrixXcd comm = h.mat() * a.mat() - a.mat() * h.mat();
    CHECK(comm.cwiseAbs().maxCoeff() == 0.0); // both diagonal
}

TEST_CASE("fock pattern round trip") {
    const FockState f = FockState::from_pattern("uudduudduu");
    CHECK(f.L == 10);
    CHECK(f.index == 0b0011001100u);
    CHECK(f.pattern() == "uudduudduu");
    CHECK(f.sz(0) == 0.5);
    CHECK(f.sz(2) == -0.5);
    CHECK_THROWS_AS(FockState::from_pattern("uxd"), validation_error);
    CHECK_THROWS_AS(FockState::from_pattern(""), validation_error);
}
