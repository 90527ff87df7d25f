#include "lspec/mbl.hpp"

#include "lspec/reconstruct.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace lspec {

namespace {
constexpr double pi = std::numbers::pi;

void check_sigma(const Spectrum& s, const FockState& f, const char* who) {
    if (f.index >= static_cast<std::uint32_t>(s.dim()))
        throw validation_error(std::string(who) + ": Fock index out of range");
}

// w_n = <sigma|n><n|sigma'>
VectorXcd overlap_product(const Spectrum& s, const FockState& sigma,
                          const FockState& sigma_prime) {
    return (s.vectors.row(sigma.index).transpose().array() *
            s.vectors.row(sigma_prime.index).transpose().conjugate().array())
        .matrix();
}

// sum_{nn'} w_n conj(w_{n'}) sinc(T(E_n - E_{n'})); real by symmetry
double s_weighted_square(const VectorXcd& w, const VectorXd& e, double T) {
    const int d = static_cast<int>(w.size());
    double acc = 0.0;
    for (int n = 0; n < d; ++n) {
        acc += std::norm(w(n));
        for (int m = n + 1; m < d; ++m) {
            const double kernel = (pi / T) * sinc_kernel(e(n) - e(m), T);
            acc += 2.0 * kernel * (w(n) * std::conj(w(m))).real();
        }
    }
    return acc;
}

} // namespace

VectorXd participation_ratio_m(const WeightMatrix& m) {
    const int d = m.dim();
    VectorXd pr(d);
    for (int sigma = 0; sigma < d; ++sigma) {
        double acc = 0.0;
        for (int n = 0; n < d; ++n)
            acc += m.m(sigma, n) * m.m(sigma, n);
        pr(sigma) = acc;
    }
    return pr;
}

MatrixXcd gamma_t(const WeightMatrix& m, const Spectrum& s, double t) {
    if (m.dim() != s.dim())
        throw validation_error("gamma_t: dimension mismatch");
    const int d = s.dim();
    VectorXcd phases(d);
    for (int n = 0; n < d; ++n)
        phases(n) = std::polar(1.0, -t * s.energies(n));
    const VectorXcd g = m.m * phases; // g_sigma = G_sigma(t)
    return (g * g.adjoint()) / static_cast<double>(d);
}

MatrixXd s_kernel(const Spectrum& s, double T) {
    if (!(T > 0.0))
        throw validation_error("s_kernel: T must be positive");
    const int d = s.dim();
    MatrixXd k(d, d);
    for (int n = 0; n < d; ++n) {
        k(n, n) = 1.0;
        for (int m = n + 1; m < d; ++m) {
            const double v = (pi / T) * sinc_kernel(s.energies(n) - s.energies(m), T);
            k(n, m) = v;
            k(m, n) = v;
        }
    }
    return k;
}

MatrixXd gamma_avg(const WeightMatrix& m, const Spectrum& s, double T) {
    if (m.dim() != s.dim())
        throw validation_error("gamma_avg: dimension mismatch");
    const MatrixXd k = s_kernel(s, T);
    MatrixXd g = m.m * k * m.m.transpose() / static_cast<double>(s.dim());
    // symmetric up to rounding; symmetrize so sqrt_psd sees an exact one
    return 0.5 * (g + g.transpose());
}

MatrixXd gamma_infinite(const WeightMatrix& m, const Spectrum& s) {
    if (m.dim() != s.dim())
        throw validation_error("gamma_infinite: dimension mismatch");
    const int d = s.dim();
    if (!s.has_degeneracies())
        return m.m * m.m.transpose() / static_cast<double>(d);
    // S(inf) is the projector onto degeneracy clusters: aggregate columns
    MatrixXd mc = MatrixXd::Zero(d, s.n_clusters);
    for (int n = 0; n < d; ++n)
        mc.col(s.cluster[static_cast<std::size_t>(n)]) += m.m.col(n);
    return mc * mc.transpose() / static_cast<double>(d);
}

MatrixXd sqrt_psd(const MatrixXd& g) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    if (es.info() != Eigen::Success)
        throw numeric_error("sqrt_psd: eigensolver failed");
    const double floor = -1e-10 * std::abs(g.trace());
    VectorXd lam = es.eigenvalues();
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < floor)
            throw numeric_error("sqrt_psd: matrix is indefinite (lambda_min=" +
                                std::to_string(lam(i)) + ")");
        lam(i) = lam(i) > 0.0 ? std::sqrt(lam(i)) : 0.0;
    }
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXd uhlmann_r_infinite(const WeightMatrix& m, const Spectrum& s) {
    return sqrt_psd(static_cast<double>(s.dim()) * gamma_infinite(m, s));
}

MatrixXd uhlmann_r_finite(const WeightMatrix& m, const Spectrum& s, double T) {
    return sqrt_psd(static_cast<double>(s.dim()) * gamma_avg(m, s, T));
}

VectorXd participation_ratio_r(const MatrixXd& r, PrConvention convention) {
    const int d = static_cast<int>(r.cols());
    VectorXd pr(d);
    for (int sigma = 0; sigma < d; ++sigma) {
        double norm2 = 0.0;
        for (int i = 0; i < d; ++i)
            norm2 += r(i, sigma) * r(i, sigma);
        if (norm2 <= 0.0)
            throw numeric_error("participation_ratio_r: zero column " + std::to_string(sigma));
        if (convention == PrConvention::second_moment) {
            pr(sigma) = norm2;
        } else {
            double acc = 0.0;
            for (int i = 0; i < d; ++i) {
                const double q = r(i, sigma) * r(i, sigma) / norm2;
                acc += q * q;
            }
            pr(sigma) = acc;
        }
    }
    return pr;
}

const char* pr_convention_name(PrConvention convention) {
    return convention == PrConvention::inverse_participation ? "inverse_participation"
                                                             : "second_moment";
}

VectorXd pair_probability_series(const Spectrum& s, const FockState& sigma,
                                 const FockState& sigma_prime, const TimeGrid& grid) {
    check_sigma(s, sigma, "pair_probability_series");
    check_sigma(s, sigma_prime, "pair_probability_series");
    const VectorXcd w = overlap_product(s, sigma, sigma_prime);
    const int d = s.dim();
    VectorXd p(grid.samples());
    for (int k = 0; k < grid.samples(); ++k) {
        const double t = grid.time(k);
        Complex amp(0.0, 0.0);
        for (int n = 0; n < d; ++n)
            amp += w(n) * std::polar(1.0, -t * s.energies(n));
        p(k) = std::norm(amp) / d;
    }
    return p;
}

double pair_probability_average(const Spectrum& s, const FockState& sigma,
                                const FockState& sigma_prime, double T) {
    check_sigma(s, sigma, "pair_probability_average");
    check_sigma(s, sigma_prime, "pair_probability_average");
    const VectorXcd w = overlap_product(s, sigma, sigma_prime);
    return s_weighted_square(w, s.energies, T) / s.dim();
}

MatrixXd footnote_average(const Spectrum& s, double T) {
    const int d = s.dim();
    if (d > 128)
        throw validation_error("footnote_average: full matrix is O(D^4); capped at L <= 7");
    MatrixXd p(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            // amplitude <b|e^{-iHt}|a>: weights <b|n><n|a>
            const VectorXcd w = overlap_product(s, FockState{static_cast<std::uint32_t>(b), 0},
                                                FockState{static_cast<std::uint32_t>(a), 0});
            p(a, b) = s_weighted_square(w, s.energies, T);
        }
    return p;
}

MatrixXd footnote_average_infinite(const Spectrum& s) {
    const int d = s.dim();
    const WeightMatrix m = weights_matrix(s);
    if (!s.has_degeneracies())
        return m.m * m.m.transpose();
    // within clusters the surviving terms carry the full overlap products
    MatrixXd p = MatrixXd::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const VectorXcd w = overlap_product(s, FockState{static_cast<std::uint32_t>(b), 0},
                                                FockState{static_cast<std::uint32_t>(a), 0});
            VectorXcd cluster_sum = VectorXcd::Zero(s.n_clusters);
            for (int n = 0; n < d; ++n)
                cluster_sum(s.cluster[static_cast<std::size_t>(n)]) += w(n);
            p(a, b) = cluster_sum.squaredNorm();
        }
    return p;
}

} // namespace lspec
