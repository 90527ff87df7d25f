#include "lspec/dynamics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace lspec {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

TimeGrid::TimeGrid(double dt_, int steps_) : dt(dt_), steps(steps_) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw validation_error("TimeGrid: dt must be positive and finite");
    if (steps < 1)
        throw validation_error("TimeGrid: need at least one step");
}

TimeGrid TimeGrid::for_spectrum(const Spectrum& s, double T, int min_samples) {
    if (!(T > 0.0))
        throw validation_error("TimeGrid: duration must be positive");
    double bw = s.bandwidth();
    int steps = std::max(min_samples - 1, 1);
    if (bw > 0.0)
        steps = std::max(steps, static_cast<int>(std::ceil(T * bw / pi)));
    return TimeGrid(T / steps, steps);
}

Complex loschmidt_point(const Spectrum& s, double t) {
    Complex acc(0.0, 0.0);
    for (int n = 0; n < s.dim(); ++n)
        acc += std::polar(1.0, -t * s.energies(n));
    return acc / static_cast<double>(s.dim());
}

namespace {

// sum_n w_n exp(-i t_k E_n) over the grid, plus the amplitude bound check
ComplexTimeSeries weighted_phase_sum(const VectorXd& weights, const VectorXd& energies,
                                     const TimeGrid& grid, int dim, bool amplitude) {
    ComplexTimeSeries out;
    out.grid = grid;
    out.dim = dim;
    out.band_min = energies.minCoeff();
    out.band_max = energies.maxCoeff();
    out.values.resize(grid.samples());
    const int n_levels = static_cast<int>(energies.size());
    for (int k = 0; k < grid.samples(); ++k) {
        const double t = grid.time(k);
        Complex acc(0.0, 0.0);
        for (int n = 0; n < n_levels; ++n)
            acc += weights(n) * std::polar(1.0, -t * energies(n));
        if (amplitude && std::abs(acc) > 1.0 + 1e-12)
            throw numeric_error("amplitude signal exceeded 1 at t=" + std::to_string(t));
        out.values(k) = acc;
    }
    return out;
}

} // namespace

ComplexTimeSeries loschmidt_g(const Spectrum& s, const TimeGrid& grid) {
    VectorXd w = VectorXd::Constant(s.dim(), 1.0 / s.dim());
    return weighted_phase_sum(w, s.energies, grid, s.dim(), true);
}

ComplexTimeSeries loschmidt_g_sigma(const Spectrum& s, const FockState& sigma,
                                    const TimeGrid& grid) {
    if (sigma.index >= static_cast<std::uint32_t>(s.dim()))
        throw validation_error("loschmidt_g_sigma: Fock index out of range");
    VectorXd w = s.vectors.row(sigma.index).cwiseAbs2().transpose();
    return weighted_phase_sum(w, s.energies, grid, s.dim(), true);
}

ComplexTimeSeries loschmidt_g_a(const Spectrum& s, const VectorXd& a_n,
                                const TimeGrid& grid) {
    if (a_n.size() != s.dim())
        throw validation_error("loschmidt_g_a: A_n length mismatch");
    VectorXd w = a_n / s.dim();
    return weighted_phase_sum(w, s.energies, grid, s.dim(), false);
}

VectorXcd evolve_state(const Spectrum& s, const VectorXcd& psi0, double t) {
    if (psi0.size() != s.dim())
        throw validation_error("evolve_state: state dimension mismatch");
    VectorXcd coeff = s.vectors.adjoint() * psi0;
    for (int n = 0; n < s.dim(); ++n)
        coeff(n) *= std::polar(1.0, -t * s.energies(n));
    VectorXcd psi = s.vectors * coeff;
    if (std::abs(psi.norm() - psi0.norm()) > 1e-10)
        throw numeric_error("evolve_state: norm not preserved");
    return psi;
}

double purified_overlap_check(const ModelSpec& spec, const TimeGrid& grid) {
    if (spec.L > 6)
        throw validation_error("purified_overlap_check: doubled system needs L <= 6");
    const Spectrum s = diagonalize(build_hamiltonian(spec));
    const int d = s.dim();

    // |psi_inf> as a D x D amplitude table Psi[tau, ancilla]; evolving only
    // the S factor is the left action U(t) Psi
    const MatrixXcd psi_inf = MatrixXcd::Identity(d, d) / std::sqrt(static_cast<double>(d));

    double worst = 0.0;
    for (int k = 0; k < grid.samples(); ++k) {
        const double t = grid.time(k);
        VectorXcd phases(d);
        for (int n = 0; n < d; ++n)
            phases(n) = std::polar(1.0, -t * s.energies(n));
        const MatrixXcd u = s.vectors * phases.asDiagonal() * s.vectors.adjoint();
        const MatrixXcd evolved = u * psi_inf;
        const Complex overlap = (psi_inf.adjoint() * evolved).trace();
        worst = std::max(worst, std::abs(overlap - loschmidt_point(s, t)));
    }
    return worst;
}

std::pair<double, double> probe_interferometer(const Spectrum& s, const VectorXcd& psi0,
                                               double t) {
    const VectorXcd psi_t = evolve_state(s, psi0, t);
    const int d = s.dim();

    // probe-major layout: amps[q*D + i] for (|psi0>|0> + |psi(t)>|1>)/sqrt(2)
    VectorXcd amps(2 * d);
    amps.head(d) = psi0 / std::sqrt(2.0);
    amps.tail(d) = psi_t / std::sqrt(2.0);

    Complex rho01(0.0, 0.0); // <0|rho_p|1>
    for (int i = 0; i < d; ++i)
        rho01 += amps(i) * std::conj(amps(d + i));
    const double x = 2.0 * rho01.real();          // <sigma_x>
    const double y = -2.0 * rho01.imag();         // <sigma_y>
    return {x, y};
}

ComplexTimeSeries stochastic_trace_g(const Spectrum& s, const TimeGrid& grid, int samples,
                                     std::uint64_t seed) {
    if (samples < 1)
        throw validation_error("stochastic_trace_g: needs at least one sample");
    const int d = s.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    ComplexTimeSeries out;
    out.grid = grid;
    out.dim = d;
    out.band_min = s.energies(0);
    out.band_max = s.energies(d - 1);
    out.values = VectorXcd::Zero(grid.samples());

    VectorXcd r(d);
    for (int k = 0; k < samples; ++k) {
        for (int i = 0; i < d; ++i)
            r(i) = Complex(gauss(rng), gauss(rng));
        r /= r.norm();
        const VectorXd w = (s.vectors.adjoint() * r).cwiseAbs2();
        for (int m = 0; m < grid.samples(); ++m) {
            const double t = grid.time(m);
            Complex acc(0.0, 0.0);
            for (int n = 0; n < d; ++n)
                acc += w(n) * std::polar(1.0, -t * s.energies(n));
            out.values(m) += acc;
        }
    }
    out.values /= static_cast<double>(samples);
    return out;
}

double half_chain_entropy(const VectorXcd& psi, int L) {
    if (L < 2)
        throw validation_error("half_chain_entropy: needs L >= 2");
    if (psi.size() != (static_cast<Eigen::Index>(1) << L))
        throw validation_error("half_chain_entropy: state dimension mismatch");
    const int cut = L / 2;
    const int d_left = 1 << cut;
    const int d_right = 1 << (L - cut);

    // index = a + d_left * b: low bits (a) are the left block
    Eigen::Map<const MatrixXcd> m(psi.data(), d_left, d_right);
    Eigen::JacobiSVD<MatrixXcd> svd(m);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double p = svd.singularValues()(i) * svd.singularValues()(i);
        if (p > 1e-300) entropy -= p * std::log(p);
    }
    return entropy;
}

} // namespace lspec
