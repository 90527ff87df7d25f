#include "lspec/thermo.hpp"

#include <cmath>

namespace lspec {

namespace {

// shared quadrature core: integrals of rho_c * f * exp(-beta E) with one
// validity mask applied to numerator and denominator alike
struct BoltzmannSums {
    double z = 0.0;   // int rho e^{-bE}
    double e1 = 0.0;  // int rho f e^{-bE}
};

template <typename F, typename Mask>
BoltzmannSums boltzmann_sums(const CoarseGrained& rho, double beta, double e_lo, double e_hi,
                             F&& f, Mask&& masked) {
    if (e_lo < rho.grid.e_min - 1e-12 || e_hi > rho.grid.e_max + 1e-12)
        throw validation_error("thermo: bounds outside the rho_c grid");
    if (!(e_lo < e_hi))
        throw validation_error("thermo: empty energy range");
    const double de = rho.grid.spacing();
    const int first = static_cast<int>(std::ceil((e_lo - rho.grid.e_min) / de - 1e-9));
    const int last = static_cast<int>(std::floor((e_hi - rho.grid.e_min) / de + 1e-9));

    BoltzmannSums out;
    for (int i = first; i < last; ++i) {
        if (masked(i) || masked(i + 1)) continue;
        const double ea = rho.grid.energy(i);
        const double eb = rho.grid.energy(i + 1);
        const double wa = rho.values(i) * std::exp(-beta * ea);
        const double wb = rho.values(i + 1) * std::exp(-beta * eb);
        out.z += 0.5 * de * (wa + wb);
        out.e1 += 0.5 * de * (wa * f(i) + wb * f(i + 1));
    }
    return out;
}

double positivity_floor(const CoarseGrained& rho, double e_lo, double e_hi) {
    // Z_T(0) estimates the dimension D; floor = 1e-12 * D, never below 1e-12
    auto none = [](int) { return false; };
    auto one = [](int) { return 1.0; };
    const double d_estimate = std::abs(boltzmann_sums(rho, 0.0, e_lo, e_hi, one, none).z);
    return 1e-12 * std::max(1.0, d_estimate);
}

} // namespace

double partition_z(const CoarseGrained& rho_c, double beta, double e_lo, double e_hi) {
    auto none = [](int) { return false; };
    auto one = [](int) { return 1.0; };
    return boltzmann_sums(rho_c, beta, e_lo, e_hi, one, none).z;
}

double reconstructed_average(const CoarseGrained& rho_c, const std::function<double(double)>& f,
                             double beta, double e_lo, double e_hi) {
    auto none = [](int) { return false; };
    auto fe = [&](int i) { return f(rho_c.grid.energy(i)); };
    const BoltzmannSums sums = boltzmann_sums(rho_c, beta, e_lo, e_hi, fe, none);
    if (sums.z <= positivity_floor(rho_c, e_lo, e_hi))
        throw numeric_error("reconstructed_average: Z_T(beta) below the positivity floor");
    return sums.e1 / sums.z;
}

double reconstructed_average(const CoarseGrained& rho_c, const CoarseGrained& a_c, double beta,
                             double e_lo, double e_hi) {
    if (a_c.grid.points != rho_c.grid.points || a_c.grid.e_min != rho_c.grid.e_min ||
        a_c.grid.e_max != rho_c.grid.e_max)
        throw validation_error("reconstructed_average: A_c and rho_c grids differ");
    auto masked = [&](int i) { return a_c.valid[static_cast<std::size_t>(i)] == 0; };
    auto fa = [&](int i) { return a_c.values(i); };
    const BoltzmannSums sums = boltzmann_sums(rho_c, beta, e_lo, e_hi, fa, masked);
    if (sums.z <= positivity_floor(rho_c, e_lo, e_hi))
        throw numeric_error("reconstructed_average: Z_T(beta) below the positivity floor");
    return sums.e1 / sums.z;
}

ThermoCurve specific_heat(const CoarseGrained& rho_c, const VectorXd& betas, double e_lo,
                          double e_hi) {
    ThermoCurve curve;
    curve.betas = betas;
    curve.T = rho_c.T;
    curve.values = VectorXd::Zero(betas.size());
    curve.valid.assign(static_cast<std::size_t>(betas.size()), 1);
    const double floor = positivity_floor(rho_c, e_lo, e_hi);
    const double span = e_hi - e_lo;
    auto none = [](int) { return false; };
    auto fe = [&](int i) { return rho_c.grid.energy(i); };
    auto fe2 = [&](int i) {
        const double e = rho_c.grid.energy(i);
        return e * e;
    };
    for (Eigen::Index b = 0; b < betas.size(); ++b) {
        const double beta = betas(b);
        const BoltzmannSums s1 = boltzmann_sums(rho_c, beta, e_lo, e_hi, fe, none);
        const BoltzmannSums s2 = boltzmann_sums(rho_c, beta, e_lo, e_hi, fe2, none);
        if (s1.z <= floor) {
            curve.valid[static_cast<std::size_t>(b)] = 0;
            continue;
        }
        const double mean_e = s1.e1 / s1.z;
        const double mean_e2 = s2.e1 / s2.z;
        const double c = beta * beta * (mean_e2 - mean_e * mean_e);
        curve.values(b) = c;
        // small negative dips are sinc artifacts; worse than that is flagged
        if (c < -1e-6 * beta * beta * span * span)
            curve.valid[static_cast<std::size_t>(b)] = 0;
    }
    return curve;
}

std::pair<double, double> estimate_bounds(const CoarseGrained& rho_c) {
    const double threshold = 0.5 * rho_c.T / std::numbers::pi;
    int lo = -1;
    int hi = -1;
    for (int i = 0; i < rho_c.grid.points; ++i) {
        if (rho_c.values(i) > threshold) {
            if (lo < 0) lo = i;
            hi = i;
        }
    }
    if (lo < 0)
        throw numeric_error("estimate_bounds: rho_c never exceeds half a level peak");
    return {rho_c.grid.energy(lo), rho_c.grid.energy(hi)};
}

double canonical_z(const Spectrum& s, double beta) {
    double z = 0.0;
    for (int n = 0; n < s.dim(); ++n)
        z += std::exp(-beta * s.energies(n));
    return z;
}

double canonical_energy(const Spectrum& s, double beta) {
    double z = 0.0;
    double e = 0.0;
    for (int n = 0; n < s.dim(); ++n) {
        const double w = std::exp(-beta * s.energies(n));
        z += w;
        e += w * s.energies(n);
    }
    return e / z;
}

double canonical_specific_heat(const Spectrum& s, double beta) {
    double z = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    for (int n = 0; n < s.dim(); ++n) {
        const double en = s.energies(n);
        const double w = std::exp(-beta * en);
        z += w;
        e1 += w * en;
        e2 += w * en * en;
    }
    e1 /= z;
    e2 /= z;
    return beta * beta * (e2 - e1 * e1);
}

} // namespace lspec
