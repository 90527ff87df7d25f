#pragma once

#include "lspec/reconstruct.hpp"

#include <functional>

namespace lspec {

/// Reconstructed thermodynamic curve on a beta grid. Points where Z_T(beta)
/// fell below the positivity floor, or where C dipped below the artifact
/// tolerance, are flagged invalid.
struct ThermoCurve {
    VectorXd betas;
    VectorXd values;
    std::vector<std::uint8_t> valid;
    double T = 0.0;
};

/// Z_T(beta) = int rho_c(E,T) e^{-beta E} dE over [e_lo, e_hi]. Negative
/// rho_c lobes are included as-is; they self-cancel under integration.
double partition_z(const CoarseGrained& rho_c, double beta, double e_lo, double e_hi);

/// A-bar(beta;T) with f a function of energy.
double reconstructed_average(const CoarseGrained& rho_c,
                             const std::function<double(double)>& f, double beta,
                             double e_lo, double e_hi);

/// A-bar(beta;T) with f the coarse-grained A_c; its masked points are
/// excluded from numerator and denominator alike.
double reconstructed_average(const CoarseGrained& rho_c, const CoarseGrained& a_c,
                             double beta, double e_lo, double e_hi);

/// C(beta) = beta^2 (E2-bar - E-bar^2) on a beta grid.
ThermoCurve specific_heat(const CoarseGrained& rho_c, const VectorXd& betas,
                          double e_lo, double e_hi);

/// Band-edge estimates in signal mode: outermost grid points where rho_c
/// exceeds half a single-level peak, 0.5*(T/pi).
std::pair<double, double> estimate_bounds(const CoarseGrained& rho_c);

/// Exact-spectrum references (the T->infinity oracle path).
double canonical_z(const Spectrum& s, double beta);
double canonical_energy(const Spectrum& s, double beta);
double canonical_specific_heat(const Spectrum& s, double beta);

} // namespace lspec
