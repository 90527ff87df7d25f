#pragma once

#include "lspec/reconstruct.hpp"

namespace lspec {

/// Energy window and time scales for fluctuation estimates. T_sc must sit in
/// the coarse-grained regime (T_sc < T).
struct EthWindow {
    double e_minus = 0.0;
    double e_plus = 0.0;
    double t_sc = 0.0;
    double t = 0.0;

    void validate() const;
};

/// sigma_A^2 = (1/D_N) sum_{n in window} (A_n - A_c(E_n, T_sc))^2 with A_c
/// linearly interpolated from its grid. Throws on an empty window or if any
/// E_n lands on masked A_c points.
double sigma_exact(const Spectrum& s, const VectorXd& a_n,
                   const CoarseGrained& a_c_ref, const EthWindow& w);

/// Signal estimator
///   sigma_A^2(T) = int ((pi/T) A_r(E,T) - A_c(E,T_sc))^2 rho_c(E,T) dE
///                / int rho_c(E,T_sc) dE
/// over the window, with the asymmetric weights as printed. Setting
/// symmetric_weights uses rho_c(E,T_sc) in the numerator too (non-standard,
/// off by default). All four inputs must share one energy grid; masked
/// A_c points are excluded from both integrals.
double sigma_signal(const CoarseGrained& a_r_t, const CoarseGrained& a_c_ref,
                    const CoarseGrained& rho_t, const CoarseGrained& rho_tsc,
                    const EthWindow& w, bool symmetric_weights = false);

/// Default coarse-grain time: min(10/j_z, 0.1 * min_{E in window} T_c(E)),
/// with T_c sampled at the eigenvalues inside the window.
double choose_t_sc(const Spectrum& s, double e_minus, double e_plus, double j_z);

} // namespace lspec
