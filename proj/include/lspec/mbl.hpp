#pragma once

#include "lspec/dynamics.hpp"
#include "lspec/spectrum.hpp"

namespace lspec {

/// PR_M(sigma) = sum_n M_{sigma n}^2, in [1/D, 1]. 1 = the Fock state sits
/// on one eigenstate; 1/D = spread over all of them.
VectorXd participation_ratio_m(const WeightMatrix& m);

/// Purified-state density matrix elements
///   Gamma_{sigma sigma'}(t) = (1/D) [M C(t) M^T]_{sigma sigma'},
///   C_{nn'}(t) = exp(-it(E_n - E_{n'})).
/// C(t) is a rank-1 phase outer product, so Gamma(t) = (1/D) g(t) g(t)^dagger
/// with g_sigma(t) = G_sigma(t).
MatrixXcd gamma_t(const WeightMatrix& m, const Spectrum& s, double t);

/// S_{nn'}(T) = (pi/T) delta_T(E_n - E_{n'}) = sinc(T(E_n - E_{n'})); unit
/// diagonal, and automatically 1 across exact degeneracies.
MatrixXd s_kernel(const Spectrum& s, double T);

/// Gamma-bar(T) = (1/T) int_0^T Re Gamma(t) dt = (1/D) M S(T) M^T, computed
/// in closed form. Real symmetric PSD.
MatrixXd gamma_avg(const WeightMatrix& m, const Spectrum& s, double T);

/// T -> infinity limit: S becomes the projector onto degeneracy clusters
/// (identity for a non-degenerate spectrum), so Gamma-bar = (1/D) M M^T.
MatrixXd gamma_infinite(const WeightMatrix& m, const Spectrum& s);

/// Principal square root of a symmetric PSD matrix. Eigenvalues in
/// [-1e-10 * trace, 0) clamp to zero; anything more negative throws
/// numeric_error naming the offender.
MatrixXd sqrt_psd(const MatrixXd& g);

/// Uhlmann matrix R = sqrt(D * Gamma-bar); equals the polar factor
/// sqrt(M M^T) of M in the non-degenerate infinite-time limit.
MatrixXd uhlmann_r_infinite(const WeightMatrix& m, const Spectrum& s);
MatrixXd uhlmann_r_finite(const WeightMatrix& m, const Spectrum& s, double T);

/// R's columns are not probability vectors, so two conventions ship:
/// - inverse_participation (default): PR_R(sigma) = sum_s q_s^2 with
///   q_s = R_{s sigma}^2 / sum_s' R_{s' sigma}^2, normalized to [1/D, 1];
/// - second_moment: raw sum_s R_{s sigma}^2.
enum class PrConvention { inverse_participation, second_moment };
VectorXd participation_ratio_r(const MatrixXd& r,
                               PrConvention convention = PrConvention::inverse_participation);
const char* pr_convention_name(PrConvention convention);

/// p_{sigma,sigma'}(t) = |<sigma,sigma'|psi(t)>|^2
///                     = (1/D) |sum_n <sigma|n><n|sigma'> e^{-itE_n}|^2.
VectorXd pair_probability_series(const Spectrum& s, const FockState& sigma,
                                 const FockState& sigma_prime, const TimeGrid& grid);

/// Closed-form time average of p_{sigma,sigma'} over [0,T] via the S kernel.
/// Diagonal entries reproduce Gamma-bar(T) exactly; the full matrix tends to
/// Gamma-bar(infinity) as T grows.
double pair_probability_average(const Spectrum& s, const FockState& sigma,
                                const FockState& sigma_prime, double T);

/// Ancilla-free probabilities p~_{sigma,sigma'}(t) = |<sigma'|e^{-iHt}|sigma>|^2,
/// time-averaged over [0,T] in closed form for the full matrix (O(D^4): L <= 7).
MatrixXd footnote_average(const Spectrum& s, double T);

/// Long-time limit of the above: M M^T for a non-degenerate spectrum
/// (cluster-aware otherwise).
MatrixXd footnote_average_infinite(const Spectrum& s);

} // namespace lspec
