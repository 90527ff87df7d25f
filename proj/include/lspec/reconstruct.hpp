#pragma once

#include "lspec/common.hpp"
#include "lspec/dynamics.hpp"
#include "lspec/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace lspec {

/// Uniform energy grid; spacing must resolve the sinc main lobe
/// (spacing <= 1/(4T) for any T it is used with; defaults use 1/(8T)).
struct EnergyGrid {
    double e_min = 0.0;
    double e_max = 0.0;
    int points = 0;

    EnergyGrid() = default;
    EnergyGrid(double e_min_, double e_max_, int points_);

    double spacing() const { return (e_max - e_min) / (points - 1); }
    double energy(int i) const { return e_min + i * spacing(); }

    /// [E_0 - 10/T, E_max + 10/T] with spacing 1/(8T).
    static EnergyGrid default_for(const Spectrum& s, double T);
};

enum class CoarseKind { dos, a_r, a_c, fock_sigma };

/// An energy-grid function with its observation time. Points with
/// valid[i] == 0 are masked (division by a vanishing rho_c); their value
/// is 0 and they are excluded from downstream quadratures.
struct CoarseGrained {
    EnergyGrid grid;
    VectorXd values;
    std::vector<std::uint8_t> valid;
    double T = 0.0;
    CoarseKind kind = CoarseKind::dos;

    bool all_valid() const;
};

/// delta_T(eps) = sin(T eps)/(pi eps), delta_T(0) = T/pi; width ~1/T.
double sinc_kernel(double eps, double T);

/// rho_c(E,T) = sum_n delta_T(E - E_n): the kernel-sum (oracle) path.
CoarseGrained dos_closed_form(const Spectrum& s, const EnergyGrid& grid, double T);

/// rho_c(E,T) = int_0^T (dt/pi) Re{ D G(t) e^{itE} } by trapezoid on the
/// signal's grid. Validates the aliasing guard.
CoarseGrained dos_from_series(const ComplexTimeSeries& g, const EnergyGrid& grid);

/// A_r(E,T) = sum_n A_n delta_T(E - E_n), and its signal-path twin.
CoarseGrained observable_ar(const Spectrum& s, const VectorXd& a_n,
                            const EnergyGrid& grid, double T);
CoarseGrained observable_ar_from_series(const ComplexTimeSeries& g_a,
                                        const EnergyGrid& grid);

/// A_c = A_r / rho_c; grid points with |rho_c| < mask_threshold are masked.
/// Pass mask_threshold <= 0 for the default 0.05*(T/pi).
CoarseGrained observable_ac(const CoarseGrained& a_r, const CoarseGrained& rho_c,
                            double mask_threshold = 0.0);

/// rho_sigma(E,T) = (pi/T) sum_n M_{sigma n} delta_T(E - E_n); an isolated
/// level's peak height is its weight M_{sigma n}.
CoarseGrained fock_distribution(const Spectrum& s, const WeightMatrix& m,
                                const FockState& sigma, const EnergyGrid& grid,
                                double T);
CoarseGrained fock_distribution_from_series(const ComplexTimeSeries& g_sigma,
                                            const EnergyGrid& grid);

/// T_c(E): inverse local level spacing, smoothed over the k=5 gaps nearest
/// to E. Infinite if every gap in the window is degenerate.
double critical_time(const Spectrum& s, double e);

/// A_r evaluated at a single energy by the kernel sum (no grid).
double observable_ar_at(const Spectrum& s, const VectorXd& a_n, double e, double T);
double dos_closed_form_at(const Spectrum& s, double e, double T);

/// Trapezoid of a CoarseGrained over [e_lo, e_hi] (grid subrange; masked
/// points split the rule into valid runs).
double integrate(const CoarseGrained& cg, double e_lo, double e_hi);

/// Running integral phi(E) = int_{e_min}^E cg dE' on the grid points.
VectorXd integrated_curve(const CoarseGrained& cg);

struct Peak {
    double energy;
    double value;
};

/// Strict local maxima with value >= min_value.
std::vector<Peak> find_peaks(const CoarseGrained& cg, double min_value);

} // namespace lspec
