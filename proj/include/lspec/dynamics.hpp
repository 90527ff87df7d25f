#pragma once

#include "lspec/common.hpp"
#include "lspec/model.hpp"
#include "lspec/spectrum.hpp"

#include <cstdint>
#include <utility>

namespace lspec {

/// Uniform grid t_k = k*dt, k = 0..steps (steps+1 samples, T = steps*dt).
struct TimeGrid {
    double dt = 0.0;
    int steps = 0;

    TimeGrid() = default;
    TimeGrid(double dt_, int steps_);

    int samples() const { return steps + 1; }
    double time(int k) const { return k * dt; }
    double duration() const { return steps * dt; }

    /// Grid reaching exactly T with dt at or below the aliasing guard
    /// pi/bandwidth, and at least min_samples points.
    static TimeGrid for_spectrum(const Spectrum& s, double T, int min_samples = 256);
};

/// Uniformly sampled complex signal. `dim` is the Hilbert dimension behind
/// the signal (reconstruction needs Z(it) = dim * G(t)); band_min/band_max
/// bound its spectral content, used to enforce the aliasing guard
/// dt * (band_max - band_min) <= pi. Generators populate both.
struct ComplexTimeSeries {
    TimeGrid grid;
    VectorXcd values;
    int dim = 0;
    double band_min = 0.0;
    double band_max = 0.0;
};

/// G(t) at a single time: (1/D) sum_n exp(-i t E_n).
Complex loschmidt_point(const Spectrum& s, double t);

/// Trace signal G(t) = Z(it)/D via the spectral sum; |G| <= 1, G(0) = 1.
ComplexTimeSeries loschmidt_g(const Spectrum& s, const TimeGrid& grid);

/// G_sigma(t) = <sigma|exp(-itH)|sigma> = sum_n |<sigma|n>|^2 exp(-i t E_n).
ComplexTimeSeries loschmidt_g_sigma(const Spectrum& s, const FockState& sigma,
                                    const TimeGrid& grid);

/// G_A(t) = (1/D) sum_n A_n exp(-i t E_n) = A(t)/D.
ComplexTimeSeries loschmidt_g_a(const Spectrum& s, const VectorXd& a_n,
                                const TimeGrid& grid);

/// psi(t) = V exp(-itE) V^dagger psi0; unitary to 1e-10 (checked).
VectorXcd evolve_state(const Spectrum& s, const VectorXcd& psi0, double t);

/// Doubled-system route: evolve only the S factor of the maximally entangled
/// |psi_inf> on S x S-tilde and project back. Returns the max deviation of
/// the overlap from the spectral-sum G(t) over the grid. Requires L <= 6.
double purified_overlap_check(const ModelSpec& spec, const TimeGrid& grid);

/// Probe-qubit interferometer: prepare (|psi0>|0> + |psi(t)>|1>)/sqrt(2),
/// trace out the system, return probe (<sigma_x>, <sigma_y>), which equal
/// (Re, Im) of <psi0|psi(t)>.
std::pair<double, double> probe_interferometer(const Spectrum& s,
                                               const VectorXcd& psi0, double t);

/// Trace estimation over normalized complex-Gaussian random states:
/// average of <r|exp(-itH)|r> over `samples` draws. Same seed, same output.
ComplexTimeSeries stochastic_trace_g(const Spectrum& s, const TimeGrid& grid,
                                     int samples, std::uint64_t seed);

/// Von Neumann entropy (nats) across the cut after site floor(L/2)-1, i.e.
/// between the low floor(L/2) sites and the rest.
double half_chain_entropy(const VectorXcd& psi, int L);

} // namespace lspec
