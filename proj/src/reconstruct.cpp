#include "lspec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lspec {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

EnergyGrid::EnergyGrid(double e_min_, double e_max_, int points_)
    : e_min(e_min_), e_max(e_max_), points(points_) {
    if (!(e_min < e_max))
        throw validation_error("EnergyGrid: e_min must be below e_max");
    if (points < 2)
        throw validation_error("EnergyGrid: needs at least two points");
}

EnergyGrid EnergyGrid::default_for(const Spectrum& s, double T) {
    if (!(T > 0.0))
        throw validation_error("EnergyGrid: T must be positive");
    const double lo = s.energies(0) - 10.0 / T;
    const double hi = s.energies(s.dim() - 1) + 10.0 / T;
    const int points = std::max(2, static_cast<int>(std::ceil((hi - lo) * 8.0 * T)) + 1);
    return EnergyGrid(lo, hi, points);
}

bool CoarseGrained::all_valid() const {
    return std::all_of(valid.begin(), valid.end(), [](std::uint8_t v) { return v != 0; });
}

double sinc_kernel(double eps, double T) {
    if (!(T > 0.0))
        throw validation_error("sinc_kernel: T must be positive");
    const double x = T * eps;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return T / pi * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
    }
    return std::sin(x) / (pi * eps);
}

namespace {

void check_grid_resolution(const EnergyGrid& grid, double T) {
    if (grid.spacing() > 1.0 / (4.0 * T) * (1.0 + 1e-12))
        throw validation_error("reconstruct: grid spacing exceeds 1/(4T)");
}

CoarseGrained kernel_sum(const Spectrum& s, const VectorXd& weights, const EnergyGrid& grid,
                         double T, double prefactor, CoarseKind kind) {
    if (!(T > 0.0))
        throw validation_error("reconstruct: T must be positive");
    check_grid_resolution(grid, T);
    CoarseGrained out;
    out.grid = grid;
    out.T = T;
    out.kind = kind;
    out.valid.assign(static_cast<std::size_t>(grid.points), 1);
    out.values.resize(grid.points);
    for (int i = 0; i < grid.points; ++i) {
        const double e = grid.energy(i);
        double acc = 0.0;
        for (int n = 0; n < s.dim(); ++n)
            acc += weights(n) * sinc_kernel(e - s.energies(n), T);
        out.values(i) = prefactor * acc;
    }
    return out;
}

void check_aliasing(const ComplexTimeSeries& series) {
    const double span = series.band_max - series.band_min;
    if (std::isfinite(span) && series.grid.dt * span > pi * (1.0 + 1e-12))
        throw validation_error("reconstruct: aliasing guard violated (dt * bandwidth > pi)");
}

// prefactor * int_0^T dt Re{ v(t) e^{itE} }, trapezoid with dt/2 endpoints
CoarseGrained series_transform(const ComplexTimeSeries& series, const EnergyGrid& grid,
                               double prefactor, CoarseKind kind) {
    check_aliasing(series);
    const TimeGrid& tg = series.grid;
    check_grid_resolution(grid, tg.duration());
    CoarseGrained out;
    out.grid = grid;
    out.T = tg.duration();
    out.kind = kind;
    out.valid.assign(static_cast<std::size_t>(grid.points), 1);
    out.values.resize(grid.points);
    for (int i = 0; i < grid.points; ++i) {
        const double e = grid.energy(i);
        double acc = 0.0;
        for (int k = 0; k <= tg.steps; ++k) {
            const double w = (k == 0 || k == tg.steps) ? 0.5 : 1.0;
            const Complex rot = std::polar(1.0, tg.time(k) * e);
            acc += w * (series.values(k) * rot).real();
        }
        out.values(i) = prefactor * tg.dt * acc;
    }
    return out;
}

} // namespace

CoarseGrained dos_closed_form(const Spectrum& s, const EnergyGrid& grid, double T) {
    return kernel_sum(s, VectorXd::Ones(s.dim()), grid, T, 1.0, CoarseKind::dos);
}

CoarseGrained dos_from_series(const ComplexTimeSeries& g, const EnergyGrid& grid) {
    if (g.dim < 1)
        throw validation_error("dos_from_series: series carries no Hilbert dimension");
    return series_transform(g, grid, g.dim / pi, CoarseKind::dos);
}

CoarseGrained observable_ar(const Spectrum& s, const VectorXd& a_n, const EnergyGrid& grid,
                            double T) {
    if (a_n.size() != s.dim())
        throw validation_error("observable_ar: A_n length mismatch");
    return kernel_sum(s, a_n, grid, T, 1.0, CoarseKind::a_r);
}

CoarseGrained observable_ar_from_series(const ComplexTimeSeries& g_a, const EnergyGrid& grid) {
    if (g_a.dim < 1)
        throw validation_error("observable_ar_from_series: series carries no dimension");
    return series_transform(g_a, grid, g_a.dim / pi, CoarseKind::a_r);
}

CoarseGrained observable_ac(const CoarseGrained& a_r, const CoarseGrained& rho_c,
                            double mask_threshold) {
    if (a_r.grid.points != rho_c.grid.points || a_r.grid.e_min != rho_c.grid.e_min ||
        a_r.grid.e_max != rho_c.grid.e_max)
        throw validation_error("observable_ac: A_r and rho_c grids differ");
    if (a_r.T != rho_c.T)
        throw validation_error("observable_ac: A_r and rho_c observation times differ");
    const double threshold = mask_threshold > 0.0 ? mask_threshold : 0.05 * rho_c.T / pi;

    CoarseGrained out;
    out.grid = a_r.grid;
    out.T = a_r.T;
    out.kind = CoarseKind::a_c;
    out.values = VectorXd::Zero(a_r.grid.points);
    out.valid.assign(static_cast<std::size_t>(a_r.grid.points), 0);
    for (int i = 0; i < a_r.grid.points; ++i) {
        if (!a_r.valid[static_cast<std::size_t>(i)] || !rho_c.valid[static_cast<std::size_t>(i)])
            continue;
        if (std::abs(rho_c.values(i)) < threshold) continue;
        out.values(i) = a_r.values(i) / rho_c.values(i);
        out.valid[static_cast<std::size_t>(i)] = 1;
    }
    return out;
}

CoarseGrained fock_distribution(const Spectrum& s, const WeightMatrix& m,
                                const FockState& sigma, const EnergyGrid& grid, double T) {
    if (sigma.index >= static_cast<std::uint32_t>(s.dim()))
        throw validation_error("fock_distribution: Fock index out of range");
    const VectorXd w = m.m.row(sigma.index).transpose();
    return kernel_sum(s, w, grid, T, pi / T, CoarseKind::fock_sigma);
}

CoarseGrained fock_distribution_from_series(const ComplexTimeSeries& g_sigma,
                                            const EnergyGrid& grid) {
    const double T = g_sigma.grid.duration();
    return series_transform(g_sigma, grid, 1.0 / T, CoarseKind::fock_sigma);
}

double critical_time(const Spectrum& s, double e) {
    const int d = s.dim();
    if (d < 2)
        throw validation_error("critical_time: needs at least two levels");
    if (e < s.energies(0) || e > s.energies(d - 1))
        throw validation_error("critical_time: energy outside the spectrum");

    // nearest level, then the k=5 gaps centered there (clipped at the edges)
    int pos = 0;
    double best = std::abs(e - s.energies(0));
    for (int n = 1; n < d; ++n) {
        const double dist = std::abs(e - s.energies(n));
        if (dist < best) {
            best = dist;
            pos = n;
        }
    }
    const int n_gaps = d - 1;
    const int k = std::min(5, n_gaps);
    int lo = std::clamp(pos - k / 2, 0, n_gaps - k);
    double mean_gap = 0.0;
    for (int g = lo; g < lo + k; ++g)
        mean_gap += s.energies(g + 1) - s.energies(g);
    mean_gap /= k;
    if (mean_gap <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / mean_gap;
}

double dos_closed_form_at(const Spectrum& s, double e, double T) {
    double acc = 0.0;
    for (int n = 0; n < s.dim(); ++n)
        acc += sinc_kernel(e - s.energies(n), T);
    return acc;
}

double observable_ar_at(const Spectrum& s, const VectorXd& a_n, double e, double T) {
    if (a_n.size() != s.dim())
        throw validation_error("observable_ar_at: A_n length mismatch");
    double acc = 0.0;
    for (int n = 0; n < s.dim(); ++n)
        acc += a_n(n) * sinc_kernel(e - s.energies(n), T);
    return acc;
}

double integrate(const CoarseGrained& cg, double e_lo, double e_hi) {
    if (e_lo < cg.grid.e_min - 1e-12 || e_hi > cg.grid.e_max + 1e-12)
        throw validation_error("integrate: bounds outside the grid");
    if (!(e_lo < e_hi))
        throw validation_error("integrate: empty range");
    const double de = cg.grid.spacing();
    const int first = static_cast<int>(std::ceil((e_lo - cg.grid.e_min) / de - 1e-9));
    const int last = static_cast<int>(std::floor((e_hi - cg.grid.e_min) / de + 1e-9));

    // trapezoid over maximal valid runs; masked points break the rule
    double acc = 0.0;
    for (int i = first; i < last; ++i) {
        if (!cg.valid[static_cast<std::size_t>(i)] || !cg.valid[static_cast<std::size_t>(i + 1)])
            continue;
        acc += 0.5 * de * (cg.values(i) + cg.values(i + 1));
    }
    return acc;
}

VectorXd integrated_curve(const CoarseGrained& cg) {
    VectorXd phi = VectorXd::Zero(cg.grid.points);
    const double de = cg.grid.spacing();
    for (int i = 1; i < cg.grid.points; ++i)
        phi(i) = phi(i - 1) + 0.5 * de * (cg.values(i) + cg.values(i - 1));
    return phi;
}

std::vector<Peak> find_peaks(const CoarseGrained& cg, double min_value) {
    std::vector<Peak> peaks;
    for (int i = 1; i + 1 < cg.grid.points; ++i) {
        const double v = cg.values(i);
        if (v < min_value) continue;
        if (cg.values(i - 1) < v && v >= cg.values(i + 1))
            peaks.push_back({cg.grid.energy(i), v});
    }
    return peaks;
}

} // namespace lspec
