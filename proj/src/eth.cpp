#include "lspec/eth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lspec {

namespace {
constexpr double pi = std::numbers::pi;

// linear interpolation on the grid; returns false if either bracket point
// is masked or e falls outside the grid
bool interp_valid(const CoarseGrained& cg, double e, double& out) {
    const double de = cg.grid.spacing();
    const double x = (e - cg.grid.e_min) / de;
    if (x < 0.0 || x > cg.grid.points - 1) return false;
    const int i = std::min(static_cast<int>(x), cg.grid.points - 2);
    if (!cg.valid[static_cast<std::size_t>(i)] || !cg.valid[static_cast<std::size_t>(i + 1)])
        return false;
    const double frac = x - i;
    out = (1.0 - frac) * cg.values(i) + frac * cg.values(i + 1);
    return true;
}

} // namespace

void EthWindow::validate() const {
    if (!(e_minus < e_plus))
        throw validation_error("EthWindow: E_minus must be below E_plus");
    // T = T_sc is allowed: the estimator is well defined there and serves
    // as a regression point
    if (t > 0.0 && t_sc > 0.0 && t_sc > t)
        throw validation_error("EthWindow: T_sc must not exceed T");
}

double sigma_exact(const Spectrum& s, const VectorXd& a_n, const CoarseGrained& a_c_ref,
                   const EthWindow& w) {
    w.validate();
    if (a_n.size() != s.dim())
        throw validation_error("sigma_exact: A_n length mismatch");
    double acc = 0.0;
    int count = 0;
    for (int n = 0; n < s.dim(); ++n) {
        const double e = s.energies(n);
        if (e < w.e_minus || e > w.e_plus) continue;
        double ac = 0.0;
        if (!interp_valid(a_c_ref, e, ac))
            throw validation_error("sigma_exact: A_c reference masked at E_n inside the window");
        const double dev = a_n(n) - ac;
        acc += dev * dev;
        ++count;
    }
    if (count == 0)
        throw validation_error("sigma_exact: no eigenstates in the window");
    return std::sqrt(acc / count);
}

double sigma_signal(const CoarseGrained& a_r_t, const CoarseGrained& a_c_ref,
                    const CoarseGrained& rho_t, const CoarseGrained& rho_tsc,
                    const EthWindow& w, bool symmetric_weights) {
    w.validate();
    const EnergyGrid& grid = a_r_t.grid;
    for (const CoarseGrained* cg : {&a_c_ref, &rho_t, &rho_tsc})
        if (cg->grid.points != grid.points || cg->grid.e_min != grid.e_min ||
            cg->grid.e_max != grid.e_max)
            throw validation_error("sigma_signal: inputs must share one energy grid");
    const double T = a_r_t.T;

    const double de = grid.spacing();
    const int first = static_cast<int>(std::ceil((w.e_minus - grid.e_min) / de - 1e-9));
    const int last = static_cast<int>(std::floor((w.e_plus - grid.e_min) / de + 1e-9));
    if (first >= last)
        throw validation_error("sigma_signal: window contains no grid interval");

    auto masked = [&](int i) { return a_c_ref.valid[static_cast<std::size_t>(i)] == 0; };
    auto numerand = [&](int i) {
        const double dev = (pi / T) * a_r_t.values(i) - a_c_ref.values(i);
        const double weight = symmetric_weights ? rho_tsc.values(i) : rho_t.values(i);
        return dev * dev * weight;
    };
    double num = 0.0;
    double den = 0.0;
    for (int i = first; i < last; ++i) {
        if (masked(i) || masked(i + 1)) continue;
        num += 0.5 * de * (numerand(i) + numerand(i + 1));
        den += 0.5 * de * (rho_tsc.values(i) + rho_tsc.values(i + 1));
    }
    if (den <= 1e-12)
        throw numeric_error("sigma_signal: denominator below the positivity floor");
    return std::sqrt(std::max(num / den, 0.0));
}

double choose_t_sc(const Spectrum& s, double e_minus, double e_plus, double j_z) {
    if (!(e_minus < e_plus))
        throw validation_error("choose_t_sc: empty window");
    if (!(j_z > 0.0))
        throw validation_error("choose_t_sc: j_z must be positive");
    double min_tc = std::numeric_limits<double>::infinity();
    for (int n = 0; n < s.dim(); ++n) {
        const double e = s.energies(n);
        if (e < e_minus || e > e_plus) continue;
        min_tc = std::min(min_tc, critical_time(s, e));
    }
    if (!std::isfinite(min_tc)) {
        // no levels inside: fall back to the window midpoint
        min_tc = critical_time(s, std::clamp(0.5 * (e_minus + e_plus), s.energies(0),
                                             s.energies(s.dim() - 1)));
    }
    return std::min(10.0 / j_z, 0.1 * min_tc);
}

} // namespace lspec
