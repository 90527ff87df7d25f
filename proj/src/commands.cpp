#include "lspec/commands.hpp"

#include "lspec/ensemble.hpp"
#include "lspec/eth.hpp"
#include "lspec/mbl.hpp"
#include "lspec/output.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace lspec {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Emitter {
    fs::path dir;
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Emitter(const ExperimentConfig& cfg, const RunContext& ctx)
        : dir(ctx.out_dir.empty() ? cfg.out_dir : ctx.out_dir),
          manifest(dir, fnv1a64(cfg.raw_text)) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw io_error("cannot create output directory " + dir.string());
    }

    fs::path file(const std::string& name) {
        fs::path p = dir / name;
        manifest.add(p);
        return p;
    }

    void done() {
        manifest.write(std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count());
    }
};

std::string t_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

void log_line(const RunContext& ctx, const std::string& line) {
    if (ctx.log) (*ctx.log) << line << '\n';
}

std::uint64_t model_hash(const ModelSpec& m) {
    std::ostringstream os;
    os << (m.kind == ModelKind::IsingZ ? "ising" : "xxz") << '|' << m.L << '|'
       << format_double(m.j_z) << '|' << format_double(m.j) << '|' << format_double(m.h_x)
       << '|' << format_double(m.h_z) << '|' << format_double(m.r_z) << '|' << m.seed;
    return fnv1a64(os.str());
}

std::vector<double> require_times(const ExperimentConfig& cfg) {
    if (cfg.t_values.empty())
        throw config_error(cfg.path + ": [times] T is required for this command");
    return cfg.t_values;
}

ModelSpec seeded(const ExperimentConfig& cfg, const RunContext& ctx, int k) {
    ModelSpec m = cfg.model;
    m.seed = cfg.ensemble_base_seed() + ctx.seed_offset + static_cast<std::uint64_t>(k);
    return m;
}

VectorXd linspace(double lo, double hi, int n) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace

int cmd_dos(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const Spectrum s = diagonalize(build_hamiltonian(cfg.model));
    const std::uint64_t mh = model_hash(cfg.model);
    write_spectrum_csv(em.file("spectrum.csv"), s);
    if (cfg.export_vectors) write_vectors_binary(em.file("vectors.bin"), s);

    const auto times = require_times(cfg);
    struct PerT {
        ComplexTimeSeries g;
        CoarseGrained rho;
        CoarseGrained rho_exact;
        VectorXd phi;
    };
    std::vector<PerT> results(times.size());
    parallel_for(static_cast<int>(times.size()), ctx.threads, [&](int i) {
        const double T = times[static_cast<std::size_t>(i)];
        PerT& r = results[static_cast<std::size_t>(i)];
        const EnergyGrid grid = cfg.resolve_grid(s, T);
        r.g = loschmidt_g(s, cfg.resolve_time_grid(s, T));
        r.rho = dos_from_series(r.g, grid);
        r.rho_exact = dos_closed_form(s, grid, T);
        r.phi = integrated_curve(r.rho);
    });

    for (std::size_t i = 0; i < times.size(); ++i) {
        const std::string label = t_label(times[i]);
        const PerT& r = results[i];
        write_time_series_csv(em.file("g_t_T" + label + ".csv"), r.g);
        write_coarse_csv(em.file("rho_c_T" + label + ".csv"), r.rho);
        write_coarse_sidecar(em.file("rho_c_T" + label + ".json"), r.rho, mh);
        write_coarse_csv(em.file("rho_c_exact_T" + label + ".csv"), r.rho_exact);
        std::ostringstream phi;
        phi << "# energies in units of J_z; phi(E) = integral of rho_c\n";
        phi << "E,phi\n";
        for (int p = 0; p < r.rho.grid.points; ++p)
            phi << format_double(r.rho.grid.energy(p)) << ',' << format_double(r.phi(p)) << '\n';
        write_text(em.file("phi_T" + label + ".csv"), phi.str());
        log_line(ctx, "dos: T=" + label + " done");
    }
    em.done();
    return kExitOk;
}

int cmd_thermo(const ExperimentConfig& cfg, const RunContext& ctx) {
    if (cfg.beta_max * cfg.model.j_z > 10.0)
        throw config_error(cfg.path +
                           ": [thermo] beta_max exceeds the signal-mode guard 10/J_z");
    Emitter em(cfg, ctx);
    const Spectrum s = diagonalize(build_hamiltonian(cfg.model));
    const VectorXd betas = linspace(0.0, cfg.beta_max, cfg.beta_points);
    VectorXd exact(betas.size());
    for (Eigen::Index b = 0; b < betas.size(); ++b)
        exact(b) = canonical_specific_heat(s, betas(b));

    for (double T : require_times(cfg)) {
        const CoarseGrained rho = dos_closed_form(s, cfg.resolve_grid(s, T), T);
        const auto [lo, hi] = estimate_bounds(rho);
        const ThermoCurve curve = specific_heat(rho, betas, lo, hi);
        write_thermo_csv(em.file("c_beta_T" + t_label(T) + ".csv"), curve, &exact);
        log_line(ctx, "thermo: T=" + t_label(T) + " bounds [" + format_double(lo) + ", " +
                          format_double(hi) + "]");
    }
    em.done();
    return kExitOk;
}

int cmd_observable(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const Spectrum s = diagonalize(build_hamiltonian(cfg.model));
    const VectorXd a_n = eigen_expectations(s, build_observable_zz(cfg.model.L));
    const std::uint64_t mh = model_hash(cfg.model);

    std::ostringstream an_csv;
    an_csv << "# energies in units of J_z\n";
    an_csv << "n,E_n,A_n\n";
    for (int n = 0; n < s.dim(); ++n)
        an_csv << n << ',' << format_double(s.energies(n)) << ',' << format_double(a_n(n))
               << '\n';
    write_text(em.file("a_n.csv"), an_csv.str());

    for (double T : require_times(cfg)) {
        const EnergyGrid grid = cfg.resolve_grid(s, T);
        const ComplexTimeSeries g_a = loschmidt_g_a(s, a_n, cfg.resolve_time_grid(s, T));
        const CoarseGrained a_r = observable_ar_from_series(g_a, grid);
        const CoarseGrained rho = dos_from_series(loschmidt_g(s, cfg.resolve_time_grid(s, T)),
                                                  grid);
        const CoarseGrained a_c = observable_ac(a_r, rho);
        const std::string label = t_label(T);
        write_time_series_csv(em.file("g_a_T" + label + ".csv"), g_a);
        write_coarse_csv(em.file("a_r_T" + label + ".csv"), a_r);
        write_coarse_csv(em.file("a_c_T" + label + ".csv"), a_c);
        write_coarse_sidecar(em.file("a_c_T" + label + ".json"), a_c, mh);
        log_line(ctx, "observable: T=" + label + " done");
    }
    em.done();
    return kExitOk;
}

int cmd_eth(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const Spectrum s = diagonalize(build_hamiltonian(cfg.model));
    const VectorXd a_n = eigen_expectations(s, build_observable_zz(cfg.model.L));
    const double t_sc =
        cfg.t_sc ? *cfg.t_sc : choose_t_sc(s, cfg.eth_e_minus, cfg.eth_e_plus, cfg.model.j_z);

    // the dotted-line reference: A_c at T_sc on its own grid
    const EnergyGrid grid_sc = cfg.resolve_grid(s, t_sc);
    const CoarseGrained a_c_ref_sc = observable_ac(observable_ar(s, a_n, grid_sc, t_sc),
                                                   dos_closed_form(s, grid_sc, t_sc));
    EthWindow w_exact{cfg.eth_e_minus, cfg.eth_e_plus, t_sc, 0.0};
    const double sig_exact = sigma_exact(s, a_n, a_c_ref_sc, w_exact);

    const auto times = require_times(cfg);
    std::vector<double> sig_t(times.size());
    parallel_for(static_cast<int>(times.size()), ctx.threads, [&](int i) {
        const double T = times[static_cast<std::size_t>(i)];
        if (!(T > t_sc))
            throw validation_error("cmd_eth: every T must exceed T_sc=" + format_double(t_sc));
        // the integrals live on the window; a full-band grid would waste
        // most of its points at large T
        const int points = static_cast<int>(std::ceil(
                               (cfg.eth_e_plus - cfg.eth_e_minus + 20.0 / T) * 8.0 * T)) + 1;
        const EnergyGrid grid(cfg.eth_e_minus - 10.0 / T, cfg.eth_e_plus + 10.0 / T, points);
        const CoarseGrained rho_t = dos_closed_form(s, grid, T);
        const CoarseGrained rho_sc = dos_closed_form(s, grid, t_sc);
        const CoarseGrained a_r_t = observable_ar(s, a_n, grid, T);
        const CoarseGrained a_c_sc = observable_ac(observable_ar(s, a_n, grid, t_sc), rho_sc);
        EthWindow w{cfg.eth_e_minus, cfg.eth_e_plus, t_sc, T};
        sig_t[static_cast<std::size_t>(i)] = sigma_signal(a_r_t, a_c_sc, rho_t, rho_sc, w);
    });

    std::ostringstream csv;
    csv << "# times in units of 1/J_z; window [" << format_double(cfg.eth_e_minus) << ", "
        << format_double(cfg.eth_e_plus) << "], T_sc=" << format_double(t_sc) << '\n';
    csv << "T,sigma_signal,sigma_exact_ref\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        csv << format_double(times[i]) << ',' << format_double(sig_t[i]) << ','
            << format_double(sig_exact) << '\n';
    write_text(em.file("sigma_T.csv"), csv.str());
    log_line(ctx, "eth: sigma_exact=" + format_double(sig_exact));
    em.done();
    return kExitOk;
}

int cmd_fock(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const FockState sigma = cfg.fock_state();
    const int n = cfg.n_realizations;

    std::vector<Spectrum> spectra(static_cast<std::size_t>(n));
    std::vector<WeightMatrix> weights(static_cast<std::size_t>(n));
    parallel_for(n, ctx.threads, [&](int k) {
        spectra[static_cast<std::size_t>(k)] =
            diagonalize(build_hamiltonian(seeded(cfg, ctx, k)));
        weights[static_cast<std::size_t>(k)] = weights_matrix(spectra[static_cast<std::size_t>(k)]);
    });

    // one grid for the whole ensemble so realizations aggregate pointwise
    double e_lo = spectra[0].energies(0);
    double e_hi = spectra[0].energies(spectra[0].dim() - 1);
    for (const Spectrum& s : spectra) {
        e_lo = std::min(e_lo, s.energies(0));
        e_hi = std::max(e_hi, s.energies(s.dim() - 1));
    }

    for (double T : require_times(cfg)) {
        const double lo = cfg.grid_e_min.value_or(e_lo - 10.0 / T);
        const double hi = cfg.grid_e_max.value_or(e_hi + 10.0 / T);
        const int points = cfg.grid_points.value_or(
            std::max(2, static_cast<int>(std::ceil((hi - lo) * 8.0 * T)) + 1));
        const EnergyGrid grid(lo, hi, points);
        std::vector<VectorXd> rows(static_cast<std::size_t>(n));
        std::vector<CoarseGrained> per_seed(static_cast<std::size_t>(n));
        parallel_for(n, ctx.threads, [&](int k) {
            per_seed[static_cast<std::size_t>(k)] = fock_distribution(
                spectra[static_cast<std::size_t>(k)], weights[static_cast<std::size_t>(k)],
                sigma, grid, T);
            rows[static_cast<std::size_t>(k)] = per_seed[static_cast<std::size_t>(k)].values;
        });

        const std::string label = t_label(T);
        for (int k = 0; k < n; ++k)
            write_coarse_csv(em.file("rho_sigma_T" + label + "_seed" + std::to_string(k) +
                                     ".csv"),
                             per_seed[static_cast<std::size_t>(k)]);
        const Aggregate agg = aggregate_rows(rows);
        std::ostringstream mean_csv;
        mean_csv << "# energies in units of J_z; sigma pattern " << sigma.pattern() << '\n';
        mean_csv << "E,mean,std_error\n";
        for (int i = 0; i < grid.points; ++i)
            mean_csv << format_double(grid.energy(i)) << ',' << format_double(agg.mean(i))
                     << ',' << format_double(agg.std_error(i)) << '\n';
        write_text(em.file("rho_sigma_T" + label + "_mean.csv"), mean_csv.str());
        log_line(ctx, "fock: T=" + label + " done (" + std::to_string(n) + " realizations)");
    }
    em.done();
    return kExitOk;
}

int cmd_pr(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const int n = cfg.n_realizations;
    const int d = cfg.model.dim();

    std::vector<VectorXd> pr_m_rows(static_cast<std::size_t>(n));
    std::vector<VectorXd> pr_r_rows(static_cast<std::size_t>(n));
    parallel_for(n, ctx.threads, [&](int k) {
        const Spectrum s = diagonalize(build_hamiltonian(seeded(cfg, ctx, k)));
        const WeightMatrix m = weights_matrix(s);
        pr_m_rows[static_cast<std::size_t>(k)] = participation_ratio_m(m);
        pr_r_rows[static_cast<std::size_t>(k)] =
            participation_ratio_r(uhlmann_r_infinite(m, s));
    });

    for (int k = 0; k < n; ++k) {
        std::ostringstream csv;
        csv << "# pr_r convention: " << pr_convention_name(PrConvention::inverse_participation)
            << '\n';
        csv << "sigma_index,pr_m,pr_r\n";
        for (int i = 0; i < d; ++i)
            csv << i << ',' << format_double(pr_m_rows[static_cast<std::size_t>(k)](i)) << ','
                << format_double(pr_r_rows[static_cast<std::size_t>(k)](i)) << '\n';
        write_text(em.file("pr_seed" + std::to_string(k) + ".csv"), csv.str());
    }
    const Aggregate am = aggregate_rows(pr_m_rows);
    const Aggregate ar = aggregate_rows(pr_r_rows);
    std::ostringstream csv;
    csv << "# pr_r convention: " << pr_convention_name(PrConvention::inverse_participation)
        << "; " << n << " realizations\n";
    csv << "sigma_index,pr_m_mean,pr_m_std_error,pr_r_mean,pr_r_std_error\n";
    for (int i = 0; i < d; ++i)
        csv << i << ',' << format_double(am.mean(i)) << ',' << format_double(am.std_error(i))
            << ',' << format_double(ar.mean(i)) << ',' << format_double(ar.std_error(i))
            << '\n';
    write_text(em.file("pr_mean.csv"), csv.str());
    log_line(ctx, "pr: " + std::to_string(n) + " realizations aggregated");
    em.done();
    return kExitOk;
}

int cmd_uhlmann(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const Spectrum s = diagonalize(build_hamiltonian(cfg.model));
    const WeightMatrix m = weights_matrix(s);
    const MatrixXd gamma_inf = gamma_infinite(m, s);
    const MatrixXd r_inf = sqrt_psd(static_cast<double>(s.dim()) * gamma_inf);

    write_matrix_binary(em.file("gamma_inf.bin"), gamma_inf);
    write_matrix_binary(em.file("r_inf.bin"), r_inf);
    for (double T : cfg.t_values)
        write_matrix_binary(em.file("r_T" + t_label(T) + ".bin"), uhlmann_r_finite(m, s, T));

    const VectorXd pr_default = participation_ratio_r(r_inf);
    const VectorXd pr_raw = participation_ratio_r(r_inf, PrConvention::second_moment);
    std::ostringstream csv;
    csv << "# conventions: pr_r_default = " << pr_convention_name(PrConvention::inverse_participation)
        << ", pr_r_second_moment = " << pr_convention_name(PrConvention::second_moment) << '\n';
    csv << "sigma_index,pr_r_default,pr_r_second_moment\n";
    for (int i = 0; i < s.dim(); ++i)
        csv << i << ',' << format_double(pr_default(i)) << ',' << format_double(pr_raw(i))
            << '\n';
    write_text(em.file("uhlmann_pr.csv"), csv.str());

    nlohmann::json j;
    j["dim"] = s.dim();
    j["matrix_layout"] = "raw column-major float64 little-endian, dim x dim";
    j["pr_r_convention_default"] = pr_convention_name(PrConvention::inverse_participation);
    j["degenerate_clusters"] = s.dim() - s.n_clusters;
    j["pr_r_mean"] = pr_default.mean();
    j["pr_m_mean"] = participation_ratio_m(m).mean();
    write_text(em.file("uhlmann_summary.json"), j.dump(2) + "\n");
    em.done();
    return kExitOk;
}

int cmd_entropy(const ExperimentConfig& cfg, const RunContext& ctx) {
    Emitter em(cfg, ctx);
    const FockState sigma = cfg.fock_state();
    const auto times = require_times(cfg);
    const double t_max = *std::max_element(times.begin(), times.end());
    const int n = cfg.n_realizations;

    const int points = 129;
    VectorXd ts = linspace(0.0, t_max, points);
    std::vector<VectorXd> rows(static_cast<std::size_t>(n));
    parallel_for(n, ctx.threads, [&](int k) {
        const Spectrum s = diagonalize(build_hamiltonian(seeded(cfg, ctx, k)));
        VectorXcd psi0 = VectorXcd::Zero(s.dim());
        psi0(sigma.index) = 1.0;
        VectorXd row(points);
        for (int i = 0; i < points; ++i)
            row(i) = half_chain_entropy(evolve_state(s, psi0, ts(i)), cfg.model.L);
        rows[static_cast<std::size_t>(k)] = row;
    });

    for (int k = 0; k < n; ++k) {
        std::ostringstream csv;
        csv << "# times in units of 1/J_z; entropy in nats; sigma " << sigma.pattern() << '\n';
        csv << "t,entropy\n";
        for (int i = 0; i < points; ++i)
            csv << format_double(ts(i)) << ','
                << format_double(rows[static_cast<std::size_t>(k)](i)) << '\n';
        write_text(em.file("entropy_seed" + std::to_string(k) + ".csv"), csv.str());
    }
    const Aggregate agg = aggregate_rows(rows);
    std::ostringstream csv;
    csv << "# times in units of 1/J_z; entropy in nats; " << n << " realizations\n";
    csv << "t,mean,std_error\n";
    for (int i = 0; i < points; ++i)
        csv << format_double(ts(i)) << ',' << format_double(agg.mean(i)) << ','
            << format_double(agg.std_error(i)) << '\n';
    write_text(em.file("entropy_mean.csv"), csv.str());
    em.done();
    return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, const RunContext& ctx) {
    std::ostream& out = ctx.log ? *ctx.log : std::cout;
    bool ok = true;
    auto report = [&](const std::string& name, bool pass, double value, double bound) {
        out << (pass ? "[PASS] " : "[FAIL] ") << name << "  (" << format_double(value)
            << " vs bound " << format_double(bound) << ")\n";
        ok = ok && pass;
    };

    const Spectrum s = diagonalize(build_hamiltonian(cfg.model));
    const int d = s.dim();

    // doubled-system purification vs the spectral sum (companion size if L > 6)
    {
        ModelSpec small = cfg.model;
        if (small.L > 6) small.L = 6;
        const Spectrum ss = small.L == cfg.model.L ? s : diagonalize(build_hamiltonian(small));
        const TimeGrid grid = TimeGrid::for_spectrum(ss, 10.0, 64);
        const double dev = purified_overlap_check(small, grid);
        report(small.L == cfg.model.L
                   ? "purified overlap == spectral G(t)"
                   : "purified overlap == spectral G(t) [companion L=6]",
               dev < 1e-10, dev, 1e-10);
    }

    // G(t) vs the Fock average (1/D) sum_sigma G_sigma(t)
    {
        const TimeGrid grid = TimeGrid::for_spectrum(s, 10.0, 64);
        const ComplexTimeSeries g = loschmidt_g(s, grid);
        VectorXcd avg = VectorXcd::Zero(grid.samples());
        for (int sigma = 0; sigma < d; ++sigma)
            avg += loschmidt_g_sigma(s, FockState{static_cast<std::uint32_t>(sigma), cfg.model.L},
                                     grid)
                       .values;
        avg /= static_cast<double>(d);
        const double dev = (avg - g.values).cwiseAbs().maxCoeff();
        report("G(t) == (1/D) sum_sigma G_sigma(t)", dev < 1e-10, dev, 1e-10);
    }

    // probe interferometer vs the direct overlap
    {
        std::mt19937_64 rng(cfg.stochastic_seed);
        std::normal_distribution<double> gauss;
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            VectorXcd psi0(d);
            for (int i = 0; i < d; ++i) psi0(i) = Complex(gauss(rng), gauss(rng));
            psi0 /= psi0.norm();
            const double t = 5.0 * (trial + 1) / 20.0;
            const auto [x, y] = probe_interferometer(s, psi0, t);
            const Complex direct = psi0.dot(evolve_state(s, psi0, t));
            worst = std::max({worst, std::abs(x - direct.real()), std::abs(y - direct.imag())});
        }
        report("probe readout == (Re, Im) overlap", worst < 1e-12, worst, 1e-12);
    }

    // stochastic trace estimator: 10 independent batches, 5-sigma band
    {
        const TimeGrid grid = TimeGrid::for_spectrum(s, 5.0, 32);
        const ComplexTimeSeries g = loschmidt_g(s, grid);
        const int batches = 10;
        const int per_batch = std::max(1, cfg.stochastic_samples / batches);
        std::vector<VectorXcd> est(batches);
        for (int b = 0; b < batches; ++b)
            est[static_cast<std::size_t>(b)] =
                stochastic_trace_g(s, grid, per_batch, cfg.stochastic_seed + 1 + b).values;
        double worst_sigmas = 0.0;
        for (int k = 0; k < grid.samples(); ++k) {
            Complex mean(0, 0);
            for (const auto& e : est) mean += e(k);
            mean /= static_cast<double>(batches);
            double var = 0.0;
            for (const auto& e : est) var += std::norm(e(k) - mean);
            const double stderr_mean = std::sqrt(var / (batches - 1) / batches) + 1e-12;
            worst_sigmas = std::max(worst_sigmas, std::abs(mean - g.values(k)) / stderr_mean);
        }
        report("stochastic trace within 5 sigma of G(t)", worst_sigmas < 5.0, worst_sigmas, 5.0);
    }

    // quadrature path vs closed-form kernel sums
    {
        const double T = 10.0;
        const EnergyGrid grid = EnergyGrid::default_for(s, T);
        const TimeGrid tg = TimeGrid::for_spectrum(s, T, 4096);
        const CoarseGrained from_series = dos_from_series(loschmidt_g(s, tg), grid);
        const CoarseGrained closed = dos_closed_form(s, grid, T);
        const double dev = (from_series.values - closed.values).cwiseAbs().maxCoeff();
        const double bound = 1e-6 * (T / pi) * d;
        report("rho_c quadrature == kernel sum", dev < bound, dev, bound);
    }

    // Gamma-bar(T): explicit time average vs the S(T) closed form (small L)
    {
        ModelSpec small = cfg.model;
        if (small.L > 6) small.L = 6;
        const Spectrum ss = small.L == cfg.model.L ? s : diagonalize(build_hamiltonian(small));
        const WeightMatrix m = weights_matrix(ss);
        const double T = 5.0;
        const int steps = 20000;
        MatrixXd quad = MatrixXd::Zero(ss.dim(), ss.dim());
        for (int k = 0; k <= steps; ++k) {
            const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
            quad += w * gamma_t(m, ss, T * k / steps).real();
        }
        quad /= static_cast<double>(steps);
        const double dev = (quad - gamma_avg(m, ss, T)).cwiseAbs().maxCoeff();
        report("Gamma-bar(T) quadrature == S(T) closed form", dev < 1e-8, dev, 1e-8);
    }

    out << (ok ? "verify: all checks passed\n" : "verify: FAILURES above\n");
    return ok ? kExitOk : kExitNumeric;
}

int run_command(const std::string& name, const ExperimentConfig& cfg, const RunContext& ctx) {
    try {
        if (name == "dos") return cmd_dos(cfg, ctx);
        if (name == "thermo") return cmd_thermo(cfg, ctx);
        if (name == "observable") return cmd_observable(cfg, ctx);
        if (name == "eth") return cmd_eth(cfg, ctx);
        if (name == "fock") return cmd_fock(cfg, ctx);
        if (name == "pr") return cmd_pr(cfg, ctx);
        if (name == "uhlmann") return cmd_uhlmann(cfg, ctx);
        if (name == "entropy") return cmd_entropy(cfg, ctx);
        if (name == "verify") return cmd_verify(cfg, ctx);
        std::cerr << "unknown command: " << name << '\n';
        return kExitConfig;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

} // namespace lspec
