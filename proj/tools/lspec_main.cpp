#include "lspec/commands.hpp"
#include "lspec/output.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Loschmidt-signal spectroscopy of spin chains: reconstruct coarse-grained "
                 "spectral data from finite-time trace signals and validate it against "
                 "exact diagonalization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::uint64_t seed_offset = 0;

    const std::vector<std::string> names = {"dos",  "thermo",  "observable",
                                            "eth",  "fock",    "pr",
                                            "uhlmann", "entropy", "verify"};
    const std::vector<std::string> descriptions = {
        "G(t) series, coarse-grained density of states, integrated DOS",
        "reconstructed specific heat C(beta) with the exact reference",
        "observable spectroscopy: A_n cloud, A_r and A_c functions",
        "ETH fluctuation estimator sigma_A(T) and its exact reference",
        "Fock-state energy distributions rho_sigma over a disorder ensemble",
        "participation ratios of the M and R matrices over a disorder ensemble",
        "Uhlmann matrix R, Gamma matrices and PR_R conventions",
        "half-chain entanglement entropy under evolution from a Fock state",
        "self-checks: purification, interferometer, trace sampling, quadrature"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [outputs] dir)");
        sub->add_option("--threads", threads, "worker threads for (seed, T) sweeps");
        sub->add_option("--seed-offset", seed_offset, "added to every ensemble seed");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const lspec::ExperimentConfig cfg = lspec::load_config(config_path);
        lspec::RunContext ctx;
        ctx.out_dir = out_dir;
        ctx.threads = threads;
        ctx.seed_offset = seed_offset;
        ctx.log = &std::cout;
        return lspec::run_command(app.get_subcommands().front()->get_name(), cfg, ctx);
    } catch (const lspec::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return lspec::kExitConfig;
    }
}
