#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "uqdd/commands.hpp"
#include "uqdd/config.hpp"

namespace {

// exit codes: 0 success, 2 configuration, 3 numerical failure
constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

struct Cli {
    std::string config_path;
    std::string out_override;
    std::string seed_override;
    int workers_override = -1;
};

uqdd::RunConfig load(const Cli& cli) {
    uqdd::RunConfig cfg = uqdd::load_config(cli.config_path);
    if (!cli.out_override.empty())
        cfg.out = cli.out_override;
    if (!cli.seed_override.empty())
        cfg.seed = std::stoull(cli.seed_override);
    if (cli.workers_override >= 0)
        cfg.workers = cli.workers_override;
    return cfg;
}

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("-c,--config", cli.config_path, "run configuration file")->required();
    cmd->add_option("-o,--out", cli.out_override, "output directory (overrides run.out)");
    cmd->add_option("-s,--seed", cli.seed_override, "seed override");
    cmd->add_option("-w,--workers", cli.workers_override, "worker threads (0 = all cores)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady diffusion with a lognormal random coefficient: domain-decomposed "
                 "stochastic basis adaptation"};
    app.require_subcommand(1);

    Cli cli;
    std::string dir_a, dir_b;

    CLI::App* kl = app.add_subcommand("kl", "input spectrum and per-subdomain adapted spectra");
    CLI::App* full = app.add_subcommand("full", "full-dimensional collocation reference");
    CLI::App* adapt = app.add_subcommand("adapt", "domain-decomposed reduced collocation");
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo reference");
    CLI::App* compare = app.add_subcommand("compare", "compare two finished run directories");
    CLI::App* bench = app.add_subcommand("bench", "run every pipeline and the comparisons");
    for (CLI::App* cmd : {kl, full, adapt, mc, compare, bench})
        add_common(cmd, cli);
    compare->add_option("dir_a", dir_a, "first run directory")->required();
    compare->add_option("dir_b", dir_b, "second run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const uqdd::RunConfig cfg = load(cli);
        if (kl->parsed())
            uqdd::cmd_kl(cfg, cfg.out);
        else if (full->parsed())
            uqdd::cmd_full(cfg, cfg.out);
        else if (adapt->parsed())
            uqdd::cmd_adapt(cfg, cfg.out);
        else if (mc->parsed())
            uqdd::cmd_mc(cfg, cfg.out);
        else if (compare->parsed())
            uqdd::cmd_compare(cfg, dir_a, dir_b, cfg.out);
        else if (bench->parsed())
            uqdd::cmd_bench(cfg, cfg.out);
    } catch (const uqdd::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kConfigExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalExit;
    }
    return 0;
}
