// SPDX-License-Identifier: Apache-2.0
// Experiment runner: run / validate / list-experiments.
#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "poissinc/config.hpp"
#include "poissinc/csv.hpp"
#include "poissinc/distributions.hpp"
#include "poissinc/errors.hpp"
#include "poissinc/experiments.hpp"

namespace
{
int cmd_run(std::string const& path, std::optional<std::uint64_t> seed, std::string const& out, unsigned workers)
{
    auto cfg = poissinc::load_config(path);
    if (seed)
        cfg.seed = *seed;
    auto const res = poissinc::run_experiment(cfg, out, workers);
    std::cout << "poissinc " << res.version << "  " << poissinc::to_string(cfg.kind) << "  seed " << cfg.seed
              << "  config_hash " << poissinc::hex64(poissinc::fnv1a64(res.config)) << '\n';
    for (auto const& row : res.rows)
    {
        std::cout << "  " << row.metric << " = " << (row.value ? poissinc::format_number(*row.value) : "-");
        if (row.ci_lo && row.ci_hi)
            std::cout << "  [" << poissinc::format_number(*row.ci_lo) << ", " << poissinc::format_number(*row.ci_hi)
                      << "]";
        std::cout << "  " << row.verdict << '\n';
    }
    for (auto const& f : res.files)
        std::cout << "  wrote " << out << '/' << f << '\n';
    std::cout << "  wall time " << res.wall_seconds << " s\n";
    return res.any_fail() ? 2 : 0;
}

int cmd_validate(std::string const& path)
{
    auto const cfg = poissinc::load_config(path);
    std::cout << "# " << path << ": valid\n";
    if (!cfg.defaulted.empty())
    {
        std::cout << "# defaulted:";
        for (auto const& d : cfg.defaulted)
            std::cout << ' ' << d << ';';
        std::cout << '\n';
    }
    std::cout << cfg.canonical();
    return 0;
}

int cmd_list()
{
    for (auto const& e : poissinc::experiment_catalog())
        std::cout << e.name << "\t" << e.summary << '\n';
    return 0;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Improper Poisson integrals: experiment runner"};
    app.set_version_flag("--version", std::string("poissinc ") + poissinc::library_version());
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;

    auto* run = app.add_subcommand("run", "run an experiment and write CSV outputs");
    run->add_option("--config", config_path, "experiment config (INI)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "override the master seed");
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_option("--workers", workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));

    auto* validate = app.add_subcommand("validate", "parse a config and echo it in canonical form");
    validate->add_option("--config", config_path, "experiment config (INI)")->required();

    auto* list = app.add_subcommand("list-experiments", "list experiment kinds");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return cmd_run(config_path, seed, out_dir, workers);
        if (*validate)
            return cmd_validate(config_path);
        if (*list)
            return cmd_list();
    }
    catch (poissinc::ParameterError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 64;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
