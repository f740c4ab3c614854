// nscrit command line: evolve runs, cylinder diagnostics, experiments.

#include <string>

#include <CLI11.hpp>

#include "nscrit/cmds.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral Navier-Stokes solver and regularity diagnostics"};
    app.require_subcommand(1);

    std::string run_config, run_out = "run_out";
    CLI::App* run = app.add_subcommand("run", "evolve initial data and record norms");
    run->add_option("-c,--config", run_config, "key=value config file")->required();
    run->add_option("-o,--out", run_out, "output directory");

    std::string diag_config, diag_out = "diag_out";
    CLI::App* diag =
        app.add_subcommand("diagnose", "cylinder sweep over a stored snapshot series");
    diag->add_option("-c,--config", diag_config, "key=value config file")->required();
    diag->add_option("-o,--out", diag_out, "output directory");

    std::string exp_kind, exp_config, exp_out = "experiment_out";
    CLI::App* exp = app.add_subcommand("experiment", "covariance, weak_convergence, "
                                                     "bisection or calderon study");
    exp->add_option("kind", exp_kind, "experiment kind")->required();
    exp->add_option("-c,--config", exp_config, "key=value config file")->required();
    exp->add_option("-o,--out", exp_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return nscrit::cmd_run(run_config, run_out);
    if (diag->parsed()) return nscrit::cmd_diagnose(diag_config, diag_out);
    if (exp->parsed()) return nscrit::cmd_experiment(exp_kind, exp_config, exp_out);
    return 1;
}
